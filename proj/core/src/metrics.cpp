#include "excad/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "excad/rng.hpp"
#include "excad/sampling.hpp"
#include "excad/solid.hpp"
#include "excad/spatial_index.hpp"
#include "excad/validity.hpp"

#include <json.hpp>

namespace excad {

namespace {

CommandKind kind_at(const CadSequence& seq, std::size_t i) {
  // Positions beyond the prediction read as EOS padding.
  return i < seq.commands.size() ? kind_of(seq.commands[i]) : CommandKind::Eos;
}

} // namespace

double command_accuracy(const CadSequence& gt, const CadSequence& pred) {
  const std::size_t n = gt.commands.size();
  if (n == 0) return 0.0;
  std::size_t matches = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (kind_of(gt.commands[i]) == kind_at(pred, i)) ++matches;
  }
  return static_cast<double>(matches) / static_cast<double>(n);
}

double parameter_accuracy(const CadSequence& gt, const CadSequence& pred, int tolerance,
                          bool* k_zero) {
  const std::size_t n = gt.commands.size();
  std::size_t total = 0;
  std::size_t correct = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const CommandKind kind = kind_of(gt.commands[i]);
    if (kind != kind_at(pred, i)) continue;
    const std::vector<int> gt_params = params_of(gt.commands[i]);
    if (gt_params.empty()) continue;
    const std::vector<int> pred_params = params_of(pred.commands[i]);
    total += gt_params.size();
    for (std::size_t j = 0; j < gt_params.size(); ++j) {
      if (std::abs(gt_params[j] - pred_params[j]) < tolerance) ++correct;
    }
  }
  if (k_zero) *k_zero = (total == 0);
  if (total == 0) return 1.0;
  return static_cast<double>(correct) / static_cast<double>(total);
}

double chamfer_distance(const PointCloud& p, const PointCloud& q) {
  const SpatialIndex index_q = SpatialIndex::with_auto_cell(q);
  const SpatialIndex index_p = SpatialIndex::with_auto_cell(p);
  double sum_pq = 0.0;
  for (const Vec3 pt : p.points) sum_pq += index_q.nearest_sq(pt);
  double sum_qp = 0.0;
  for (const Vec3 pt : q.points) sum_qp += index_p.nearest_sq(pt);
  return sum_pq / static_cast<double>(p.size()) + sum_qp / static_cast<double>(q.size());
}

MetricsReport evaluate_pair(const CadSequence& gt, const PointCloud& gt_cloud,
                            const CadSequence& pred, std::uint64_t seed) {
  MetricsReport report;
  report.id = gt.id;
  report.acc_cmd = command_accuracy(gt, pred);
  report.acc_param = parameter_accuracy(gt, pred, kParamTolerance, &report.k_zero);
  if (report.k_zero) report.flags.push_back("KZero");

  const ValidityReport validity = validate_model(pred);
  if (!validity.valid()) {
    report.valid = false;
    const std::string summary = validity.summary();
    report.flags.push_back(summary);
    return report;
  }
  try {
    const CsgModel model = build_model(pred);
    const PointCloud resampled =
        sample_surface(model, kChamferSampleCount, mix_seed(seed, 0xCDu));
    report.chamfer = chamfer_distance(gt_cloud, resampled);
    report.valid = true;
  } catch (const EmptySurface&) {
    report.valid = false;
    report.flags.push_back("EmptySurface");
  }
  return report;
}

AggregateReport aggregate(const std::vector<MetricsReport>& reports) {
  AggregateReport agg;
  agg.total = static_cast<int>(reports.size());
  if (reports.empty()) return agg;

  double sum_cmd = 0.0;
  double sum_param = 0.0;
  std::vector<double> cds;
  for (const MetricsReport& r : reports) {
    sum_cmd += r.acc_cmd;
    sum_param += r.acc_param;
    if (r.valid && r.chamfer) {
      cds.push_back(*r.chamfer);
    } else {
      ++agg.invalid;
    }
  }
  agg.acc_cmd = sum_cmd / static_cast<double>(agg.total);
  agg.acc_param = sum_param / static_cast<double>(agg.total);
  agg.invalid_ratio = static_cast<double>(agg.invalid) / static_cast<double>(agg.total);
  if (!cds.empty()) {
    std::sort(cds.begin(), cds.end());
    const std::size_t m = cds.size();
    const double median =
        (m % 2 == 1) ? cds[m / 2] : 0.5 * (cds[m / 2 - 1] + cds[m / 2]);
    agg.median_cd_x1000 = median * 1000.0;
  }
  return agg;
}

std::string reports_to_csv(const std::vector<MetricsReport>& reports) {
  std::string out = "id,acc_cmd,acc_param,cd,valid,flags\n";
  char buf[64];
  for (const MetricsReport& r : reports) {
    out += r.id;
    std::snprintf(buf, sizeof(buf), ",%.12g,%.12g,", r.acc_cmd, r.acc_param);
    out += buf;
    if (r.chamfer) {
      std::snprintf(buf, sizeof(buf), "%.12g", *r.chamfer);
      out += buf;
    }
    out += r.valid ? ",1," : ",0,";
    for (std::size_t i = 0; i < r.flags.size(); ++i) {
      if (i > 0) out += ";";
      out += r.flags[i];
    }
    out += "\n";
  }
  return out;
}

std::string aggregate_to_json(const AggregateReport& report) {
  nlohmann::ordered_json doc;
  doc["acc_cmd"] = report.acc_cmd;
  doc["acc_param"] = report.acc_param;
  if (report.median_cd_x1000) {
    doc["median_cd_x1000"] = *report.median_cd_x1000;
  } else {
    doc["median_cd_x1000"] = nullptr;
  }
  doc["ir"] = report.invalid_ratio;
  doc["total"] = report.total;
  doc["invalid"] = report.invalid;
  return doc.dump(2) + "\n";
}

} // namespace excad
