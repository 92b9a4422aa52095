#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "excad/cad_lang.hpp"
#include "excad/point_cloud.hpp"

namespace excad {

inline constexpr int kParamTolerance = 3;      ///< |p - p_hat| < tolerance, strict
inline constexpr int kChamferSampleCount = 2000;

/// Per-sample evaluation result. chamfer is empty iff the prediction is
/// geometrically invalid (or its surface could not be sampled).
struct MetricsReport {
  std::string id;
  double acc_cmd = 0.0;
  double acc_param = 0.0;
  std::optional<double> chamfer;
  bool valid = false;
  bool k_zero = false; ///< no command kinds matched; acc_param = 1 by convention
  std::vector<std::string> flags;
};

struct AggregateReport {
  double acc_cmd = 0.0;
  double acc_param = 0.0;
  std::optional<double> median_cd_x1000; ///< median over valid predictions, x1000
  double invalid_ratio = 0.0;
  int total = 0;
  int invalid = 0;
};

/// Fraction of positions i in [0, len(gt)) where the predicted command kind
/// matches the ground truth. Predictions shorter than the ground truth are
/// padded with EOS for the comparison.
double command_accuracy(const CadSequence& gt, const CadSequence& pred);

/// Fraction of parameters within +-tolerance (strict inequality) over the
/// commands whose kinds match, in quantized space. When no kinds match the
/// result is 1.0 by convention; `k_zero` reports that case.
double parameter_accuracy(const CadSequence& gt, const CadSequence& pred,
                          int tolerance = kParamTolerance, bool* k_zero = nullptr);

/// Sum of mean squared nearest-neighbor distances in both directions.
double chamfer_distance(const PointCloud& p, const PointCloud& q);

/// Full per-sample evaluation: accuracies always; geometric validity of the
/// prediction; for valid predictions a fresh surface sample of the predicted
/// model is scored against the ground-truth cloud.
MetricsReport evaluate_pair(const CadSequence& gt, const PointCloud& gt_cloud,
                            const CadSequence& pred, std::uint64_t seed);

AggregateReport aggregate(const std::vector<MetricsReport>& reports);

/// CSV rows (id, acc_cmd, acc_param, cd, valid, flags) with header.
std::string reports_to_csv(const std::vector<MetricsReport>& reports);
/// JSON object {acc_cmd, acc_param, median_cd_x1000, ir}.
std::string aggregate_to_json(const AggregateReport& report);

} // namespace excad
