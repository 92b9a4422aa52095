#include <doctest.h>

#include <cmath>

#include "excad/metrics.hpp"
#include "excad/sampling.hpp"
#include "excad/solid.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace excad;
using namespace testutil;

namespace {

CadSequence square_gt() {
  return cube_seq(); // SOL L L L L E EOS: 7 commands
}

} // namespace

TEST_CASE("command accuracy") {
  const CadSequence gt = square_gt();
  SUBCASE("identical prediction scores 1") {
    CHECK(command_accuracy(gt, gt) == 1.0);
  }
  SUBCASE("one wrong kind out of seven") {
    CadSequence pred = gt;
    pred.commands[2] = ArcCmd{255, 255, 128, 1}; // line -> arc
    CHECK(command_accuracy(gt, pred) == 6.0 / 7.0);
  }
  SUBCASE("empty prediction matches only the padded EOS slot") {
    CadSequence pred;
    pred.id = gt.id;
    CHECK(command_accuracy(gt, pred) == 1.0 / 7.0);
  }
  SUBCASE("long predictions are truncated at the target length") {
    CadSequence pred = gt;
    pred.commands.emplace_back(EosCmd{});
    pred.commands.emplace_back(EosCmd{});
    CHECK(command_accuracy(gt, pred) == 1.0);
  }
}

TEST_CASE("parameter accuracy uses the strict tolerance on matched commands") {
  const CadSequence gt = square_gt();
  SUBCASE("identical prediction scores 1") {
    CHECK(parameter_accuracy(gt, gt) == 1.0);
  }
  SUBCASE("one line off by (2, 3): diff 2 passes, diff 3 fails") {
    CadSequence pred = gt;
    auto& line = std::get<LineCmd>(pred.commands[1]); // LineCmd{255, 0}
    line.x = 253;
    line.y = 3;
    // Matched commands: 4 lines (2 params each) + extrude (11) = 19 of which
    // 18 exact, one at diff 2 (pass) and one at diff 3 (fail): 18/19.
    CHECK(parameter_accuracy(gt, pred) == 18.0 / 19.0);
  }
  SUBCASE("single matched line with params off by (2, 3) scores 1/2") {
    CadSequence gt_line, pred_line;
    gt_line.commands = {LineCmd{100, 100}};
    pred_line.commands = {LineCmd{102, 103}};
    CHECK(parameter_accuracy(gt_line, pred_line) == 0.5);
  }
  SUBCASE("no matched kinds: convention 1.0 with the k-zero flag") {
    CadSequence pred;
    pred.commands = {ArcCmd{0, 0, 0, 0}, ArcCmd{0, 0, 0, 0}};
    CadSequence gt_lines;
    gt_lines.commands = {LineCmd{1, 2}, LineCmd{3, 4}};
    bool k_zero = false;
    CHECK(parameter_accuracy(gt_lines, pred, kParamTolerance, &k_zero) == 1.0);
    CHECK(k_zero);
  }
  SUBCASE("categorical extrude fields follow the same quantized rule") {
    CadSequence gt_e, pred_e;
    gt_e.commands = {make_extrude(10, 10, 10, 10, 10, BoolOp::New)};
    pred_e.commands = {make_extrude(10, 10, 10, 10, 10, BoolOp::Cut)};
    // |0 - 2| = 2 < 3 counts as correct: 11/11.
    CHECK(parameter_accuracy(gt_e, pred_e) == 1.0);
  }
}

TEST_CASE("accuracies ignore EOS padding beyond the target length") {
  const CadSequence gt = square_gt();
  CadSequence pred = gt;
  pred.commands[3] = LineCmd{10, 10};
  const double cmd_base = command_accuracy(gt, pred);
  const double param_base = parameter_accuracy(gt, pred);
  for (int extra = 1; extra <= 4; ++extra) {
    pred.commands.emplace_back(EosCmd{});
    CHECK(command_accuracy(gt, pred) == cmd_base);
    CHECK(parameter_accuracy(gt, pred) == param_base);
  }
}

TEST_CASE("parameter accuracy is non-increasing in perturbation size") {
  const CadSequence gt = square_gt();
  double prev = 1.0;
  for (int mag = 0; mag <= 10; ++mag) {
    CadSequence pred = gt;
    auto& line = std::get<LineCmd>(pred.commands[1]);
    line.y = static_cast<quant_t>(mag);
    const double acc = parameter_accuracy(gt, pred);
    CHECK(acc <= prev);
    CHECK(command_accuracy(gt, pred) == 1.0);
    prev = acc;
  }
}

TEST_CASE("chamfer distance closed forms") {
  PointCloud a, b;
  a.points = {{0, 0, 0}};
  b.points = {{1, 0, 0}};
  CHECK(chamfer_distance(a, a) == 0.0);
  CHECK(chamfer_distance(a, b) == doctest::Approx(2.0).epsilon(1e-12));
  Rng rng(404);
  PointCloud p, q;
  for (int i = 0; i < 100; ++i) {
    p.points.push_back({rng.uniform(), rng.uniform(), rng.uniform()});
    q.points.push_back({rng.uniform(), rng.uniform(), rng.uniform()});
  }
  CHECK(chamfer_distance(p, q) == chamfer_distance(q, p));
}

TEST_CASE("chamfer equals brute force exactly on 1000 random pairs") {
  Rng rng(405);
  for (int trial = 0; trial < 1000; ++trial) {
    PointCloud p, q;
    const int n = 2 + static_cast<int>(rng.below(60));
    const int m = 2 + static_cast<int>(rng.below(60));
    for (int i = 0; i < n; ++i) {
      p.points.push_back({rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)});
    }
    for (int i = 0; i < m; ++i) {
      q.points.push_back({rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)});
    }
    CHECK(chamfer_distance(p, q) == oracle::chamfer_bruteforce(p, q));
  }
}

TEST_CASE("evaluate_pair on an identical prediction") {
  // Small cube so the self-resampling noise stays under the frozen bound.
  const CadSequence gt = cube_seq(96, 96, 96, 31, 143); // side ~ 0.12
  const CsgModel model = build_model(gt);
  const PointCloud gt_cloud = sample_surface(model, 2048, 555);
  const MetricsReport report = evaluate_pair(gt, gt_cloud, gt, 556);
  CHECK(report.valid);
  CHECK(report.acc_cmd == 1.0);
  CHECK(report.acc_param == 1.0);
  REQUIRE(report.chamfer.has_value());
  CHECK(*report.chamfer <= 5e-5);
}

TEST_CASE("evaluate_pair flags invalid geometry but still reports accuracies") {
  const CadSequence gt = cube_seq();
  CadSequence pred = gt;
  std::get<ExtrudeCmd>(pred.commands[5]).e1 = 128; // ~zero extrusion distance
  const CsgModel model = build_model(gt);
  const PointCloud gt_cloud = sample_surface(model, 1024, 557);
  const MetricsReport report = evaluate_pair(gt, gt_cloud, pred, 558);
  CHECK(!report.valid);
  CHECK(!report.chamfer.has_value());
  CHECK(report.acc_cmd == 1.0);
  CHECK(report.acc_param > 0.9); // only e1 differs
}

TEST_CASE("a perturbed wall strictly increases the chamfer distance") {
  const CadSequence gt = cube_seq(96, 96, 96, 31, 143);
  const CsgModel model = build_model(gt);
  const PointCloud gt_cloud = sample_surface(model, 2048, 559);
  const MetricsReport self_report = evaluate_pair(gt, gt_cloud, gt, 560);

  CadSequence pred = gt;
  auto& l1 = std::get<LineCmd>(pred.commands[1]);
  auto& l2 = std::get<LineCmd>(pred.commands[2]);
  l1.x = 245; // move one wall inward by 10 bins
  l2.x = 245;
  const MetricsReport moved_report = evaluate_pair(gt, gt_cloud, pred, 560);
  REQUIRE(self_report.chamfer.has_value());
  REQUIRE(moved_report.chamfer.has_value());
  CHECK(*moved_report.chamfer > *self_report.chamfer);
}

TEST_CASE("aggregate means, median and invalid ratio") {
  std::vector<MetricsReport> reports;
  for (int i = 0; i < 80; ++i) {
    MetricsReport r;
    r.acc_cmd = 0.5;
    r.acc_param = 0.25;
    r.valid = i >= 8; // first 8 invalid
    if (r.valid) r.chamfer = 1e-3 * (1.0 + (i % 4)); // 1,2,3,4 x 1e-3
    reports.push_back(r);
  }
  const AggregateReport agg = aggregate(reports);
  CHECK(agg.invalid == 8);
  CHECK(agg.invalid_ratio == 8.0 / 80.0);
  CHECK(agg.acc_cmd == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(agg.acc_param == doctest::Approx(0.25).epsilon(1e-12));
  REQUIRE(agg.median_cd_x1000.has_value());
  // 72 valid: 18 each of {1,2,3,4}e-3; median = 2.5e-3 -> 2.5 after x1000.
  CHECK(*agg.median_cd_x1000 == doctest::Approx(2.5).epsilon(1e-12));
}

TEST_CASE("aggregate of identical valid reports returns their common value") {
  std::vector<MetricsReport> reports(5);
  for (MetricsReport& r : reports) {
    r.acc_cmd = 1.0;
    r.acc_param = 1.0;
    r.valid = true;
    r.chamfer = 7e-4;
  }
  const AggregateReport agg = aggregate(reports);
  CHECK(*agg.median_cd_x1000 == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(agg.invalid_ratio == 0.0);
}

TEST_CASE("aggregate invalid ratio complements the valid fraction") {
  Rng rng(505);
  std::vector<MetricsReport> reports;
  int invalid = 0;
  for (int i = 0; i < 333; ++i) {
    MetricsReport r;
    r.valid = rng.below(3) > 0;
    if (r.valid) {
      r.chamfer = rng.uniform();
    } else {
      ++invalid;
    }
    reports.push_back(r);
  }
  const AggregateReport agg = aggregate(reports);
  CHECK(std::abs(agg.invalid_ratio - (1.0 - (333.0 - invalid) / 333.0)) < 1e-12);
}

TEST_CASE("csv and json report emission") {
  MetricsReport r;
  r.id = "m1";
  r.acc_cmd = 0.75;
  r.acc_param = 0.5;
  r.valid = true;
  r.chamfer = 1.25e-3;
  const std::string csv = reports_to_csv({r});
  CHECK(csv.find("id,acc_cmd,acc_param,cd,valid,flags") == 0);
  CHECK(csv.find("m1,0.75,0.5,0.00125,1,") != std::string::npos);
  const AggregateReport agg = aggregate({r});
  const std::string js = aggregate_to_json(agg);
  CHECK(js.find("\"median_cd_x1000\": 1.25") != std::string::npos);
  CHECK(js.find("\"ir\": 0.0") != std::string::npos);
}
