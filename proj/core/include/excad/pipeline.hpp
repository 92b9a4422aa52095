#pragma once

#include <filesystem>

#include "excad/dataset.hpp"
#include "excad/segmentation.hpp"

namespace excad {

enum class PipelineMode {
  Baseline,  ///< one fixed-size cloud per model (simple and complex alike)
  Segmented, ///< per-extrusion primitive pairs; simple models get one pair
};

struct PipelineConfig {
  int dense_n = 50000;
  double radius = 0.005;
  int cloud_size = 2048;
  std::uint64_t seed = 0;
  int workers = 1;
};

struct PipelineResult {
  CorpusStats stats;
  std::vector<ParseFailure> failures; ///< per-sample failures, id + message
};

/// Runs the batch pipeline over a manifest. All per-sample randomness comes
/// from seeds derived from (config.seed, id), and aggregate files are written
/// in manifest order after the workers join, so output bytes are independent
/// of the worker count.
///
/// Baseline layout: clouds/<id>.ply + baseline_manifest.csv.
/// Segmented layout: <id>/prim_<i>.json, <id>/prim_<i>.ply, <id>/skips.json
/// + segment_manifest.csv. Both write stats_*.csv and stats.json.
PipelineResult run_pipeline(const DatasetManifest& manifest, PipelineMode mode,
                            const PipelineConfig& config,
                            const std::filesystem::path& out_dir);

} // namespace excad
