#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "excad/cad_lang.hpp"
#include "excad/point_cloud.hpp"

namespace excad {

/// One single-extrusion training pair extracted from a parent model. The
/// cloud keeps the primitive's position inside the parent: points are taken
/// verbatim from the filtered dense sample, never recentered or rescaled.
struct PrimitiveSample {
  std::string parent_id;
  int index = 0;                 ///< extrusion position within the parent
  CadSequence sequence;          ///< single-extrusion, original boolean op
  PointCloud cloud;              ///< fixed-size primitive point cloud
  double retained_fraction = 0.0; ///< filtered / dense point ratio
};

/// Primitive whose filtered cloud came out empty: the parent's dense cloud
/// has no points near any of its exposed surface. A data record, not an
/// error.
struct SkipRecord {
  std::string parent_id;
  int index = 0;
  CadSequence sequence;
};

struct SegmentationResult {
  std::vector<PrimitiveSample> samples;
  std::vector<SkipRecord> skips;
};

struct SegmentationConfig {
  int dense_n = 50000;    ///< dense sample size for the parent and each primitive
  double radius = 0.005;  ///< neighbor radius for interface filtering
  int cloud_size = 2048;  ///< final points per primitive
};

/// Splits a sequence into its extrusions and builds one training pair per
/// primitive: the parent model is densely sampled; each primitive is modeled
/// standalone (its boolean op forced to New so cut geometry becomes a
/// positive solid), densely sampled, filtered against the parent cloud, and
/// farthest-point downsampled. Emitted sequences keep the original op.
SegmentationResult segment_model(const CadSequence& seq, const SegmentationConfig& config,
                                 std::uint64_t seed);

struct PrimitiveStats {
  std::string parent_id;
  int index = 0;
  double retained_fraction = 0.0;
};

struct StatsTable {
  std::vector<PrimitiveStats> rows;
  std::vector<int> per_parent_counts;
  double mean_retained = 0.0;
};

StatsTable primitive_cloud_stats(const std::vector<PrimitiveSample>& samples);

} // namespace excad
