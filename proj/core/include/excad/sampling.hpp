#pragma once

#include <cstdint>
#include <vector>

#include "excad/mesh.hpp"
#include "excad/point_cloud.hpp"
#include "excad/solid.hpp"

namespace excad {

inline constexpr int kDefaultDenseCount = 50000;
inline constexpr int kDefaultCloudSize = 2048;
inline constexpr double kDefaultFilterRadius = 0.005;
inline constexpr int kSampleStallLimit = 1000000;

/// Uniform surface sampling of the final solid. Candidates are drawn on the
/// primitive boundary meshes with probability proportional to triangle area
/// and kept only where occupancy flips across the surface, so internal
/// interfaces, removed material and cap regions inside holes receive no
/// points. Deterministic for a given (model, n, seed).
///
/// Throws EmptySurface when `stall_limit` consecutive candidates are
/// rejected, which signals an effectively empty final solid. When `normals`
/// is given it receives the candidate triangle normal of each accepted point.
PointCloud sample_surface(const CsgModel& model, int n, std::uint64_t seed,
                          std::vector<Vec3>* normals = nullptr,
                          int stall_limit = kSampleStallLimit);

/// Farthest-point downsampling to exactly k points starting from
/// `start_index`. Positions are never modified: for count >= k the result is
/// a subset; for 0 < count < k all points are kept and the cloud is padded by
/// resampling with replacement.
PointCloud fps_downsample_from(const PointCloud& cloud, int k, int start_index,
                               std::uint64_t seed);

/// As above with the start point chosen uniformly by the seed.
PointCloud fps_downsample(const PointCloud& cloud, int k, std::uint64_t seed);

/// Keeps exactly the candidate points whose distance to the reference cloud
/// is <= r (inclusive), preserving order. Grid-accelerated, equivalent to the
/// O(n*m) scan.
PointCloud radius_filter(const PointCloud& candidate, const PointCloud& reference, double r);

} // namespace excad
