#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "excad/point_cloud.hpp"

namespace excad {

/// Uniform hash grid over a fixed point set. Queries are exact: results are
/// identical to a brute-force scan (verified in tests), the grid only prunes
/// the candidate set.
class SpatialIndex {
public:
  SpatialIndex(const PointCloud& cloud, double cell_size);

  /// Cell size that keeps the expected bucket population near one point.
  static SpatialIndex with_auto_cell(const PointCloud& cloud);

  /// Indices of all points at distance <= r from q, sorted ascending.
  std::vector<int> within_radius(Vec3 q, double r) const;

  /// True iff some point lies at distance <= r from q.
  bool has_neighbor_within(Vec3 q, double r) const;

  /// Squared distance to the nearest point; the cloud must be non-empty.
  double nearest_sq(Vec3 q) const;

  double cell_size() const { return cell_; }

private:
  struct CellKey {
    std::int64_t x, y, z;
    bool operator==(const CellKey&) const = default;
  };
  struct CellHash {
    std::size_t operator()(const CellKey& k) const {
      std::uint64_t h = 0xCBF29CE484222325ull;
      for (const std::int64_t v : {k.x, k.y, k.z}) {
        h ^= static_cast<std::uint64_t>(v);
        h *= 0x100000001B3ull;
      }
      return static_cast<std::size_t>(h);
    }
  };

  CellKey cell_of(Vec3 p) const;

  const PointCloud& cloud_;
  double cell_;
  std::unordered_map<CellKey, std::vector<int>, CellHash> grid_;
};

} // namespace excad
