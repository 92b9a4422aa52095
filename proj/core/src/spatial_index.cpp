#include "excad/spatial_index.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace excad {

SpatialIndex::SpatialIndex(const PointCloud& cloud, double cell_size)
    : cloud_(cloud), cell_(cell_size > 0.0 ? cell_size : 1.0) {
  for (std::size_t i = 0; i < cloud_.size(); ++i) {
    grid_[cell_of(cloud_.points[i])].push_back(static_cast<int>(i));
  }
}

SpatialIndex SpatialIndex::with_auto_cell(const PointCloud& cloud) {
  Vec3 lo{1e300, 1e300, 1e300};
  Vec3 hi{-1e300, -1e300, -1e300};
  for (const Vec3 p : cloud.points) {
    lo = {std::min(lo.x, p.x), std::min(lo.y, p.y), std::min(lo.z, p.z)};
    hi = {std::max(hi.x, p.x), std::max(hi.y, p.y), std::max(hi.z, p.z)};
  }
  double cell = 1.0;
  if (!cloud.empty()) {
    const Vec3 extent = hi - lo;
    const double span = std::max({extent.x, extent.y, extent.z, 1e-9});
    cell = span / std::max(1.0, std::cbrt(static_cast<double>(cloud.size())));
  }
  return SpatialIndex(cloud, cell);
}

SpatialIndex::CellKey SpatialIndex::cell_of(Vec3 p) const {
  return {static_cast<std::int64_t>(std::floor(p.x / cell_)),
          static_cast<std::int64_t>(std::floor(p.y / cell_)),
          static_cast<std::int64_t>(std::floor(p.z / cell_))};
}

std::vector<int> SpatialIndex::within_radius(Vec3 q, double r) const {
  std::vector<int> out;
  if (cloud_.empty() || r < 0.0) return out;
  const double r2 = r * r;
  const std::int64_t reach = static_cast<std::int64_t>(std::ceil(r / cell_));
  const CellKey c = cell_of(q);
  for (std::int64_t dx = -reach; dx <= reach; ++dx) {
    for (std::int64_t dy = -reach; dy <= reach; ++dy) {
      for (std::int64_t dz = -reach; dz <= reach; ++dz) {
        const auto it = grid_.find({c.x + dx, c.y + dy, c.z + dz});
        if (it == grid_.end()) continue;
        for (const int idx : it->second) {
          if (dist_sq(cloud_.points[static_cast<std::size_t>(idx)], q) <= r2) {
            out.push_back(idx);
          }
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool SpatialIndex::has_neighbor_within(Vec3 q, double r) const {
  if (cloud_.empty() || r < 0.0) return false;
  const double r2 = r * r;
  const std::int64_t reach = static_cast<std::int64_t>(std::ceil(r / cell_));
  const CellKey c = cell_of(q);
  for (std::int64_t dx = -reach; dx <= reach; ++dx) {
    for (std::int64_t dy = -reach; dy <= reach; ++dy) {
      for (std::int64_t dz = -reach; dz <= reach; ++dz) {
        const auto it = grid_.find({c.x + dx, c.y + dy, c.z + dz});
        if (it == grid_.end()) continue;
        for (const int idx : it->second) {
          if (dist_sq(cloud_.points[static_cast<std::size_t>(idx)], q) <= r2) return true;
        }
      }
    }
  }
  return false;
}

double SpatialIndex::nearest_sq(Vec3 q) const {
  double best = std::numeric_limits<double>::infinity();
  const CellKey c = cell_of(q);
  // Expanding Chebyshev shells. After scanning shell R, every unscanned point
  // sits in a cell at ring >= R+1 and is therefore at least R*cell away, so
  // once best <= (R*cell)^2 no farther shell can win.
  for (std::int64_t ring = 0;; ++ring) {
    for (std::int64_t dx = -ring; dx <= ring; ++dx) {
      for (std::int64_t dy = -ring; dy <= ring; ++dy) {
        for (std::int64_t dz = -ring; dz <= ring; ++dz) {
          if (std::max({std::llabs(dx), std::llabs(dy), std::llabs(dz)}) != ring) continue;
          const auto it = grid_.find({c.x + dx, c.y + dy, c.z + dz});
          if (it == grid_.end()) continue;
          for (const int idx : it->second) {
            best = std::min(best, dist_sq(cloud_.points[static_cast<std::size_t>(idx)], q));
          }
        }
      }
    }
    const double safe = static_cast<double>(ring) * cell_;
    if (best <= safe * safe) return best;
    // Guard against pathological cell sizes: beyond a few thousand rings the
    // grid scan is slower than a direct pass.
    if (ring > 4096) {
      for (const Vec3 p : cloud_.points) best = std::min(best, dist_sq(p, q));
      return best;
    }
  }
}

} // namespace excad
