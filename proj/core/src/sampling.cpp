#include "excad/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "excad/rng.hpp"
#include "excad/spatial_index.hpp"

namespace excad {

PointCloud sample_surface(const CsgModel& model, int n, std::uint64_t seed,
                          std::vector<Vec3>* normals, int stall_limit) {
  if (model.solids.empty()) throw EmptySurface("model has no solids");
  if (n < 1) throw EmptyInput("sample count must be >= 1");

  struct Candidate {
    Triangle tri;
    Vec3 normal;
    double cum_area;
  };
  std::vector<Candidate> table;
  double total = 0.0;
  for (const ExtrusionSolid& solid : model.solids) {
    const TriangleMesh mesh = solid_mesh(solid);
    for (const Triangle& t : mesh.triangles) {
      const double a = t.area();
      if (a <= 0.0) continue;
      total += a;
      table.push_back({t, t.normal(), total});
    }
  }
  if (table.empty() || total <= 0.0) throw EmptySurface("model exposes no surface area");

  Rng rng(seed);
  PointCloud cloud;
  cloud.points.reserve(static_cast<std::size_t>(n));
  if (normals) {
    normals->clear();
    normals->reserve(static_cast<std::size_t>(n));
  }

  int rejects = 0;
  while (cloud.size() < static_cast<std::size_t>(n)) {
    const double pick = rng.uniform() * total;
    auto it = std::lower_bound(table.begin(), table.end(), pick,
                               [](const Candidate& c, double v) { return c.cum_area < v; });
    if (it == table.end()) --it;
    const Triangle& t = it->tri;
    const double r1 = rng.uniform();
    const double r2 = rng.uniform();
    const double s = std::sqrt(r1);
    const Vec3 p = (1.0 - s) * t.a + (s * (1.0 - r2)) * t.b + (s * r2) * t.c;

    if (boundary_test(model, p, it->normal, kBoundaryEps)) {
      cloud.points.push_back(p);
      if (normals) normals->push_back(it->normal);
      rejects = 0;
    } else if (++rejects >= stall_limit) {
      throw EmptySurface("sampling stalled: no exposed surface found");
    }
  }
  return cloud;
}

PointCloud fps_downsample_from(const PointCloud& cloud, int k, int start_index,
                               std::uint64_t seed) {
  const std::size_t n = cloud.size();
  if (n == 0) throw EmptyInput("cannot downsample an empty cloud");
  if (k < 1) throw EmptyInput("target size must be >= 1");

  PointCloud out;
  out.points.reserve(static_cast<std::size_t>(k));

  if (n < static_cast<std::size_t>(k)) {
    // Too few points: keep everything and pad by resampling with replacement.
    out.points = cloud.points;
    Rng rng(seed);
    while (out.size() < static_cast<std::size_t>(k)) {
      out.points.push_back(cloud.points[rng.below(n)]);
    }
    return out;
  }

  std::vector<double> min_d2(n, std::numeric_limits<double>::infinity());
  std::size_t current = static_cast<std::size_t>(start_index) % n;
  out.points.push_back(cloud.points[current]);
  for (int picked = 1; picked < k; ++picked) {
    const Vec3 latest = cloud.points[current];
    std::size_t best = 0;
    double best_d2 = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double d2 = std::min(min_d2[i], dist_sq(cloud.points[i], latest));
      min_d2[i] = d2;
      if (d2 > best_d2) {
        best_d2 = d2;
        best = i;
      }
    }
    current = best;
    out.points.push_back(cloud.points[current]);
  }
  return out;
}

PointCloud fps_downsample(const PointCloud& cloud, int k, std::uint64_t seed) {
  const std::size_t n = cloud.size();
  if (n == 0) throw EmptyInput("cannot downsample an empty cloud");
  Rng rng(mix_seed(seed, 0xF95u));
  const int start = static_cast<int>(rng.below(n));
  return fps_downsample_from(cloud, k, start, seed);
}

PointCloud radius_filter(const PointCloud& candidate, const PointCloud& reference, double r) {
  PointCloud out;
  if (reference.empty()) return out;
  const SpatialIndex index(reference, r > 0.0 ? r : 1.0);
  for (const Vec3 p : candidate.points) {
    if (index.has_neighbor_within(p, r)) out.points.push_back(p);
  }
  return out;
}

} // namespace excad
