#pragma once

// Independent reference implementations used to cross-check the library.
// Everything here is written from the documented conventions, not by calling
// into the code under test: its own dequantization, frame derivation, arc
// solving, tessellation, ray casting (along +y, where the library uses +x)
// and boolean folding.

#include <vector>

#include "excad/cad_lang.hpp"
#include "excad/point_cloud.hpp"
#include "excad/vec.hpp"

namespace oracle {

struct Solid {
  std::vector<std::vector<excad::Vec2>> polygons;
  excad::Vec3 origin, u, v, n;
  double scale = 1.0;
  double h_lo = 0.0, h_hi = 0.0;
  excad::BoolOp op = excad::BoolOp::New;
};

struct Model {
  std::vector<Solid> solids;
};

Model build(const excad::CadSequence& seq);

bool inside_solid(const Solid& solid, excad::Vec3 p);

/// Boolean fold over the first `limit` solids (all if < 0).
bool occupancy(const Model& model, excad::Vec3 p, int limit = -1);

/// O(n*m) chamfer distance, the textbook double loop.
double chamfer_bruteforce(const excad::PointCloud& p, const excad::PointCloud& q);

/// Keeps candidates with a reference neighbor within r, by full scan.
excad::PointCloud radius_filter_bruteforce(const excad::PointCloud& candidate,
                                           const excad::PointCloud& reference, double r);

double nearest_sq_bruteforce(const excad::PointCloud& cloud, excad::Vec3 q);

/// True if the oracle sees an occupancy flip within `eps` of p in any of 14
/// probe directions (axes and diagonals); used to excuse disagreements inside
/// the surface shell.
bool near_surface(const Model& model, excad::Vec3 p, double eps);

} // namespace oracle
