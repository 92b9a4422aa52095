#pragma once

#include <vector>

#include "excad/cad_lang.hpp"
#include "excad/plane.hpp"
#include "excad/profile.hpp"

namespace excad {

/// One sketch-and-extrude primitive: a profile swept along the plane normal
/// over the height interval [h_lo, h_hi]. The interval is oriented as
/// written; h_lo >= h_hi means the solid occupies nothing (a degenerate
/// extrusion, reported by the validity checker rather than rejected here).
struct ExtrusionSolid {
  SketchProfile profile;
  TessellatedProfile tess;
  SketchPlane plane;
  double e1 = 0.0;
  double e2 = 0.0;
  double h_lo = 0.0;
  double h_hi = 0.0;
  BoolOp op = BoolOp::New;
  ExtrudeType ext_type = ExtrudeType::OneSided;

  double height() const { return h_hi - h_lo; }

  /// Point-membership test for this primitive alone.
  bool inside(Vec3 p) const {
    const Vec3 d = p - plane.origin;
    const double h = dot(d, plane.normal);
    if (h < h_lo || h > h_hi) return false;
    if (plane.scale <= 0.0) return false;
    const Vec2 local{dot(d, plane.u_axis) / plane.scale,
                     dot(d, plane.v_axis) / plane.scale};
    return tess.contains(local);
  }
};

/// Ordered CSG program over extrusion solids. Order matters: each solid's
/// boolean op is applied to the occupancy accumulated so far.
struct CsgModel {
  std::string id;
  std::vector<ExtrusionSolid> solids;
};

/// Height interval of an extrusion: OneSided [0, e1], Symmetric
/// [-e1/2, e1/2], TwoSided [-e2, e1].
void extrusion_interval(ExtrudeType type, double e1, double e2, double& h_lo, double& h_hi);

/// Builds one solid from the sketch commands of a block and its Extrude.
ExtrusionSolid build_solid(std::span<const Command> sketch_commands, const ExtrudeCmd& ext);

/// Builds the full CSG model of a sequence, one solid per Extrude command,
/// in sequence order. Propagates profile and arc errors.
CsgModel build_model(const CadSequence& seq);

/// Folds the boolean program over the first `limit` solids (all if < 0).
bool occupancy_prefix(const CsgModel& model, Vec3 p, int limit);

/// True iff p is inside the final solid.
inline bool occupancy(const CsgModel& model, Vec3 p) {
  return occupancy_prefix(model, p, -1);
}

/// True iff p lies on the boundary of the final solid: occupancy flips
/// between p + eps*n and p - eps*n. Points on internal interfaces (both
/// probes inside) and on removed or hole-covered patches (both outside)
/// fail the test.
bool boundary_test(const CsgModel& model, Vec3 p, Vec3 n, double eps = 1e-4);

inline constexpr double kBoundaryEps = 1e-4;

} // namespace excad
