#pragma once

#include "excad/cad_lang.hpp"
#include "excad/vec.hpp"

namespace excad {

/// Placement of a sketch in model space: a right-handed orthonormal frame
/// {u_axis, v_axis, normal} plus origin and isotropic sketch scale.
struct SketchPlane {
  Vec3 origin;
  Vec3 u_axis{1.0, 0.0, 0.0};
  Vec3 v_axis{0.0, 1.0, 0.0};
  Vec3 normal{0.0, 0.0, 1.0};
  double scale = 1.0;

  /// Maps local sketch coordinates and height to model space.
  Vec3 to_world(Vec2 local, double height) const {
    return origin + scale * (local.x * u_axis + local.y * v_axis) + height * normal;
  }
};

/// Frame from spherical angles: normal = (sin t cos p, sin t sin p, cos t);
/// u_axis is the in-plane projection of a fixed reference axis rotated about
/// the normal by gamma; v = n x u. Near the poles the reference axis falls
/// back from x to y to stay well-conditioned.
SketchPlane make_plane(double theta, double phi, double gamma, Vec3 origin, double scale);

/// Plane of an Extrude command, with all parameters dequantized.
SketchPlane build_plane(const ExtrudeCmd& ext);

} // namespace excad
