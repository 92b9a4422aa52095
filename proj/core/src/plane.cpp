#include "excad/plane.hpp"

#include <cmath>

namespace excad {

SketchPlane make_plane(double theta, double phi, double gamma, Vec3 origin, double scale) {
  SketchPlane plane;
  plane.origin = origin;
  plane.scale = scale;

  const Vec3 n{std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
               std::cos(theta)};
  plane.normal = normalized(n);

  const Vec3 ref = std::abs(plane.normal.x) > 0.999 ? Vec3{0.0, 1.0, 0.0}
                                                    : Vec3{1.0, 0.0, 0.0};
  const Vec3 base = normalized(ref - dot(ref, plane.normal) * plane.normal);

  // Rodrigues rotation of the reference vector about the normal by gamma.
  const double c = std::cos(gamma);
  const double s = std::sin(gamma);
  plane.u_axis = normalized(c * base + s * cross(plane.normal, base));
  plane.v_axis = cross(plane.normal, plane.u_axis);
  return plane;
}

SketchPlane build_plane(const ExtrudeCmd& ext) {
  const double theta = dequantize(ext.theta, ParamClass::AngleTheta);
  const double phi = dequantize(ext.phi, ParamClass::AnglePhiGamma);
  const double gamma = dequantize(ext.gamma, ParamClass::AnglePhiGamma);
  const Vec3 origin{dequantize(ext.px, ParamClass::ModelCoord),
                    dequantize(ext.py, ParamClass::ModelCoord),
                    dequantize(ext.pz, ParamClass::ModelCoord)};
  const double scale = dequantize(ext.scale, ParamClass::Scale);
  return make_plane(theta, phi, gamma, origin, scale);
}

} // namespace excad
