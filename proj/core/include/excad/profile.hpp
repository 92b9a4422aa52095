#pragma once

#include <span>
#include <variant>
#include <vector>

#include "excad/cad_lang.hpp"
#include "excad/vec.hpp"

namespace excad {

// ---------------------------------------------------------------------------
// Sketch profiles: closed 2D loops with even-odd interior semantics.
// Geometry is realized as tessellated polygons; arcs and circles become
// chord polylines with chords subtending at most kChordAngle each.
// ---------------------------------------------------------------------------

struct LineSeg {
  Vec2 p0, p1;
};

struct ArcSeg {
  Vec2 p0, p1;
  Vec2 center;
  double radius = 0.0;
  bool ccw = true;
  double sweep = 0.0; ///< radians in (0, 2*pi)
};

struct CircleFull {
  Vec2 center;
  double radius = 0.0;
};

using Curve2D = std::variant<LineSeg, ArcSeg, CircleFull>;

struct Loop {
  std::vector<Curve2D> curves;
};

struct SketchProfile {
  std::vector<Loop> loops;
};

/// Max angle subtended by one tessellation chord. 96 subdivisions on a full
/// circle keep the polygon area within 0.1% of the disc area.
inline constexpr double kChordAngle = 2.0 * 3.14159265358979323846 / 96.0;
inline constexpr int kMinArcChords = 4;

/// Solves an arc from its endpoints, sweep angle and orientation flag.
/// The center sits on the perpendicular bisector of the chord; the ccw flag
/// selects the side. Throws DegenerateArc if the sweep is (numerically) zero,
/// or if the chord length is inconsistent with the sweep.
ArcSeg solve_arc(Vec2 p0, Vec2 p1, double sweep, bool ccw);

/// Builds a profile from the sketch commands of one block (the SOL/curve
/// commands preceding an Extrude). Coordinates are dequantized sketch
/// coordinates in the unit square; every non-circle loop starts and ends at
/// the local origin. Throws OpenLoop if a loop fails to close and
/// DegenerateArc for unsolvable arcs.
SketchProfile build_profile(std::span<const Command> loop_commands);

/// Closed polygon: consecutive vertices are edges, last connects to first.
using Polygon = std::vector<Vec2>;

struct CapTriangle {
  Vec2 a, b, c;
};

/// Tessellated realization of a profile, the geometry everything downstream
/// (occupancy, sampling, meshing, area) operates on.
struct TessellatedProfile {
  std::vector<Polygon> polygons;
  std::vector<CapTriangle> cap_triangles; ///< exact cover of the even-odd interior
  double area = 0.0;                      ///< even-odd interior area
  Vec2 bbox_min, bbox_max;

  /// Even-odd interior test over the tessellated polygons.
  bool contains(Vec2 p) const;
};

TessellatedProfile tessellate(const SketchProfile& profile);

} // namespace excad
