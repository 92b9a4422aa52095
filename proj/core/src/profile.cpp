#include "excad/profile.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace excad {

namespace {

constexpr double kEpsSweep = 1e-9;
constexpr double kEpsChord = 1e-9;
constexpr double pi = std::numbers::pi;

Vec2 dequant_point(quant_t x, quant_t y) {
  return {dequantize(x, ParamClass::SketchCoord), dequantize(y, ParamClass::SketchCoord)};
}

} // namespace

ArcSeg solve_arc(Vec2 p0, Vec2 p1, double sweep, bool ccw) {
  if (sweep < kEpsSweep) throw DegenerateArc("arc sweep is zero");
  const Vec2 chord = p1 - p0;
  const double c = norm(chord);
  if (c < kEpsChord) {
    // Coincident endpoints: only a full turn would be consistent, and its
    // radius is not recoverable from the parameters.
    throw DegenerateArc("arc endpoints coincide");
  }
  const double half = 0.5 * sweep;
  const double s = std::sin(half);
  if (s < kEpsSweep) throw DegenerateArc("arc sweep of a full turn with nonzero chord");

  ArcSeg arc;
  arc.p0 = p0;
  arc.p1 = p1;
  arc.ccw = ccw;
  arc.sweep = sweep;
  arc.radius = c / (2.0 * s);

  const Vec2 mid = 0.5 * (p0 + p1);
  const Vec2 n = perp((1.0 / c) * chord); // unit left normal of the chord
  const double h = (0.5 * c) / std::tan(half);
  arc.center = ccw ? mid + h * n : mid - h * n;
  return arc;
}

SketchProfile build_profile(std::span<const Command> loop_commands) {
  SketchProfile profile;
  Loop current;
  Vec2 pen{0.0, 0.0};
  Vec2 loop_start{0.0, 0.0};
  bool in_loop = false;
  bool has_circle = false;

  auto finish_loop = [&]() {
    if (current.curves.empty()) throw GrammarError("empty loop");
    if (!has_circle) {
      // The grammar guarantees closure within one quantized bin; snap the
      // final endpoint onto the loop start so the polygon closes exactly.
      const double tol = param_range(ParamClass::SketchCoord).bin_width() *
                         (kLoopClosureTol + 0.5);
      Vec2* end = nullptr;
      if (auto* line = std::get_if<LineSeg>(&current.curves.back())) end = &line->p1;
      if (auto* arc = std::get_if<ArcSeg>(&current.curves.back())) end = &arc->p1;
      if (end == nullptr || std::abs(end->x - loop_start.x) > tol ||
          std::abs(end->y - loop_start.y) > tol) {
        throw OpenLoop("loop does not return to its start");
      }
      if (!(*end == loop_start)) {
        if (auto* arc = std::get_if<ArcSeg>(&current.curves.back())) {
          *arc = solve_arc(arc->p0, loop_start, arc->sweep, arc->ccw);
        } else {
          *end = loop_start;
        }
      }
    }
    profile.loops.push_back(std::move(current));
    current = Loop{};
    has_circle = false;
  };

  for (const Command& cmd : loop_commands) {
    switch (kind_of(cmd)) {
      case CommandKind::Sol:
        if (in_loop) finish_loop();
        in_loop = true;
        pen = {0.0, 0.0};
        loop_start = pen;
        break;
      case CommandKind::Line: {
        if (!in_loop) throw GrammarError("curve before SOL");
        const auto& l = std::get<LineCmd>(cmd);
        const Vec2 end = dequant_point(l.x, l.y);
        current.curves.emplace_back(LineSeg{pen, end});
        pen = end;
        break;
      }
      case CommandKind::Arc: {
        if (!in_loop) throw GrammarError("curve before SOL");
        const auto& a = std::get<ArcCmd>(cmd);
        const Vec2 end = dequant_point(a.x, a.y);
        const double sweep = dequantize(a.sweep, ParamClass::Sweep);
        current.curves.emplace_back(solve_arc(pen, end, sweep, a.ccw != 0));
        pen = end;
        break;
      }
      case CommandKind::Circle: {
        if (!in_loop) throw GrammarError("curve before SOL");
        if (!current.curves.empty()) throw GrammarError("circle must be alone in its loop");
        const auto& r = std::get<CircleCmd>(cmd);
        const double radius = dequantize(r.r, ParamClass::SketchCoord);
        if (radius <= 0.0) throw DegenerateArc("circle with zero radius");
        current.curves.emplace_back(CircleFull{dequant_point(r.x, r.y), radius});
        has_circle = true;
        break;
      }
      default:
        throw GrammarError(std::string("unexpected ") + kind_name(kind_of(cmd)) +
                           " among sketch commands");
    }
  }
  if (in_loop) finish_loop();
  if (profile.loops.empty()) throw GrammarError("no loops");
  return profile;
}

namespace {

void tessellate_arc(const ArcSeg& arc, Polygon& out) {
  const Vec2 r0 = arc.p0 - arc.center;
  const double a0 = std::atan2(r0.y, r0.x);
  const double signed_sweep = arc.ccw ? arc.sweep : -arc.sweep;
  const int n = std::max(kMinArcChords,
                         static_cast<int>(std::ceil(arc.sweep / kChordAngle)));
  // Endpoints are written exactly; interior vertices from the angular sweep.
  out.push_back(arc.p0);
  for (int i = 1; i < n; ++i) {
    const double a = a0 + signed_sweep * (static_cast<double>(i) / n);
    out.push_back(arc.center + Vec2{arc.radius * std::cos(a), arc.radius * std::sin(a)});
  }
  // arc.p1 is appended by the caller as the start of the next curve, or as
  // the loop-closing vertex.
}

Polygon tessellate_circle(const CircleFull& c) {
  const int n = std::max(kMinArcChords,
                         static_cast<int>(std::ceil(2.0 * pi / kChordAngle)));
  Polygon poly;
  poly.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double a = 2.0 * pi * static_cast<double>(i) / n;
    poly.push_back(c.center + Vec2{c.radius * std::cos(a), c.radius * std::sin(a)});
  }
  return poly;
}

// Horizontal-band decomposition of the even-odd interior. Every vertex y
// value becomes a cut line, so no edge has a vertex strictly inside a band;
// within a band the crossing edges are straight and vertically ordered, and
// even-odd pairing yields trapezoids.
struct BandEdge {
  double x_at(double y) const { return x0 + (y - y0) * dxdy; }
  double x0, y0, dxdy;
};

void decompose_bands(const std::vector<Polygon>& polygons,
                     std::vector<CapTriangle>& tris, double& area) {
  struct Edge {
    Vec2 a, b;
  };
  std::vector<Edge> edges;
  std::vector<double> ys;
  for (const Polygon& poly : polygons) {
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Vec2 a = poly[i];
      const Vec2 b = poly[(i + 1) % n];
      if (a.y != b.y) edges.push_back({a, b});
      ys.push_back(a.y);
    }
  }
  std::sort(ys.begin(), ys.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());

  std::vector<BandEdge> crossing;
  for (std::size_t bi = 0; bi + 1 < ys.size(); ++bi) {
    const double y0 = ys[bi];
    const double y1 = ys[bi + 1];
    const double ym = 0.5 * (y0 + y1);
    crossing.clear();
    for (const Edge& e : edges) {
      const double lo = std::min(e.a.y, e.b.y);
      const double hi = std::max(e.a.y, e.b.y);
      if (lo <= y0 && hi >= y1) {
        const double dxdy = (e.b.x - e.a.x) / (e.b.y - e.a.y);
        crossing.push_back({e.a.x, e.a.y, dxdy});
      }
    }
    std::sort(crossing.begin(), crossing.end(),
              [ym](const BandEdge& l, const BandEdge& r) { return l.x_at(ym) < r.x_at(ym); });
    for (std::size_t k = 0; k + 1 < crossing.size(); k += 2) {
      const BandEdge& left = crossing[k];
      const BandEdge& right = crossing[k + 1];
      const Vec2 p00{left.x_at(y0), y0};
      const Vec2 p10{right.x_at(y0), y0};
      const Vec2 p11{right.x_at(y1), y1};
      const Vec2 p01{left.x_at(y1), y1};
      const double w0 = p10.x - p00.x;
      const double w1 = p11.x - p01.x;
      area += 0.5 * (w0 + w1) * (y1 - y0);
      if (w0 > 0.0 || w1 > 0.0) {
        tris.push_back({p00, p10, p11});
        tris.push_back({p00, p11, p01});
      }
    }
  }
}

} // namespace

bool TessellatedProfile::contains(Vec2 p) const {
  if (p.x < bbox_min.x || p.x > bbox_max.x || p.y < bbox_min.y || p.y > bbox_max.y) {
    return false;
  }
  // Even-odd crossing count along the +x ray.
  bool inside = false;
  for (const Polygon& poly : polygons) {
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Vec2 a = poly[i];
      const Vec2 b = poly[(i + 1) % n];
      if ((a.y > p.y) != (b.y > p.y)) {
        const double x_int = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
        if (p.x < x_int) inside = !inside;
      }
    }
  }
  return inside;
}

TessellatedProfile tessellate(const SketchProfile& profile) {
  TessellatedProfile tess;
  for (const Loop& loop : profile.loops) {
    Polygon poly;
    for (const Curve2D& curve : loop.curves) {
      if (const auto* line = std::get_if<LineSeg>(&curve)) {
        poly.push_back(line->p0);
      } else if (const auto* arc = std::get_if<ArcSeg>(&curve)) {
        tessellate_arc(*arc, poly);
      } else if (const auto* circle = std::get_if<CircleFull>(&curve)) {
        poly = tessellate_circle(*circle);
      }
    }
    if (poly.size() >= 3) tess.polygons.push_back(std::move(poly));
  }

  tess.bbox_min = {1e300, 1e300};
  tess.bbox_max = {-1e300, -1e300};
  for (const Polygon& poly : tess.polygons) {
    for (const Vec2 v : poly) {
      tess.bbox_min.x = std::min(tess.bbox_min.x, v.x);
      tess.bbox_min.y = std::min(tess.bbox_min.y, v.y);
      tess.bbox_max.x = std::max(tess.bbox_max.x, v.x);
      tess.bbox_max.y = std::max(tess.bbox_max.y, v.y);
    }
  }
  decompose_bands(tess.polygons, tess.cap_triangles, tess.area);
  return tess;
}

} // namespace excad
