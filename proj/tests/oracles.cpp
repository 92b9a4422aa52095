#include "oracles.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace oracle {

using excad::ArcCmd;
using excad::BoolOp;
using excad::CadSequence;
using excad::CircleCmd;
using excad::Command;
using excad::CommandKind;
using excad::ExtrudeCmd;
using excad::ExtrudeType;
using excad::LineCmd;
using excad::PointCloud;
using excad::Vec2;
using excad::Vec3;

namespace {

constexpr double pi = std::numbers::pi;
constexpr double kStep = 2.0 * pi / 96.0;

double deq(int q, double lo, double hi) { return lo + (q / 255.0) * (hi - lo); }

Vec2 deq_pt(int x, int y) { return {deq(x, 0, 1), deq(y, 0, 1)}; }

// Arc center via the perpendicular bisector: the center sits at distance
// sqrt(r^2 - (c/2)^2) from the chord midpoint, on the side determined by the
// orientation flag and whether the sweep exceeds half a turn.
void solve_arc(Vec2 p0, Vec2 p1, double sweep, bool ccw, Vec2& center, double& radius) {
  const Vec2 chord = p1 - p0;
  const double c = norm(chord);
  if (c < 1e-12 || sweep < 1e-9 || std::sin(0.5 * sweep) < 1e-9) {
    throw std::runtime_error("oracle: degenerate arc");
  }
  radius = c / (2.0 * std::sin(0.5 * sweep));
  const double half2 = radius * radius - 0.25 * c * c;
  const double offset = half2 > 0.0 ? std::sqrt(half2) : 0.0;
  const Vec2 mid = 0.5 * (p0 + p1);
  const Vec2 left{-chord.y / c, chord.x / c};
  const bool center_on_left = (ccw && sweep < pi) || (!ccw && sweep > pi);
  center = center_on_left ? mid + offset * left : mid - offset * left;
}

void append_arc(std::vector<Vec2>& poly, Vec2 p0, Vec2 p1, double sweep, bool ccw) {
  Vec2 center;
  double radius;
  solve_arc(p0, p1, sweep, ccw, center, radius);
  const int chords = std::max(4, static_cast<int>(std::ceil(sweep / kStep)));
  const double a0 = std::atan2(p0.y - center.y, p0.x - center.x);
  const double step = (ccw ? sweep : -sweep) / chords;
  poly.push_back(p0);
  for (int i = 1; i < chords; ++i) {
    const double a = a0 + step * i;
    poly.push_back(center + Vec2{radius * std::cos(a), radius * std::sin(a)});
  }
}

std::vector<Vec2> circle_polygon(Vec2 center, double radius) {
  std::vector<Vec2> poly;
  for (int i = 0; i < 96; ++i) {
    const double a = 2.0 * pi * i / 96.0;
    poly.push_back(center + Vec2{radius * std::cos(a), radius * std::sin(a)});
  }
  return poly;
}

} // namespace

Model build(const CadSequence& seq) {
  Model model;
  std::vector<std::vector<Vec2>> polygons;
  std::vector<Vec2> poly;
  Vec2 pen{0, 0};

  for (const Command& cmd : seq.commands) {
    switch (excad::kind_of(cmd)) {
      case CommandKind::Sol:
        if (poly.size() >= 3) polygons.push_back(poly);
        poly.clear();
        pen = {0, 0};
        break;
      case CommandKind::Line: {
        const auto& l = std::get<LineCmd>(cmd);
        const Vec2 end = deq_pt(l.x, l.y);
        poly.push_back(pen);
        pen = end;
        break;
      }
      case CommandKind::Arc: {
        const auto& a = std::get<ArcCmd>(cmd);
        Vec2 end = deq_pt(a.x, a.y);
        // Same snapping convention as the library: a loop that closes within
        // one bin is pulled onto the origin exactly.
        append_arc(poly, pen, end, deq(a.sweep, 0, 2 * pi), a.ccw != 0);
        pen = end;
        break;
      }
      case CommandKind::Circle: {
        const auto& r = std::get<CircleCmd>(cmd);
        poly = circle_polygon(deq_pt(r.x, r.y), deq(r.r, 0, 1));
        pen = {0, 0};
        break;
      }
      case CommandKind::Extrude: {
        if (poly.size() >= 3) polygons.push_back(poly);
        poly.clear();
        pen = {0, 0};

        const auto& e = std::get<ExtrudeCmd>(cmd);
        Solid solid;
        solid.polygons = polygons;
        polygons.clear();

        const double theta = deq(e.theta, 0, pi);
        const double phi = deq(e.phi, -pi, pi);
        const double gamma = deq(e.gamma, -pi, pi);
        solid.n = {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
                   std::cos(theta)};
        const Vec3 ref = std::abs(solid.n.x) > 0.999 ? Vec3{0, 1, 0} : Vec3{1, 0, 0};
        Vec3 base = ref - dot(ref, solid.n) * solid.n;
        base = (1.0 / norm(base)) * base;
        solid.u = std::cos(gamma) * base + std::sin(gamma) * cross(solid.n, base);
        solid.u = (1.0 / norm(solid.u)) * solid.u;
        solid.v = cross(solid.n, solid.u);
        solid.origin = {deq(e.px, -1, 1), deq(e.py, -1, 1), deq(e.pz, -1, 1)};
        solid.scale = deq(e.scale, 0, 1);

        const double e1 = deq(e.e1, -1, 1);
        const double e2 = deq(e.e2, -1, 1);
        switch (e.type) {
          case ExtrudeType::OneSided:
            solid.h_lo = 0;
            solid.h_hi = e1;
            break;
          case ExtrudeType::Symmetric:
            solid.h_lo = -e1 / 2;
            solid.h_hi = e1 / 2;
            break;
          case ExtrudeType::TwoSided:
            solid.h_lo = -e2;
            solid.h_hi = e1;
            break;
        }
        solid.op = e.op;
        model.solids.push_back(std::move(solid));
        break;
      }
      case CommandKind::Eos:
        break;
    }
  }
  return model;
}

bool inside_solid(const Solid& solid, Vec3 p) {
  if (solid.scale <= 0.0) return false;
  const Vec3 d = p - solid.origin;
  const double h = dot(d, solid.n);
  if (h < solid.h_lo || h > solid.h_hi) return false;
  const Vec2 local{dot(d, solid.u) / solid.scale, dot(d, solid.v) / solid.scale};

  // Even-odd parity along the +y ray.
  bool inside = false;
  for (const auto& poly : solid.polygons) {
    const std::size_t m = poly.size();
    for (std::size_t i = 0; i < m; ++i) {
      const Vec2 a = poly[i];
      const Vec2 b = poly[(i + 1) % m];
      if ((a.x > local.x) != (b.x > local.x)) {
        const double y_int = a.y + (local.x - a.x) * (b.y - a.y) / (b.x - a.x);
        if (local.y < y_int) inside = !inside;
      }
    }
  }
  return inside;
}

bool occupancy(const Model& model, Vec3 p, int limit) {
  const std::size_t n =
      limit < 0 ? model.solids.size() : std::min<std::size_t>(limit, model.solids.size());
  bool occ = false;
  for (std::size_t i = 0; i < n; ++i) {
    const Solid& s = model.solids[i];
    const bool in = inside_solid(s, p);
    switch (s.op) {
      case BoolOp::New:
      case BoolOp::Join:
        occ = occ || in;
        break;
      case BoolOp::Cut:
        occ = occ && !in;
        break;
      case BoolOp::Intersect:
        occ = occ && in;
        break;
    }
  }
  return occ;
}

double chamfer_bruteforce(const PointCloud& p, const PointCloud& q) {
  double sum_pq = 0.0;
  for (const Vec3 a : p.points) {
    double best = std::numeric_limits<double>::infinity();
    for (const Vec3 b : q.points) best = std::min(best, dist_sq(a, b));
    sum_pq += best;
  }
  double sum_qp = 0.0;
  for (const Vec3 b : q.points) {
    double best = std::numeric_limits<double>::infinity();
    for (const Vec3 a : p.points) best = std::min(best, dist_sq(b, a));
    sum_qp += best;
  }
  return sum_pq / static_cast<double>(p.size()) + sum_qp / static_cast<double>(q.size());
}

PointCloud radius_filter_bruteforce(const PointCloud& candidate, const PointCloud& reference,
                                    double r) {
  PointCloud out;
  const double r2 = r * r;
  for (const Vec3 c : candidate.points) {
    for (const Vec3 ref : reference.points) {
      if (dist_sq(c, ref) <= r2) {
        out.points.push_back(c);
        break;
      }
    }
  }
  return out;
}

double nearest_sq_bruteforce(const PointCloud& cloud, Vec3 q) {
  double best = std::numeric_limits<double>::infinity();
  for (const Vec3 p : cloud.points) best = std::min(best, dist_sq(p, q));
  return best;
}

bool near_surface(const Model& model, Vec3 p, double eps) {
  static const Vec3 dirs[] = {
      {1, 0, 0},  {-1, 0, 0}, {0, 1, 0},  {0, -1, 0}, {0, 0, 1},  {0, 0, -1},
      {1, 1, 1},  {1, 1, -1}, {1, -1, 1}, {1, -1, -1},
      {-1, 1, 1}, {-1, 1, -1}, {-1, -1, 1}, {-1, -1, -1}};
  const bool center = occupancy(model, p);
  for (const Vec3 d : dirs) {
    const Vec3 dir = (1.0 / norm(d)) * d;
    if (occupancy(model, p + eps * dir) != center) return true;
  }
  return false;
}

} // namespace oracle
