// Best-effort translation of upstream construction-history JSON (the raw
// entities/profiles/transform schema) into the native command format. Only
// single-sketch extrudes built from lines, arcs and circles are handled;
// everything else is logged and skipped.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>

#include <json.hpp>

#include "excad/dataset.hpp"
#include "excad/plane.hpp"
#include "excad/sequence_io.hpp"
#include "excad/solid.hpp"
#include "excad/vec.hpp"

namespace excad {

namespace {

using nlohmann::json;

constexpr double pi = std::numbers::pi;

Vec3 read_vec3(const json& j) {
  return {j.value("x", 0.0), j.value("y", 0.0), j.value("z", 0.0)};
}

struct RawCurve {
  enum class Type { Line, Arc, Circle } type;
  Vec2 start, end, center;
  double radius = 0.0;
  double sweep = 0.0;
  bool ccw = true;
};

struct RawLoop {
  std::vector<RawCurve> curves;
  bool is_circle() const {
    return curves.size() == 1 && curves.front().type == RawCurve::Type::Circle;
  }
};

struct RawSketch {
  Vec3 origin, x_axis, y_axis, z_axis;
  std::vector<RawLoop> loops;
};

struct RawExtrude {
  RawSketch sketch;
  double d1 = 0.0;
  double d2 = 0.0;
  BoolOp op = BoolOp::New;
  ExtrudeType type = ExtrudeType::OneSided;
};

Vec2 project(const json& point, const Vec3 origin, const Vec3 x_axis, const Vec3 y_axis) {
  const Vec3 p = read_vec3(point) - origin;
  return {dot(p, x_axis), dot(p, y_axis)};
}

RawCurve convert_curve(const json& curve, const RawSketch& sk) {
  const std::string type = curve.value("type", "");
  RawCurve out;
  if (type == "Line3D") {
    out.type = RawCurve::Type::Line;
    out.start = project(curve.at("start_point"), sk.origin, sk.x_axis, sk.y_axis);
    out.end = project(curve.at("end_point"), sk.origin, sk.x_axis, sk.y_axis);
    return out;
  }
  if (type == "Circle3D") {
    out.type = RawCurve::Type::Circle;
    out.center = project(curve.at("center_point"), sk.origin, sk.x_axis, sk.y_axis);
    out.radius = curve.at("radius").get<double>();
    return out;
  }
  if (type == "Arc3D") {
    out.type = RawCurve::Type::Arc;
    out.start = project(curve.at("start_point"), sk.origin, sk.x_axis, sk.y_axis);
    out.end = project(curve.at("end_point"), sk.origin, sk.x_axis, sk.y_axis);
    out.center = project(curve.at("center_point"), sk.origin, sk.x_axis, sk.y_axis);
    out.radius = curve.at("radius").get<double>();
    if (curve.contains("start_angle") && curve.contains("end_angle")) {
      const double sweep = curve.at("end_angle").get<double>() -
                           curve.at("start_angle").get<double>();
      out.ccw = sweep >= 0.0;
      out.sweep = std::abs(sweep);
    } else {
      const Vec2 vs = out.start - out.center;
      const Vec2 ve = out.end - out.center;
      double a = std::atan2(cross(vs, ve), dot(vs, ve));
      out.ccw = a >= 0.0;
      out.sweep = std::abs(a);
    }
    if (out.sweep <= 0.0 || out.sweep > 2.0 * pi) {
      throw SyntaxError("arc sweep out of range");
    }
    return out;
  }
  throw SyntaxError("unsupported curve type '" + type + "'");
}

BoolOp convert_operation(const std::string& name) {
  if (name == "NewBodyFeatureOperation") return BoolOp::New;
  if (name == "JoinFeatureOperation") return BoolOp::Join;
  if (name == "CutFeatureOperation") return BoolOp::Cut;
  if (name == "IntersectFeatureOperation") return BoolOp::Intersect;
  throw SyntaxError("unsupported operation '" + name + "'");
}

ExtrudeType convert_extent(const std::string& name) {
  if (name == "OneSideFeatureExtentType") return ExtrudeType::OneSided;
  if (name == "SymmetricFeatureExtentType") return ExtrudeType::Symmetric;
  if (name == "TwoSidesFeatureExtentType") return ExtrudeType::TwoSided;
  throw SyntaxError("unsupported extent type '" + name + "'");
}

std::vector<RawExtrude> parse_raw(const json& doc) {
  const json& entities = doc.at("entities");
  std::vector<RawExtrude> out;
  for (const json& step : doc.at("sequence")) {
    if (step.value("type", "") != "ExtrudeFeature") continue;
    const json& feature = entities.at(step.at("entity").get<std::string>());
    RawExtrude ext;
    ext.op = convert_operation(feature.at("operation").get<std::string>());
    ext.type = convert_extent(feature.at("extent_type").get<std::string>());
    ext.d1 = feature.at("extent_one").at("distance").at("value").get<double>();
    if (feature.contains("extent_two")) {
      ext.d2 = feature.at("extent_two").at("distance").at("value").get<double>();
    }

    const json& profiles = feature.at("profiles");
    if (profiles.empty()) throw SyntaxError("extrude references no profiles");
    const std::string sketch_id = profiles.at(0).at("sketch").get<std::string>();
    const json& sketch = entities.at(sketch_id);
    const json& transform = sketch.at("transform");
    ext.sketch.origin = read_vec3(transform.at("origin"));
    ext.sketch.x_axis = normalized(read_vec3(transform.at("x_axis")));
    ext.sketch.y_axis = normalized(read_vec3(transform.at("y_axis")));
    ext.sketch.z_axis = normalized(read_vec3(transform.at("z_axis")));

    for (const json& ref : profiles) {
      if (ref.at("sketch").get<std::string>() != sketch_id) {
        throw SyntaxError("extrude spans multiple sketches");
      }
      const json& profile = sketch.at("profiles").at(ref.at("profile").get<std::string>());
      for (const json& loop : profile.at("loops")) {
        RawLoop raw_loop;
        for (const json& curve : loop.at("profile_curves")) {
          raw_loop.curves.push_back(convert_curve(curve, ext.sketch));
        }
        if (raw_loop.curves.empty()) throw SyntaxError("empty loop");
        ext.sketch.loops.push_back(std::move(raw_loop));
      }
    }
    if (ext.sketch.loops.empty()) throw SyntaxError("extrude has no loops");
    out.push_back(std::move(ext));
  }
  if (out.empty()) throw SyntaxError("no extrude features");
  if (out.size() > static_cast<std::size_t>(kMaxExtrusions)) {
    throw SyntaxError("more than " + std::to_string(kMaxExtrusions) + " extrusions");
  }
  return out;
}

struct WorldBox {
  Vec3 lo{1e300, 1e300, 1e300};
  Vec3 hi{-1e300, -1e300, -1e300};
  void expand(Vec3 p) {
    lo = {std::min(lo.x, p.x), std::min(lo.y, p.y), std::min(lo.z, p.z)};
    hi = {std::max(hi.x, p.x), std::max(hi.y, p.y), std::max(hi.z, p.z)};
  }
};

// Rough world bounds from the profile bboxes swept over the extrusion
// heights; cuts are treated like any other solid, which is fine for a
// normalization estimate.
WorldBox estimate_bounds(const std::vector<RawExtrude>& extrudes) {
  WorldBox box;
  for (const RawExtrude& ext : extrudes) {
    Vec2 lo{1e300, 1e300};
    Vec2 hi{-1e300, -1e300};
    for (const RawLoop& loop : ext.sketch.loops) {
      for (const RawCurve& c : loop.curves) {
        for (const Vec2 p : {c.start, c.end}) {
          if (c.type == RawCurve::Type::Circle) continue;
          lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
          hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
        }
        if (c.type != RawCurve::Type::Line) {
          lo = {std::min(lo.x, c.center.x - c.radius), std::min(lo.y, c.center.y - c.radius)};
          hi = {std::max(hi.x, c.center.x + c.radius), std::max(hi.y, c.center.y + c.radius)};
        }
      }
    }
    double h_lo, h_hi;
    extrusion_interval(ext.type, ext.d1, ext.d2, h_lo, h_hi);
    if (h_lo > h_hi) std::swap(h_lo, h_hi);
    for (const double u : {lo.x, hi.x}) {
      for (const double v : {lo.y, hi.y}) {
        for (const double h : {h_lo, h_hi}) {
          box.expand(ext.sketch.origin + u * ext.sketch.x_axis + v * ext.sketch.y_axis +
                     h * ext.sketch.z_axis);
        }
      }
    }
  }
  return box;
}

// Roll angle that makes our reference-based frame reproduce the sketch's
// x axis for the given normal.
double solve_gamma(Vec3 normal, Vec3 x_axis) {
  const double theta = std::acos(std::clamp(normal.z, -1.0, 1.0));
  const double phi = std::atan2(normal.y, normal.x);
  const SketchPlane base = make_plane(theta, phi, 0.0, Vec3{}, 1.0);
  return std::atan2(dot(x_axis, base.v_axis), dot(x_axis, base.u_axis));
}

CadSequence convert_model(const json& doc, const std::string& id) {
  const std::vector<RawExtrude> extrudes = parse_raw(doc);

  WorldBox box = estimate_bounds(extrudes);
  if (doc.contains("properties") && doc.at("properties").contains("bounding_box")) {
    const json& bb = doc.at("properties").at("bounding_box");
    box = WorldBox{};
    box.expand(read_vec3(bb.at("min_point")));
    box.expand(read_vec3(bb.at("max_point")));
  }
  const Vec3 extent = box.hi - box.lo;
  const double max_extent = std::max({extent.x, extent.y, extent.z, 1e-12});
  const double global_scale = 1.8 / max_extent;
  const Vec3 center = 0.5 * (box.lo + box.hi);

  CadSequence seq;
  seq.id = id;
  for (const RawExtrude& ext : extrudes) {
    // Sketch coordinates are shifted so the first loop starts at the local
    // origin (the pen convention) and scaled into the unit square.
    Vec2 shift{};
    if (!ext.sketch.loops.front().is_circle()) {
      shift = ext.sketch.loops.front().curves.front().start;
    } else {
      const RawCurve& c = ext.sketch.loops.front().curves.front();
      shift = {c.center.x - c.radius, c.center.y - c.radius};
    }
    Vec2 lo{1e300, 1e300};
    Vec2 hi{-1e300, -1e300};
    for (const RawLoop& loop : ext.sketch.loops) {
      for (const RawCurve& c : loop.curves) {
        if (c.type == RawCurve::Type::Circle) {
          lo = {std::min(lo.x, c.center.x - c.radius), std::min(lo.y, c.center.y - c.radius)};
          hi = {std::max(hi.x, c.center.x + c.radius), std::max(hi.y, c.center.y + c.radius)};
        } else {
          for (const Vec2 p : {c.start, c.end}) {
            lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
            hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
          }
        }
      }
    }
    const double sketch_extent = std::max({hi.x - lo.x, hi.y - lo.y, 1e-12});
    auto to_unit = [&](Vec2 p) -> Vec2 {
      const Vec2 q = (1.0 / sketch_extent) * (p - shift);
      if (q.x < -1e-6 || q.x > 1.0 + 1e-6 || q.y < -1e-6 || q.y > 1.0 + 1e-6) {
        throw SyntaxError("loop coordinates leave the unit square after normalization");
      }
      return {std::clamp(q.x, 0.0, 1.0), std::clamp(q.y, 0.0, 1.0)};
    };

    for (const RawLoop& loop : ext.sketch.loops) {
      seq.commands.emplace_back(SolCmd{});
      if (loop.is_circle()) {
        const RawCurve& c = loop.curves.front();
        const Vec2 cc = to_unit(c.center);
        seq.commands.emplace_back(CircleCmd{quantize(cc.x, ParamClass::SketchCoord),
                                            quantize(cc.y, ParamClass::SketchCoord),
                                            quantize(c.radius / sketch_extent,
                                                     ParamClass::SketchCoord)});
        continue;
      }
      for (const RawCurve& c : loop.curves) {
        if (c.type == RawCurve::Type::Circle) {
          throw SyntaxError("circle mixed with other curves in one loop");
        }
        const Vec2 end = to_unit(c.end);
        if (c.type == RawCurve::Type::Line) {
          seq.commands.emplace_back(LineCmd{quantize(end.x, ParamClass::SketchCoord),
                                            quantize(end.y, ParamClass::SketchCoord)});
        } else {
          seq.commands.emplace_back(ArcCmd{quantize(end.x, ParamClass::SketchCoord),
                                           quantize(end.y, ParamClass::SketchCoord),
                                           quantize(c.sweep, ParamClass::Sweep),
                                           static_cast<quant_t>(c.ccw ? 1 : 0)});
        }
      }
    }

    const Vec3 normal = ext.sketch.z_axis;
    const double theta = std::acos(std::clamp(normal.z, -1.0, 1.0));
    const double phi = std::atan2(normal.y, normal.x);
    const double gamma = solve_gamma(normal, ext.sketch.x_axis);
    const Vec3 origin_world = ext.sketch.origin + shift.x * ext.sketch.x_axis +
                              shift.y * ext.sketch.y_axis;
    const Vec3 origin_norm = global_scale * (origin_world - center);

    ExtrudeCmd e;
    e.theta = quantize(theta, ParamClass::AngleTheta);
    e.phi = quantize(phi, ParamClass::AnglePhiGamma);
    e.gamma = quantize(gamma, ParamClass::AnglePhiGamma);
    e.px = quantize(origin_norm.x, ParamClass::ModelCoord);
    e.py = quantize(origin_norm.y, ParamClass::ModelCoord);
    e.pz = quantize(origin_norm.z, ParamClass::ModelCoord);
    e.scale = quantize(sketch_extent * global_scale, ParamClass::Scale);
    e.e1 = quantize(ext.d1 * global_scale, ParamClass::Distance);
    e.e2 = quantize(ext.d2 * global_scale, ParamClass::Distance);
    e.op = ext.op;
    e.type = ext.type;
    seq.commands.emplace_back(e);
  }
  seq.commands.emplace_back(EosCmd{});
  validate_grammar(seq);
  return seq;
}

} // namespace

ImportResult import_upstream(const std::filesystem::path& in_dir,
                             const std::filesystem::path& out_dir) {
  if (!std::filesystem::is_directory(in_dir)) {
    throw IoError(in_dir.string() + " is not a directory");
  }
  std::filesystem::create_directories(out_dir);
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::recursive_directory_iterator(in_dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());

  ImportResult result;
  for (const auto& file : files) {
    try {
      std::ifstream in(file);
      if (!in) throw IoError("cannot open " + file.string());
      json doc;
      try {
        doc = json::parse(in);
      } catch (const json::exception& e) {
        throw SyntaxError(std::string("invalid JSON: ") + e.what());
      }
      const std::string id = file.stem().string();
      const CadSequence seq = convert_model(doc, id);
      write_sequence_file(out_dir / (id + ".json"), seq);
      ++result.converted;
    } catch (const Error& e) {
      result.skipped.push_back({file.filename().string(), e.what()});
    } catch (const json::exception& e) {
      result.skipped.push_back({file.filename().string(), e.what()});
    }
  }
  return result;
}

} // namespace excad
