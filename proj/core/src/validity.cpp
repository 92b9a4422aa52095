#include "excad/validity.hpp"

#include <algorithm>
#include <cmath>

#include "excad/rng.hpp"

namespace excad {

const char* flag_name(ValidityFlag flag) {
  switch (flag) {
    case ValidityFlag::ZeroExtrusion: return "ZeroExtrusion";
    case ValidityFlag::ZeroScale: return "ZeroScale";
    case ValidityFlag::DegenerateProfile: return "DegenerateProfile";
    case ValidityFlag::NonIntersectingCut: return "NonIntersectingCut";
    case ValidityFlag::BuildError: return "BuildError";
    case ValidityFlag::GrammarViolation: return "GrammarViolation";
  }
  return "?";
}

std::string ValidityReport::summary() const {
  if (valid()) return "valid";
  std::string s;
  for (const ValidityFlag f : sequence_flags) {
    if (!s.empty()) s += ";";
    s += flag_name(f);
  }
  for (const ExtrusionValidity& e : extrusions) {
    for (const ValidityFlag f : e.flags) {
      if (!s.empty()) s += ";";
      s += flag_name(f);
      s += "[" + std::to_string(e.index) + "]";
    }
  }
  return s;
}

namespace {

struct Box3 {
  Vec3 lo{1e300, 1e300, 1e300};
  Vec3 hi{-1e300, -1e300, -1e300};
  void expand(Vec3 p) {
    lo.x = std::min(lo.x, p.x);
    lo.y = std::min(lo.y, p.y);
    lo.z = std::min(lo.z, p.z);
    hi.x = std::max(hi.x, p.x);
    hi.y = std::max(hi.y, p.y);
    hi.z = std::max(hi.z, p.z);
  }
  bool empty() const { return lo.x > hi.x; }
};

// World-space bounding box of an extrusion prism from the 2D profile bbox
// corners swept over the height interval.
Box3 prism_bbox(const ExtrusionSolid& s) {
  Box3 box;
  if (s.tess.polygons.empty() || s.h_lo >= s.h_hi) return box;
  const Vec2 corners[4] = {{s.tess.bbox_min.x, s.tess.bbox_min.y},
                           {s.tess.bbox_max.x, s.tess.bbox_min.y},
                           {s.tess.bbox_max.x, s.tess.bbox_max.y},
                           {s.tess.bbox_min.x, s.tess.bbox_max.y}};
  for (const Vec2 c : corners) {
    box.expand(s.plane.to_world(c, s.h_lo));
    box.expand(s.plane.to_world(c, s.h_hi));
  }
  return box;
}

} // namespace

ValidityReport validate_model(const CadSequence& seq, int cut_probes) {
  ValidityReport report;
  if (auto err = grammar_violation(seq)) {
    report.sequence_flags.push_back(ValidityFlag::GrammarViolation);
    report.detail = *err;
    return report;
  }

  CsgModel model;
  try {
    model = build_model(seq);
  } catch (const Error& e) {
    report.sequence_flags.push_back(ValidityFlag::BuildError);
    report.detail = e.what();
    return report;
  }

  const double bin_w = param_range(ParamClass::Distance).bin_width();
  int ext_index = 0;
  std::vector<quant_t> scales;
  for (const Command& c : seq.commands) {
    if (kind_of(c) == CommandKind::Extrude) scales.push_back(std::get<ExtrudeCmd>(c).scale);
  }

  for (const ExtrusionSolid& solid : model.solids) {
    ExtrusionValidity ev;
    ev.index = ext_index;
    if (solid.height() < bin_w) ev.flags.push_back(ValidityFlag::ZeroExtrusion);
    if (scales[static_cast<std::size_t>(ext_index)] == 0) {
      ev.flags.push_back(ValidityFlag::ZeroScale);
    }
    if (std::abs(solid.tess.area) < 1e-6) {
      ev.flags.push_back(ValidityFlag::DegenerateProfile);
    }
    if (solid.op == BoolOp::Cut && ev.flags.empty()) {
      const Box3 box = prism_bbox(solid);
      bool removes_material = false;
      if (!box.empty()) {
        Rng rng(mix_seed(fnv1a64(seq.id), 0xC07u + static_cast<std::uint64_t>(ext_index)));
        for (int i = 0; i < cut_probes && !removes_material; ++i) {
          const Vec3 p{rng.uniform(box.lo.x, box.hi.x), rng.uniform(box.lo.y, box.hi.y),
                       rng.uniform(box.lo.z, box.hi.z)};
          removes_material = solid.inside(p) && occupancy_prefix(model, p, ext_index);
        }
      }
      if (!removes_material) ev.flags.push_back(ValidityFlag::NonIntersectingCut);
    }
    if (!ev.flags.empty()) report.extrusions.push_back(std::move(ev));
    ++ext_index;
  }
  return report;
}

} // namespace excad
