#include <algorithm>
#include <cstdio>

#include "excad/dataset.hpp"
#include "excad/errors.hpp"
#include "excad/rng.hpp"
#include "excad/sampling.hpp"
#include "excad/solid.hpp"
#include "excad/validity.hpp"

namespace excad {

namespace {

constexpr int kGenAttempts = 100;
constexpr int kSurfaceProbeBudget = 20000;

// Loop shapes the generator can emit, with their command cost (incl. SOL).
enum class LoopShape { Rect, Triangle, Circle, Stadium };

int loop_cost(LoopShape shape) {
  switch (shape) {
    case LoopShape::Rect: return 5;
    case LoopShape::Triangle: return 4;
    case LoopShape::Circle: return 2;
    case LoopShape::Stadium: return 3;
  }
  return 5;
}

quant_t qu(std::uint64_t v) { return static_cast<quant_t>(v); }

// Emits one loop's commands; rectangles may carve a circular hole (even-odd).
void emit_loop(Rng& rng, LoopShape shape, bool with_hole, std::vector<Command>& out) {
  out.emplace_back(SolCmd{});
  switch (shape) {
    case LoopShape::Rect: {
      const quant_t w = qu(80 + rng.below(176));
      const quant_t h = qu(80 + rng.below(176));
      out.emplace_back(LineCmd{w, 0});
      out.emplace_back(LineCmd{w, h});
      out.emplace_back(LineCmd{0, h});
      out.emplace_back(LineCmd{0, 0});
      if (with_hole) {
        const int side = std::min(w, h);
        const int r = 20 + static_cast<int>(rng.below(static_cast<std::uint64_t>(side / 4)));
        const int span_x = std::max(1, w - 2 * r - 20);
        const int span_y = std::max(1, h - 2 * r - 20);
        const int cx = r + 10 + static_cast<int>(rng.below(static_cast<std::uint64_t>(span_x)));
        const int cy = r + 10 + static_cast<int>(rng.below(static_cast<std::uint64_t>(span_y)));
        out.emplace_back(SolCmd{});
        out.emplace_back(CircleCmd{qu(cx), qu(cy), qu(r)});
      }
      break;
    }
    case LoopShape::Triangle: {
      const quant_t w = qu(80 + rng.below(176));
      const quant_t h = qu(80 + rng.below(176));
      const quant_t ax = qu(10 + rng.below(236));
      out.emplace_back(LineCmd{w, 0});
      out.emplace_back(LineCmd{ax, h});
      out.emplace_back(LineCmd{0, 0});
      break;
    }
    case LoopShape::Circle: {
      const quant_t r = qu(40 + rng.below(81));
      const quant_t cx = qu(r + rng.below(256 - 2ull * r));
      const quant_t cy = qu(r + rng.below(256 - 2ull * r));
      out.emplace_back(CircleCmd{cx, cy, r});
      break;
    }
    case LoopShape::Stadium: {
      const quant_t w = qu(80 + rng.below(176));
      out.emplace_back(LineCmd{w, 0});
      out.emplace_back(ArcCmd{0, 0, quantize(3.14159265358979, ParamClass::Sweep), 1});
      break;
    }
  }
}

ExtrudeCmd emit_extrude(Rng& rng, bool first, Vec3* anchor) {
  ExtrudeCmd e;

  if (rng.below(10) < 5) {
    // Canonical axis-aligned planes.
    switch (rng.below(3)) {
      case 0: e.theta = 0; e.phi = 128; e.gamma = 128; break;    // +z
      case 1: e.theta = 128; e.phi = 128; e.gamma = 128; break;  // +x
      default: e.theta = 128; e.phi = 191; e.gamma = 128; break; // +y
    }
  } else {
    e.theta = qu(rng.below(256));
    e.phi = qu(rng.below(256));
    e.gamma = qu(rng.below(256));
  }

  e.scale = quantize(rng.uniform(0.15, 0.35), ParamClass::Scale);
  e.e1 = quantize(rng.uniform(0.08, 0.35), ParamClass::Distance);

  const std::uint64_t type_pick = rng.below(100);
  if (type_pick < 60) {
    e.type = ExtrudeType::OneSided;
    e.e2 = quantize(0.0, ParamClass::Distance);
  } else if (type_pick < 85) {
    e.type = ExtrudeType::Symmetric;
    e.e2 = quantize(0.0, ParamClass::Distance);
  } else {
    e.type = ExtrudeType::TwoSided;
    e.e2 = quantize(rng.uniform(0.05, 0.2), ParamClass::Distance);
  }

  Vec3 origin;
  if (first) {
    e.op = BoolOp::New;
    origin = {rng.uniform(-0.25, 0.0), rng.uniform(-0.25, 0.0), rng.uniform(-0.25, 0.0)};
  } else {
    const std::uint64_t op_pick = rng.below(100);
    if (op_pick < 25) {
      e.op = BoolOp::New;
    } else if (op_pick < 70) {
      e.op = BoolOp::Join;
    } else if (op_pick < 95) {
      e.op = BoolOp::Cut;
    } else {
      e.op = BoolOp::Intersect;
    }
    if (e.op == BoolOp::New) {
      origin = {rng.uniform(-0.25, 0.0), rng.uniform(-0.25, 0.0), rng.uniform(-0.25, 0.0)};
    } else {
      // Anchor near the previous solid so boolean ops have something to act on.
      const double jitter = e.op == BoolOp::Cut ? 0.08 : 0.15;
      origin = *anchor + Vec3{rng.uniform(-jitter, jitter), rng.uniform(-jitter, jitter),
                              rng.uniform(-jitter, jitter)};
      origin.x = std::clamp(origin.x, -0.25, 0.25);
      origin.y = std::clamp(origin.y, -0.25, 0.25);
      origin.z = std::clamp(origin.z, -0.25, 0.25);
    }
    if (e.op == BoolOp::Cut || e.op == BoolOp::Intersect) {
      e.scale = quantize(rng.uniform(0.1, 0.25), ParamClass::Scale);
    }
  }
  e.px = quantize(origin.x, ParamClass::ModelCoord);
  e.py = quantize(origin.y, ParamClass::ModelCoord);
  e.pz = quantize(origin.z, ParamClass::ModelCoord);

  if (e.op == BoolOp::New || e.op == BoolOp::Join) *anchor = origin;
  return e;
}

CadSequence generate_candidate(Rng& rng, int max_ext, const std::string& id) {
  CadSequence seq;
  seq.id = id;
  const int n_ext = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_ext)));
  int budget = kMaxCommands - 1; // leave room for EOS

  Vec3 anchor;
  for (int e = 0; e < n_ext; ++e) {
    LoopShape shape;
    switch (rng.below(4)) {
      case 0: shape = LoopShape::Rect; break;
      case 1: shape = LoopShape::Circle; break;
      case 2: shape = LoopShape::Triangle; break;
      default: shape = LoopShape::Stadium; break;
    }
    bool with_hole = (shape == LoopShape::Rect) && rng.below(5) == 0;
    int cost = loop_cost(shape) + (with_hole ? 2 : 0) + 1; // + Extrude
    if (cost > budget) {
      shape = LoopShape::Circle;
      with_hole = false;
      cost = loop_cost(shape) + 1;
      if (cost > budget) break;
    }
    emit_loop(rng, shape, with_hole, seq.commands);
    seq.commands.emplace_back(emit_extrude(rng, e == 0, &anchor));
    budget -= cost;
  }
  seq.commands.emplace_back(EosCmd{});
  return seq;
}

// A valid model can still expose no surface (an Intersect that misses, say);
// a short rejection-sampling probe detects that cheaply.
bool has_exposed_surface(const CsgModel& model, std::uint64_t seed) {
  try {
    sample_surface(model, 1, seed, nullptr, kSurfaceProbeBudget);
    return true;
  } catch (const EmptySurface&) {
    return false;
  }
}

} // namespace

CadSequence gen_random_sequence(std::uint64_t seed, int max_ext, const std::string& id) {
  if (max_ext < 1 || max_ext > kMaxExtrusions) {
    throw RangeError("max_ext must be in [1, " + std::to_string(kMaxExtrusions) + "]");
  }
  for (int attempt = 0; attempt < kGenAttempts; ++attempt) {
    Rng rng(mix_seed(seed, 0x6E60u + static_cast<std::uint64_t>(attempt)));
    CadSequence seq = generate_candidate(rng, max_ext, id);
    if (grammar_violation(seq)) continue;
    if (!validate_model(seq).valid()) continue;
    try {
      const CsgModel model = build_model(seq);
      if (!has_exposed_surface(model, mix_seed(seed, 0x50BEu))) continue;
    } catch (const Error&) {
      continue;
    }
    return seq;
  }
  throw GenerationError("no valid sequence after " + std::to_string(kGenAttempts) +
                        " attempts (seed " + std::to_string(seed) + ")");
}

CadSequence gen_random_sequence(std::uint64_t seed, int max_ext) {
  char id[32];
  std::snprintf(id, sizeof(id), "gen_%06llu", static_cast<unsigned long long>(seed));
  return gen_random_sequence(seed, max_ext, id);
}

} // namespace excad
