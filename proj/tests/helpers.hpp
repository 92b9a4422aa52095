#pragma once

// Shared fixtures: canonical command sequences, directly-built solids with
// exact frames, and a grammar-level random sequence generator for round-trip
// properties (no geometric validity implied).

#include <vector>

#include "excad/cad_lang.hpp"
#include "excad/plane.hpp"
#include "excad/rng.hpp"
#include "excad/solid.hpp"

namespace testutil {

using namespace excad;

inline void append_square_loop(std::vector<Command>& cmds, quant_t w = 255, quant_t h = 255) {
  cmds.emplace_back(SolCmd{});
  cmds.emplace_back(LineCmd{w, 0});
  cmds.emplace_back(LineCmd{w, h});
  cmds.emplace_back(LineCmd{0, h});
  cmds.emplace_back(LineCmd{0, 0});
}

inline ExtrudeCmd make_extrude(quant_t px, quant_t py, quant_t pz, quant_t scale, quant_t e1,
                               BoolOp op = BoolOp::New,
                               ExtrudeType type = ExtrudeType::OneSided, quant_t e2 = 128,
                               quant_t theta = 0, quant_t phi = 128, quant_t gamma = 128) {
  ExtrudeCmd e;
  e.theta = theta;
  e.phi = phi;
  e.gamma = gamma;
  e.px = px;
  e.py = py;
  e.pz = pz;
  e.scale = scale;
  e.e1 = e1;
  e.e2 = e2;
  e.op = op;
  e.type = type;
  return e;
}

/// Quantized cube: unit-square loop on a +z plane. The frame is rotated by
/// half a bin of roll (no quantized angle hits zero exactly), so assertions
/// should use the built solid's own frame, not world axes.
inline CadSequence cube_seq(quant_t px = 96, quant_t py = 96, quant_t pz = 96,
                            quant_t scale = 128, quant_t e1 = 166,
                            ExtrudeType type = ExtrudeType::OneSided) {
  CadSequence seq;
  seq.id = "cube";
  append_square_loop(seq.commands);
  seq.commands.emplace_back(make_extrude(px, py, pz, scale, e1, BoolOp::New, type));
  seq.commands.emplace_back(EosCmd{});
  return seq;
}

/// Cube with a cylinder joined on top, its base embedded below the cube's
/// top face. The embedding puts the cylinder's seated base disc strictly
/// inside cube material, away from every exposed surface.
///
/// Dequantized geometry (approximate): cube spans [-0.247, 0.055] per axis;
/// cylinder world radius ~0.0753 centered over the cube, base disc at
/// z ~ 0.0353 (0.0196 below the top face), top cap at z ~ 0.1569.
inline CadSequence cube_cylinder_seq() {
  CadSequence seq;
  seq.id = "cube_cylinder";
  append_square_loop(seq.commands);
  // scale 0.30196 (q 77); origin (-0.24706, -0.24706, -0.24706) (q 96);
  // e1 0.30196 (q 166) -> top face z = 0.054902.
  seq.commands.emplace_back(make_extrude(96, 96, 96, 77, 166));
  // Circle center local (0.502, 0.502), r local 0.37647; scale q=51 -> 0.2,
  // so the world radius is 0.075294.
  seq.commands.emplace_back(SolCmd{});
  seq.commands.emplace_back(CircleCmd{128, 128, 96});
  // Origin xy (q 102, 103) centers the circle over the cube; z q=132 ->
  // 0.035294 (0.0196 below the top face); e1 q=143 -> 0.12157 upward.
  seq.commands.emplace_back(
      make_extrude(102, 103, 132, 51, 143, BoolOp::Join, ExtrudeType::OneSided));
  seq.commands.emplace_back(EosCmd{});
  return seq;
}

/// Axis-aligned box solid with an exact canonical frame (built directly,
/// no quantization).
inline ExtrusionSolid make_box_solid(Vec3 origin, double side, double height,
                                     BoolOp op = BoolOp::New) {
  ExtrusionSolid solid;
  Loop loop;
  loop.curves.emplace_back(LineSeg{{0, 0}, {1, 0}});
  loop.curves.emplace_back(LineSeg{{1, 0}, {1, 1}});
  loop.curves.emplace_back(LineSeg{{1, 1}, {0, 1}});
  loop.curves.emplace_back(LineSeg{{0, 1}, {0, 0}});
  solid.profile.loops.push_back(std::move(loop));
  solid.tess = tessellate(solid.profile);
  solid.plane = make_plane(0.0, 0.0, 0.0, origin, side);
  solid.e1 = height;
  solid.e2 = 0.0;
  solid.h_lo = 0.0;
  solid.h_hi = height;
  solid.op = op;
  solid.ext_type = ExtrudeType::OneSided;
  return solid;
}

/// Vertical cylinder solid with an exact frame.
inline ExtrusionSolid make_cylinder_solid(Vec3 base_center, double radius, double height,
                                          BoolOp op = BoolOp::New) {
  ExtrusionSolid solid;
  Loop loop;
  loop.curves.emplace_back(CircleFull{{0.5, 0.5}, 0.5});
  solid.profile.loops.push_back(std::move(loop));
  solid.tess = tessellate(solid.profile);
  const double scale = 2.0 * radius;
  const Vec3 origin = base_center - Vec3{radius, radius, 0.0};
  solid.plane = make_plane(0.0, 0.0, 0.0, origin, scale);
  solid.e1 = height;
  solid.e2 = 0.0;
  solid.h_lo = 0.0;
  solid.h_hi = height;
  solid.op = op;
  solid.ext_type = ExtrudeType::OneSided;
  return solid;
}

/// Random grammar-valid sequence: blocks of 1-2 loops (random polyline loops
/// closing at the origin, circles, occasional arcs), arbitrary parameter
/// values. Geometry may be degenerate; only the grammar is guaranteed.
inline CadSequence random_grammar_sequence(Rng& rng) {
  CadSequence seq;
  seq.id = "rand_" + std::to_string(rng.next() % 1000000);
  const int n_ext = 1 + static_cast<int>(rng.below(kMaxExtrusions));
  int budget = kMaxCommands - 1;

  for (int e = 0; e < n_ext && budget >= 3; ++e) {
    const int loops = budget >= 10 && rng.below(4) == 0 ? 2 : 1;
    for (int l = 0; l < loops; ++l) {
      if (rng.below(3) == 0) {
        // circle loop
        if (budget < 3) break;
        seq.commands.emplace_back(SolCmd{});
        seq.commands.emplace_back(CircleCmd{static_cast<quant_t>(rng.below(256)),
                                            static_cast<quant_t>(rng.below(256)),
                                            static_cast<quant_t>(1 + rng.below(255))});
        budget -= 2;
        continue;
      }
      const int curves = 2 + static_cast<int>(rng.below(4));
      if (budget < curves + 2) break;
      seq.commands.emplace_back(SolCmd{});
      for (int c = 0; c < curves; ++c) {
        const bool last = (c + 1 == curves);
        const quant_t x = last ? 0 : static_cast<quant_t>(rng.below(256));
        const quant_t y = last ? 0 : static_cast<quant_t>(rng.below(256));
        if (rng.below(4) == 0) {
          seq.commands.emplace_back(
              ArcCmd{x, y, static_cast<quant_t>(20 + rng.below(215)),
                     static_cast<quant_t>(rng.below(2))});
        } else {
          seq.commands.emplace_back(LineCmd{x, y});
        }
      }
      budget -= curves + 1;
    }
    seq.commands.emplace_back(
        make_extrude(static_cast<quant_t>(rng.below(256)), static_cast<quant_t>(rng.below(256)),
                     static_cast<quant_t>(rng.below(256)), static_cast<quant_t>(rng.below(256)),
                     static_cast<quant_t>(rng.below(256)),
                     static_cast<BoolOp>(rng.below(4)),
                     static_cast<ExtrudeType>(rng.below(3)),
                     static_cast<quant_t>(rng.below(256)), static_cast<quant_t>(rng.below(256)),
                     static_cast<quant_t>(rng.below(256)),
                     static_cast<quant_t>(rng.below(256))));
    budget -= 1;
  }
  seq.commands.emplace_back(EosCmd{});
  return seq;
}

} // namespace testutil
