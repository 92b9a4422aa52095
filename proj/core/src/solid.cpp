#include "excad/solid.hpp"

namespace excad {

void extrusion_interval(ExtrudeType type, double e1, double e2, double& h_lo, double& h_hi) {
  switch (type) {
    case ExtrudeType::OneSided:
      h_lo = 0.0;
      h_hi = e1;
      break;
    case ExtrudeType::Symmetric:
      h_lo = -0.5 * e1;
      h_hi = 0.5 * e1;
      break;
    case ExtrudeType::TwoSided:
      h_lo = -e2;
      h_hi = e1;
      break;
  }
}

ExtrusionSolid build_solid(std::span<const Command> sketch_commands, const ExtrudeCmd& ext) {
  ExtrusionSolid solid;
  solid.profile = build_profile(sketch_commands);
  solid.tess = tessellate(solid.profile);
  solid.plane = build_plane(ext);
  solid.e1 = dequantize(ext.e1, ParamClass::Distance);
  solid.e2 = dequantize(ext.e2, ParamClass::Distance);
  solid.op = ext.op;
  solid.ext_type = ext.type;
  extrusion_interval(ext.type, solid.e1, solid.e2, solid.h_lo, solid.h_hi);
  return solid;
}

CsgModel build_model(const CadSequence& seq) {
  CsgModel model;
  model.id = seq.id;
  std::size_t block_start = 0;
  for (std::size_t i = 0; i < seq.commands.size(); ++i) {
    const CommandKind kind = kind_of(seq.commands[i]);
    if (kind == CommandKind::Extrude) {
      const auto& ext = std::get<ExtrudeCmd>(seq.commands[i]);
      const std::span<const Command> sketch{seq.commands.data() + block_start,
                                            i - block_start};
      model.solids.push_back(build_solid(sketch, ext));
      block_start = i + 1;
    } else if (kind == CommandKind::Eos) {
      break;
    }
  }
  return model;
}

bool occupancy_prefix(const CsgModel& model, Vec3 p, int limit) {
  const std::size_t n = limit < 0 ? model.solids.size()
                                  : std::min<std::size_t>(limit, model.solids.size());
  bool occ = false;
  for (std::size_t i = 0; i < n; ++i) {
    const ExtrusionSolid& s = model.solids[i];
    switch (s.op) {
      case BoolOp::New:
      case BoolOp::Join:
        if (!occ) occ = s.inside(p);
        break;
      case BoolOp::Cut:
        if (occ && s.inside(p)) occ = false;
        break;
      case BoolOp::Intersect:
        if (occ) occ = s.inside(p);
        break;
    }
  }
  return occ;
}

bool boundary_test(const CsgModel& model, Vec3 p, Vec3 n, double eps) {
  return occupancy(model, p + eps * n) != occupancy(model, p - eps * n);
}

} // namespace excad
