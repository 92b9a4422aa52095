#pragma once

#include <filesystem>
#include <vector>

#include "excad/solid.hpp"

namespace excad {

struct Triangle {
  Vec3 a, b, c;

  Vec3 normal() const { return normalized(cross(b - a, c - a)); }
  double area() const { return 0.5 * norm(cross(b - a, c - a)); }
};

/// Triangle soup; good enough for sampling and visual inspection.
struct TriangleMesh {
  std::vector<Triangle> triangles;

  double total_area() const;
};

/// World-space boundary mesh of one extrusion prism: side walls from the
/// tessellated loop edges, caps from the even-odd triangulation of the
/// profile interior at both heights.
TriangleMesh solid_mesh(const ExtrusionSolid& solid);

void write_obj(const std::filesystem::path& path, const TriangleMesh& mesh);
/// Binary little-endian PLY with vertex and face elements.
void write_mesh_ply(const std::filesystem::path& path, const TriangleMesh& mesh);

} // namespace excad
