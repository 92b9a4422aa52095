#include "excad/mesh.hpp"

#include <bit>
#include <cstdio>
#include <fstream>

#include "excad/errors.hpp"

namespace excad {

static_assert(std::endian::native == std::endian::little,
              "binary PLY output assumes a little-endian host");

double TriangleMesh::total_area() const {
  double a = 0.0;
  for (const Triangle& t : triangles) a += t.area();
  return a;
}

TriangleMesh solid_mesh(const ExtrusionSolid& solid) {
  TriangleMesh mesh;
  if (solid.h_lo >= solid.h_hi || solid.plane.scale <= 0.0) return mesh;
  const SketchPlane& pl = solid.plane;

  for (const Polygon& poly : solid.tess.polygons) {
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Vec2 a = poly[i];
      const Vec2 b = poly[(i + 1) % n];
      const Vec3 a0 = pl.to_world(a, solid.h_lo);
      const Vec3 b0 = pl.to_world(b, solid.h_lo);
      const Vec3 b1 = pl.to_world(b, solid.h_hi);
      const Vec3 a1 = pl.to_world(a, solid.h_hi);
      mesh.triangles.push_back({a0, b0, b1});
      mesh.triangles.push_back({a0, b1, a1});
    }
  }
  for (const CapTriangle& t : solid.tess.cap_triangles) {
    mesh.triangles.push_back({pl.to_world(t.a, solid.h_lo), pl.to_world(t.b, solid.h_lo),
                              pl.to_world(t.c, solid.h_lo)});
    mesh.triangles.push_back({pl.to_world(t.a, solid.h_hi), pl.to_world(t.b, solid.h_hi),
                              pl.to_world(t.c, solid.h_hi)});
  }
  return mesh;
}

void write_obj(const std::filesystem::path& path, const TriangleMesh& mesh) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  char line[128];
  for (const Triangle& t : mesh.triangles) {
    for (const Vec3 v : {t.a, t.b, t.c}) {
      std::snprintf(line, sizeof(line), "v %.9g %.9g %.9g\n", v.x, v.y, v.z);
      out << line;
    }
  }
  for (std::size_t i = 0; i < mesh.triangles.size(); ++i) {
    const std::size_t base = 3 * i + 1;
    std::snprintf(line, sizeof(line), "f %zu %zu %zu\n", base, base + 1, base + 2);
    out << line;
  }
}

void write_mesh_ply(const std::filesystem::path& path, const TriangleMesh& mesh) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  const std::size_t nv = mesh.triangles.size() * 3;
  const std::size_t nf = mesh.triangles.size();
  out << "ply\nformat binary_little_endian 1.0\n"
      << "element vertex " << nv << "\n"
      << "property float x\nproperty float y\nproperty float z\n"
      << "element face " << nf << "\n"
      << "property list uchar int vertex_indices\n"
      << "end_header\n";
  for (const Triangle& t : mesh.triangles) {
    for (const Vec3 v : {t.a, t.b, t.c}) {
      const float xyz[3] = {static_cast<float>(v.x), static_cast<float>(v.y),
                            static_cast<float>(v.z)};
      out.write(reinterpret_cast<const char*>(xyz), sizeof(xyz));
    }
  }
  for (std::size_t i = 0; i < nf; ++i) {
    const unsigned char count = 3;
    const std::int32_t idx[3] = {static_cast<std::int32_t>(3 * i),
                                 static_cast<std::int32_t>(3 * i + 1),
                                 static_cast<std::int32_t>(3 * i + 2)};
    out.write(reinterpret_cast<const char*>(&count), 1);
    out.write(reinterpret_cast<const char*>(idx), sizeof(idx));
  }
}

} // namespace excad
