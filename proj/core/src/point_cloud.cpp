#include "excad/point_cloud.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "excad/errors.hpp"

namespace excad {

void write_ply(const std::filesystem::path& path, const PointCloud& cloud) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << "ply\nformat binary_little_endian 1.0\n"
      << "element vertex " << cloud.size() << "\n"
      << "property float x\nproperty float y\nproperty float z\n"
      << "end_header\n";
  for (const Vec3 p : cloud.points) {
    const float xyz[3] = {static_cast<float>(p.x), static_cast<float>(p.y),
                          static_cast<float>(p.z)};
    out.write(reinterpret_cast<const char*>(xyz), sizeof(xyz));
  }
}

PointCloud read_ply(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line;
  std::getline(in, line);
  if (line != "ply") throw IoError(path.string() + ": not a PLY file");
  std::size_t n_vertex = 0;
  bool binary_le = false;
  int n_props = 0;
  bool in_vertex_element = false;
  while (std::getline(in, line)) {
    if (line == "end_header") break;
    std::istringstream ls(line);
    std::string word;
    ls >> word;
    if (word == "format") {
      std::string fmt;
      ls >> fmt;
      binary_le = (fmt == "binary_little_endian");
    } else if (word == "element") {
      std::string name;
      ls >> name >> n_vertex;
      in_vertex_element = (name == "vertex");
      if (!in_vertex_element) throw IoError(path.string() + ": unsupported element " + name);
    } else if (word == "property" && in_vertex_element) {
      std::string type;
      ls >> type;
      if (type != "float") throw IoError(path.string() + ": only float properties supported");
      ++n_props;
    }
  }
  if (!binary_le) throw IoError(path.string() + ": expected binary_little_endian format");
  if (n_props < 3) throw IoError(path.string() + ": fewer than 3 vertex properties");

  PointCloud cloud;
  cloud.points.reserve(n_vertex);
  std::vector<float> row(static_cast<std::size_t>(n_props));
  for (std::size_t i = 0; i < n_vertex; ++i) {
    in.read(reinterpret_cast<char*>(row.data()),
            static_cast<std::streamsize>(sizeof(float) * row.size()));
    if (!in) throw IoError(path.string() + ": truncated vertex data");
    cloud.points.push_back({row[0], row[1], row[2]});
  }
  return cloud;
}

void write_xyz(const std::filesystem::path& path, const PointCloud& cloud) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  char line[128];
  for (const Vec3 p : cloud.points) {
    std::snprintf(line, sizeof(line), "%.17g %.17g %.17g\n", p.x, p.y, p.z);
    out << line;
  }
}

PointCloud read_xyz(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  PointCloud cloud;
  double x, y, z;
  while (in >> x >> y >> z) cloud.points.push_back({x, y, z});
  return cloud;
}

void write_cloud(const std::filesystem::path& path, const PointCloud& cloud) {
  if (path.extension() == ".xyz") {
    write_xyz(path, cloud);
  } else {
    write_ply(path, cloud);
  }
}

PointCloud read_cloud(const std::filesystem::path& path) {
  return path.extension() == ".xyz" ? read_xyz(path) : read_ply(path);
}

} // namespace excad
