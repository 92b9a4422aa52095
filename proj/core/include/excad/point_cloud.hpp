#pragma once

#include <filesystem>
#include <vector>

#include "excad/vec.hpp"

namespace excad {

/// Points in normalized model coordinates.
struct PointCloud {
  std::vector<Vec3> points;

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
  friend bool operator==(const PointCloud&, const PointCloud&) = default;
};

/// Binary little-endian PLY, vertices only (float32 x, y, z).
void write_ply(const std::filesystem::path& path, const PointCloud& cloud);
PointCloud read_ply(const std::filesystem::path& path);

/// Whitespace-separated text, one "x y z" triple per line.
void write_xyz(const std::filesystem::path& path, const PointCloud& cloud);
PointCloud read_xyz(const std::filesystem::path& path);

/// Dispatch on extension: ".ply" or ".xyz".
void write_cloud(const std::filesystem::path& path, const PointCloud& cloud);
PointCloud read_cloud(const std::filesystem::path& path);

} // namespace excad
