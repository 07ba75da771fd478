#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stable_meb/geometry.hpp"
#include "stable_meb/stability.hpp"

namespace smeb {

/// Binary layout: "MEBD", u16 LE version (= 1), u64 LE n, u64 LE d, then n*d
/// IEEE-754 binary64 values, little-endian, row-major.
inline constexpr std::uint16_t kDatasetVersion = 1;
inline constexpr std::size_t kDatasetHeaderBytes = 4 + 2 + 8 + 8;

std::vector<unsigned char> encode_dataset(const PointSet& points);
PointSet decode_dataset(const std::vector<unsigned char>& bytes);

void write_dataset(const std::filesystem::path& path, const PointSet& points);
PointSet read_dataset(const std::filesystem::path& path);

/// One point per line, comma-separated reals. Blank lines are skipped.
PointSet read_csv(const std::filesystem::path& path);

/// Binary if the file starts with the magic bytes, CSV otherwise.
PointSet load_points(const std::filesystem::path& path);

/// JSON document stored next to a dataset: generator spec, ground-truth
/// inliers and cached reference radii keyed by reference mode.
struct Sidecar {
  std::optional<InstanceSpec> spec;
  std::optional<std::vector<Index>> inliers;
  std::map<std::string, double> reference_radius;
};

std::filesystem::path sidecar_path(const std::filesystem::path& dataset);
/// Returns an empty sidecar when the file does not exist.
Sidecar read_sidecar(const std::filesystem::path& path);
void write_sidecar(const std::filesystem::path& path, const Sidecar& sidecar);

}  // namespace smeb
