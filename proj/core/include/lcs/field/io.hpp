#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "lcs/field/grid.hpp"

namespace lcs {

// Binary field files: "LCS2", u32 version (=1), u8 kind, u32 nx, u32 ny,
// f64 x0, x1, y0, y1, time, then the payload. All integers and doubles are
// little-endian; arrays are row-major with y fastest.
//
//   kind 0  scalar:  nx*ny values
//   kind 1  vector:  u (nx*ny), then v (nx*ny)
//   kind 2  flow map, kind 3  Cauchy-Green:  u32 channel count, per channel
//           a u32 name length and the name bytes, f64 window_a, f64 window_b,
//           then nx*ny values per channel in channel order.
enum class FieldKind : std::uint8_t { scalar = 0, vector = 1, flow_map = 2, cauchy_green = 3 };

inline constexpr std::uint32_t kFieldFormatVersion = 1;

struct ChannelField {
  FieldKind kind = FieldKind::flow_map;
  Grid2D grid;
  double time = 0.0;
  double window_a = 0.0;
  double window_b = 0.0;
  std::vector<std::string> names;
  std::vector<std::vector<double>> channels;

  const std::vector<double>& channel(const std::string& name) const;
};

void write_field(const ScalarField2D& f, const std::filesystem::path& path);
void write_field(const VectorField2D& f, const std::filesystem::path& path);
void write_channels(const ChannelField& f, const std::filesystem::path& path);

std::variant<ScalarField2D, VectorField2D> read_field(const std::filesystem::path& path);
ScalarField2D read_scalar_field(const std::filesystem::path& path);
VectorField2D read_vector_field(const std::filesystem::path& path);
ChannelField read_channels(const std::filesystem::path& path);

// Series on disk: one vector-field file per frame and a plain-text manifest
// with one "<relative path> <time>" pair per line.
void write_series(const VelocitySeries& series, const std::filesystem::path& dir,
                  const std::string& manifest_name = "manifest.txt", const std::string& prefix = "u");
VelocitySeries read_series(const std::filesystem::path& manifest);

struct ManifestEntry {
  std::filesystem::path path;
  double time = 0.0;
};
std::vector<ManifestEntry> read_manifest(const std::filesystem::path& manifest);
void write_manifest(const std::vector<ManifestEntry>& entries, const std::filesystem::path& manifest);

// Shortest decimal text that round-trips a double.
std::string format_double(double x);

}  // namespace lcs
