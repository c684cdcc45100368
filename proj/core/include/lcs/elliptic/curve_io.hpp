#pragma once

#include <filesystem>
#include <vector>

#include "lcs/elliptic/closed_orbits.hpp"

namespace lcs {

// CSV with header "s,x,y".
void write_polyline_csv(std::span<const Vec2> line, const std::filesystem::path& path);
Polyline read_polyline_csv(const std::filesystem::path& path);

// One CSV per curve plus manifest.json describing every curve and nest.
void write_boundary_set(const VortexBoundarySet& set, const std::filesystem::path& dir);
VortexBoundarySet read_boundary_set(const std::filesystem::path& dir);

}  // namespace lcs
