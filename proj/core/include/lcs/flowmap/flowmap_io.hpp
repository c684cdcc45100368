#pragma once

#include <filesystem>

#include "lcs/flowmap/cauchy_green.hpp"

namespace lcs {

// Multi-channel field files: kind 2 with channels x, y, j11, j12, j21, j22;
// kind 3 with lambda1, lambda2, xi1x, xi1y, xi2x, xi2y, c11, c12, c22,
// degenerate.
void write_flow_map(const FlowMapGrid& fm, const std::filesystem::path& path);
FlowMapGrid read_flow_map(const std::filesystem::path& path);

void write_cauchy_green(const CauchyGreenField& cg, const std::filesystem::path& path);
CauchyGreenField read_cauchy_green(const std::filesystem::path& path);

}  // namespace lcs
