#pragma once

#include <array>
#include <vector>

#include "lcs/field/vec2.hpp"

namespace lcs {

// Corner samples of a scalar on the unit cell, indexed [s][t].
using CellValues = std::array<std::array<double, 2>, 2>;

// Common zeros (s, t) in [0,1]^2 of the bilinear interpolants of f and g.
// Degenerate (coincident) zero sets yield no roots.
std::vector<Vec2> bilinear_common_roots(const CellValues& f, const CellValues& g);

// True when the corner samples contain both a strictly positive and a
// strictly negative value.
bool changes_sign(const CellValues& f);

inline double bilinear(const CellValues& f, double s, double t) {
  return f[0][0] * (1 - s) * (1 - t) + f[1][0] * s * (1 - t) + f[0][1] * (1 - s) * t + f[1][1] * s * t;
}

}  // namespace lcs
