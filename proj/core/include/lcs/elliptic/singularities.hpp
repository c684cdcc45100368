#pragma once

#include <span>
#include <vector>

#include "lcs/elliptic/eta.hpp"

namespace lcs {

struct CGSingularity {
  Vec2 position;
  std::size_t cell_i = 0, cell_j = 0;
  double quality = 0.0;  // (l2 - l1) / l2 of the interpolated tensor at position
};

struct SingularitySet {
  std::vector<CGSingularity> points;
  bool degenerate_field = false;  // most nodes are isotropic; no list is meaningful
};

// Cells where both C11 - C22 and C12 change sign are searched for common
// zeros of their bilinear interpolants.
SingularitySet find_singularities(const CauchyGreenField& cg);

// Winding number of (C11 - C22, 2 C12) along a closed polyline, i.e. twice
// the summed line-field index of the enclosed singularities.
int tensor_winding(std::span<const Vec2> curve, const CGInterpolator& cg);

// Singularities enclosed by a closed curve. Detected points closer than 1.5
// cells form a cluster; a cluster counts max(points, |winding|) with the
// winding taken on a small loop around it, so an isotropic point of index 1
// counts twice.
struct EnclosedSingularities {
  std::vector<Vec2> points;  // periodic images inside the curve
  int count = 0;
};
EnclosedSingularities enclosed_singularities(std::span<const Vec2> curve, const SingularitySet& sing,
                                             const CGInterpolator& cg);

}  // namespace lcs
