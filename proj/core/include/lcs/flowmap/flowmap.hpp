#pragma once

#include <vector>

#include "lcs/field/vec2.hpp"
#include "lcs/flowmap/advect.hpp"

namespace lcs {

struct FlowMapOptions {
  AdvectOptions advect;
  double delta = 1e-3;
  bool jacobian = true;
};

// Flow map F: x_a -> x_b over the nodes of `grid`. Positions are unwrapped.
struct FlowMapGrid {
  Grid2D grid;
  double a = 0.0;
  double b = 0.0;
  double delta = 0.0;
  std::vector<Vec2> position;
  std::vector<Mat2> jacobian;  // empty when not requested

  Vec2 at(std::size_t i, std::size_t j) const { return position[grid.index(i, j)]; }
  Mat2 jac(std::size_t i, std::size_t j) const { return jacobian[grid.index(i, j)]; }
};

// Central differences over the satellites x0 +- delta e1, x0 +- delta e2,
// each advected independently.
Mat2 jacobian_aux_grid(const VelocitySource& src, Vec2 x0, double a, double b, double delta = 1e-3,
                       const AdvectOptions& opt = {});

FlowMapGrid compute_flow_map(const VelocitySource& src, const Grid2D& grid, double a, double b,
                             const FlowMapOptions& opt = {});

}  // namespace lcs
