#include "lcs/flowmap/flowmap.hpp"

#include <exception>

#include "lcs/error.hpp"

namespace lcs {

Mat2 jacobian_aux_grid(const VelocitySource& src, Vec2 x0, double a, double b, double delta, const AdvectOptions& opt) {
  if (!(delta > 0.0)) throw ConfigError("jacobian_aux_grid: delta must be > 0");
  const Vec2 xp = advect_unwrapped(src, x0 + Vec2{delta, 0.0}, a, b, opt);
  const Vec2 xm = advect_unwrapped(src, x0 - Vec2{delta, 0.0}, a, b, opt);
  const Vec2 yp = advect_unwrapped(src, x0 + Vec2{0.0, delta}, a, b, opt);
  const Vec2 ym = advect_unwrapped(src, x0 - Vec2{0.0, delta}, a, b, opt);
  const double s = 0.5 / delta;
  return {(xp.x - xm.x) * s, (yp.x - ym.x) * s, (xp.y - xm.y) * s, (yp.y - ym.y) * s};
}

FlowMapGrid compute_flow_map(const VelocitySource& src, const Grid2D& grid, double a, double b,
                             const FlowMapOptions& opt) {
  FlowMapGrid fm;
  fm.grid = grid;
  fm.a = a;
  fm.b = b;
  fm.delta = opt.delta;
  fm.position.resize(grid.size());
  if (opt.jacobian) fm.jacobian.resize(grid.size());
  const auto n = static_cast<std::ptrdiff_t>(grid.size());
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 64)
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    try {
      const auto idx = static_cast<std::size_t>(k);
      const Vec2 x0 = grid.node(idx / grid.ny(), idx % grid.ny());
      fm.position[idx] = advect_unwrapped(src, x0, a, b, opt.advect);
      if (opt.jacobian) fm.jacobian[idx] = jacobian_aux_grid(src, x0, a, b, opt.delta, opt.advect);
    } catch (...) {
#pragma omp critical(lcs_flowmap_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return fm;
}

}  // namespace lcs
