#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "lcs/field/spline.hpp"

namespace lcs {

// Velocity u(x, t) on [t_begin, t_end]. Integration never steps across a
// breakpoint (t_origin + k*breakpoint_dt), where the time interpolant has a
// kink. `domain` is used only to wrap final positions.
struct VelocitySource {
  std::function<Vec2(Vec2, double)> u;
  double t_begin = 0.0;
  double t_end = 0.0;
  double t_origin = 0.0;
  double breakpoint_dt = 0.0;
  std::optional<Grid2D> domain;

  static VelocitySource from_series(std::shared_ptr<const VelocityInterpolator> interp);
  static VelocitySource analytic(std::function<Vec2(Vec2, double)> u, double t_begin, double t_end);
};

struct AdvectOptions {
  double tol = 1e-8;
  double dt_initial = 0.0;  // 0 picks a quarter of the frame step (or of the window)
  double dt_min = 1e-10;
};

// Unwrapped end position of the trajectory through x0 at t0. t1 < t0
// integrates backward. Step-doubling RK4 with local extrapolation; the
// max-norm error estimate is compared to tol. Throws OutOfRangeError outside
// the source span and StiffnessError on step underflow.
Vec2 advect_unwrapped(const VelocitySource& src, Vec2 x0, double t0, double t1, const AdvectOptions& opt = {});

// Same, wrapped into the domain when the source has one.
Vec2 advect_particle(const VelocitySource& src, Vec2 x0, double t0, double t1, const AdvectOptions& opt = {});

// Trajectory sampled at the requested times (which must be monotone from t0).
std::vector<Vec2> advect_trajectory(const VelocitySource& src, Vec2 x0, double t0, const std::vector<double>& times,
                                    const AdvectOptions& opt = {});

}  // namespace lcs
