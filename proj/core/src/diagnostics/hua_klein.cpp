#include "lcs/diagnostics/hua_klein.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lcs/error.hpp"
#include "lcs/field/spectral.hpp"

namespace lcs {

HKPoint hua_klein_point(const VelocityGradient& g, const VelocityGradient& rate) {
  HKPoint p;
  const double q = okubo_weiss_q(g);
  const double w = vorticity(rate);
  p.radicand = strain_norm2(rate) - w * w;
  p.clamped = p.radicand < 0.0;
  const double root = std::sqrt(std::max(0.0, p.radicand));
  p.lambda_plus = 0.25 * q + 0.5 * root;
  p.lambda_minus = 0.25 * q - 0.5 * root;
  return p;
}

HKField hua_klein(const VelocitySeries& series, double t) {
  const double dt = series.dt();
  if (series.size() < 3 || !series.contains(t - dt) || !series.contains(t + dt))
    throw OutOfRangeError("hua_klein: t=" + std::to_string(t) + " needs a frame step on either side inside the series");
  const VectorField2D u = interpolate_frame(series, t);
  const auto g0 = velocity_gradient(u);
  const auto gm = velocity_gradient(interpolate_frame(series, t - dt));
  const auto gp = velocity_gradient(interpolate_frame(series, t + dt));
  const Grid2D& grid = u.grid;
  const std::size_t n = grid.size();

  std::vector<double> comp(n);
  auto advect = [&](double VelocityGradient::*m) {
    for (std::size_t k = 0; k < n; ++k) comp[k] = g0.g[k].*m;
    const VectorField2D grad = spectral_gradient(ScalarField2D(grid, comp, t));
    std::vector<double> out(n);
    for (std::size_t k = 0; k < n; ++k)
      out[k] = (gp.g[k].*m - gm.g[k].*m) / (2.0 * dt) + u.u[k] * grad.u[k] + u.v[k] * grad.v[k];
    return out;
  };
  const auto rux = advect(&VelocityGradient::ux);
  const auto ruy = advect(&VelocityGradient::uy);
  const auto rvx = advect(&VelocityGradient::vx);
  const auto rvy = advect(&VelocityGradient::vy);

  HKField hk;
  hk.lambda_plus = ScalarField2D(grid, t);
  hk.lambda_minus = ScalarField2D(grid, t);
  hk.radicand = ScalarField2D(grid, t);
  hk.clamp_mask.assign(n, 0);
  hk.rate_scheme = "material derivative: centred difference over +-1 frame step, spectral advection";
  for (std::size_t k = 0; k < n; ++k) {
    const HKPoint p = hua_klein_point(g0.g[k], {rux[k], ruy[k], rvx[k], rvy[k]});
    hk.lambda_plus.values[k] = p.lambda_plus;
    hk.lambda_minus.values[k] = p.lambda_minus;
    hk.radicand.values[k] = p.radicand;
    if (p.clamped) {
      hk.clamp_mask[k] = 1;
      ++hk.clamped;
    }
  }
  return hk;
}

}  // namespace lcs
