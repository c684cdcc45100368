#include "lcs/diagnostics/okubo_weiss.hpp"

#include <cmath>

#include "lcs/field/spectral.hpp"

namespace lcs {

VelocityGradientField velocity_gradient(const VectorField2D& u) {
  const VectorField2D gu = spectral_gradient(ScalarField2D(u.grid, u.u, u.time));
  const VectorField2D gv = spectral_gradient(ScalarField2D(u.grid, u.v, u.time));
  VelocityGradientField out{u.grid, u.time, std::vector<VelocityGradient>(u.grid.size())};
  for (std::size_t k = 0; k < out.g.size(); ++k) out.g[k] = {gu.u[k], gu.v[k], gv.u[k], gv.v[k]};
  return out;
}

OWField okubo_weiss(const VectorField2D& u) {
  const auto grad = velocity_gradient(u);
  OWField ow{ScalarField2D(u.grid, u.time), 0.0};
  double mean = 0.0;
  for (std::size_t k = 0; k < grad.g.size(); ++k) {
    ow.q.values[k] = okubo_weiss_q(grad.g[k]);
    mean += ow.q.values[k];
  }
  const auto n = static_cast<double>(grad.g.size());
  mean /= n;
  double var = 0.0;
  for (double q : ow.q.values) var += (q - mean) * (q - mean);
  ow.sigma = std::sqrt(var / n);
  return ow;
}

ThresholdContours ow_threshold_contours(const OWField& ow, double alpha) {
  ThresholdContours out;
  out.level = -alpha * ow.sigma;
  if (!(ow.sigma > 0.0)) {
    out.degenerate_sigma = true;
    return out;
  }
  for (auto& c : extract_contours(ow.q, out.level))
    if (c.closed) out.contours.push_back(std::move(c));
  return out;
}

}  // namespace lcs
