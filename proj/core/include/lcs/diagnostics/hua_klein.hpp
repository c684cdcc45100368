#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lcs/diagnostics/okubo_weiss.hpp"

namespace lcs {

struct HKPoint {
  double lambda_plus = 0.0, lambda_minus = 0.0;
  double radicand = 0.0;  // |dS/dt|^2 - |dOmega/dt|^2, before clamping
  bool clamped = false;
};

// lambda+- = Q/4 +- sqrt(|dS/dt|^2 - |dOmega/dt|^2)/2 from the velocity
// gradient and its material rate, using the Okubo-Weiss norms.
HKPoint hua_klein_point(const VelocityGradient& g, const VelocityGradient& rate);

struct HKField {
  ScalarField2D lambda_plus, lambda_minus, radicand;
  std::vector<std::uint8_t> clamp_mask;
  std::size_t clamped = 0;
  std::string rate_scheme;
};

// Material rate d/dt + u.grad of grad u: the time derivative is a centred
// difference one frame step either side of t, the advective part spectral.
// Throws OutOfRangeError unless t +- dt lies inside the series.
HKField hua_klein(const VelocitySeries& series, double t);

}  // namespace lcs
