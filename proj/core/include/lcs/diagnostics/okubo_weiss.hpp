#pragma once

#include <vector>

#include "lcs/diagnostics/contours.hpp"
#include "lcs/field/grid.hpp"

namespace lcs {

// Entries of grad u: ux = du/dx, uy = du/dy, vx = dv/dx, vy = dv/dy.
struct VelocityGradient {
  double ux = 0.0, uy = 0.0, vx = 0.0, vy = 0.0;
};

// |S|^2 = (ux - vy)^2 + (vx + uy)^2.
inline double strain_norm2(const VelocityGradient& g) {
  const double n = g.ux - g.vy, s = g.vx + g.uy;
  return n * n + s * s;
}
inline double vorticity(const VelocityGradient& g) { return g.vx - g.uy; }
// Q = |S|^2 - omega^2.
inline double okubo_weiss_q(const VelocityGradient& g) {
  const double w = vorticity(g);
  return strain_norm2(g) - w * w;
}

struct VelocityGradientField {
  Grid2D grid;
  double time = 0.0;
  std::vector<VelocityGradient> g;
};

VelocityGradientField velocity_gradient(const VectorField2D& u);

struct OWField {
  ScalarField2D q;
  double sigma = 0.0;  // spatial standard deviation of Q
};

OWField okubo_weiss(const VectorField2D& u);

struct ThresholdContours {
  double level = 0.0;
  bool degenerate_sigma = false;
  std::vector<Contour> contours;  // closed only
};

// Closed contours of Q at -alpha sigma_Q.
ThresholdContours ow_threshold_contours(const OWField& ow, double alpha);

}  // namespace lcs
