#pragma once

#include <memory>
#include <span>
#include <vector>

#include "lcs/field/grid.hpp"

namespace lcs {

// Tensor-product periodic cubic spline (C2) through gridded samples. The
// B-spline coefficients are obtained spectrally; evaluation touches a 4x4
// stencil. Queries landing exactly on a node return the stored sample.
class PeriodicSpline2D {
 public:
  PeriodicSpline2D() = default;
  PeriodicSpline2D(const Grid2D& grid, std::span<const double> values);
  explicit PeriodicSpline2D(const ScalarField2D& f) : PeriodicSpline2D(f.grid, f.values) {}

  const Grid2D& grid() const { return grid_; }
  double operator()(Vec2 p) const;
  // Value together with first derivatives (df/dx, df/dy).
  double eval(Vec2 p, Vec2* gradient) const;

 private:
  Grid2D grid_;
  std::vector<double> samples_;
  std::vector<double> coeff_;  // padded: (nx+3) x (ny+3)
  std::size_t stride_ = 0;
};

// Several periodic splines on one grid, evaluated with a shared stencil.
class PeriodicSplineSet2D {
 public:
  PeriodicSplineSet2D() = default;
  PeriodicSplineSet2D(const Grid2D& grid, const std::vector<std::vector<double>>& components);

  std::size_t components() const { return comps_; }
  // Writes components() values to out.
  void eval(Vec2 p, double* out) const;

 private:
  Grid2D grid_;
  std::size_t comps_ = 0;
  std::vector<double> coeff_;  // padded, interleaved
  std::size_t stride_ = 0;
};

// Space-time interpolation of a VelocitySeries: periodic cubic splines in
// space for each frame, linear in time between frames.
class VelocityInterpolator {
 public:
  explicit VelocityInterpolator(std::shared_ptr<const VelocitySeries> series);
  explicit VelocityInterpolator(VelocitySeries series)
      : VelocityInterpolator(std::make_shared<const VelocitySeries>(std::move(series))) {}

  const VelocitySeries& series() const { return *series_; }
  const Grid2D& grid() const { return series_->grid(); }
  double t_begin() const { return series_->t_begin(); }
  double t_end() const { return series_->t_end(); }
  double frame_dt() const { return series_->dt(); }

  // Throws OutOfRangeError when t lies outside the series span.
  Vec2 operator()(Vec2 x, double t) const;
  // Same as operator() for a single frame.
  Vec2 at_frame(std::size_t k, Vec2 x) const;

 private:
  std::shared_ptr<const VelocitySeries> series_;
  std::vector<std::vector<double>> coeff_;  // per frame, interleaved (u, v), padded
  std::size_t stride_ = 0;
};

inline Vec2 interp_velocity(const VelocityInterpolator& interp, Vec2 x, double t) { return interp(x, t); }

}  // namespace lcs
