#pragma once

#include <cstdint>
#include <memory>
#include <span>

#include "lcs/field/polyline.hpp"
#include "lcs/field/spline.hpp"
#include "lcs/flowmap/cauchy_green.hpp"

namespace lcs {

enum class CGInterpolation : std::uint8_t { bilinear, spline };

// Periodic interpolation of the Cauchy-Green tensor entries; eigen-data is
// recomputed from the interpolated tensor.
class CGInterpolator {
 public:
  explicit CGInterpolator(const CauchyGreenField& cg, CGInterpolation mode = CGInterpolation::bilinear);

  const Grid2D& grid() const { return grid_; }
  double a() const { return a_; }
  double b() const { return b_; }
  CGInterpolation mode() const { return mode_; }
  SymTensor tensor(Vec2 x) const;
  CGEigen eigen(Vec2 x) const { return eigen_symmetric(tensor(x)); }

 private:
  Grid2D grid_;
  double a_ = 0.0, b_ = 0.0;
  CGInterpolation mode_;
  std::vector<SymTensor> nodes_;
  PeriodicSplineSet2D spline_;  // c11, c12, c22
};

enum class Branch : std::int8_t { minus = -1, plus = 1 };

inline const char* to_string(Branch b) { return b == Branch::plus ? "+" : "-"; }

// Unit line element sqrt((l2 - L)/(l2 - l1)) xi1 +- sqrt((L - l1)/(l2 - l1)) xi2
// with L = lambda^2. Throws AdmissibilityError when L lies outside [l1, l2]
// and SingularityError at a degenerate tensor.
Vec2 eta_from_eigen(const CGEigen& e, double lambda, Branch branch);

class EtaField {
 public:
  EtaField(std::shared_ptr<const CGInterpolator> cg, double lambda, Branch branch);

  const CGInterpolator& cg() const { return *cg_; }
  double lambda() const { return lambda_; }
  Branch branch() const { return branch_; }
  bool admissible(Vec2 x) const;
  Vec2 operator()(Vec2 x) const { return eta_from_eigen(cg_->eigen(x), lambda_, branch_); }

 private:
  std::shared_ptr<const CGInterpolator> cg_;
  double lambda_;
  Branch branch_;
};

inline Vec2 eta_at(const EtaField& eta, Vec2 x) { return eta(x); }

// sqrt(<r', C r'> / <r', r'>).
double tangential_stretch(const CGInterpolator& cg, Vec2 x, Vec2 direction);

// Arclength-weighted trapezoid average of the tangential stretch around a
// closed polyline (duplicate closing vertex optional).
double average_tangential_strain(std::span<const Vec2> curve, const CGInterpolator& cg);

}  // namespace lcs
