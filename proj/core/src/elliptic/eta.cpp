#include "lcs/elliptic/eta.hpp"

#include <algorithm>
#include <cmath>

#include "lcs/error.hpp"

namespace lcs {

namespace {

std::vector<double> channel(const CauchyGreenField& cg, double SymTensor::*member) {
  std::vector<double> out(cg.tensor.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = cg.tensor[k].*member;
  return out;
}

}  // namespace

CGInterpolator::CGInterpolator(const CauchyGreenField& cg, CGInterpolation mode)
    : grid_(cg.grid), a_(cg.a), b_(cg.b), mode_(mode), nodes_(cg.tensor) {
  if (nodes_.size() != grid_.size()) throw ConfigError("CGInterpolator: tensor field size mismatch");
  if (mode_ == CGInterpolation::spline) {
    spline_ = PeriodicSplineSet2D(
        grid_, {channel(cg, &SymTensor::c11), channel(cg, &SymTensor::c12), channel(cg, &SymTensor::c22)});
  }
}

SymTensor CGInterpolator::tensor(Vec2 x) const {
  if (mode_ == CGInterpolation::spline) {
    double c[3];
    spline_.eval(x, c);
    return {c[0], c[1], c[2]};
  }
  const Vec2 p = grid_.wrap(x);
  const double ux = (p.x - grid_.x0()) / grid_.dx();
  const double uy = (p.y - grid_.y0()) / grid_.dy();
  const double fx = std::floor(ux), fy = std::floor(uy);
  const double tx = ux - fx, ty = uy - fy;
  const std::size_t nx = grid_.nx(), ny = grid_.ny();
  const std::size_t i0 = static_cast<std::size_t>(fx) % nx, j0 = static_cast<std::size_t>(fy) % ny;
  const std::size_t i1 = (i0 + 1) % nx, j1 = (j0 + 1) % ny;
  const SymTensor& a = nodes_[grid_.index(i0, j0)];
  const SymTensor& b = nodes_[grid_.index(i1, j0)];
  const SymTensor& c = nodes_[grid_.index(i0, j1)];
  const SymTensor& d = nodes_[grid_.index(i1, j1)];
  const double w00 = (1 - tx) * (1 - ty), w10 = tx * (1 - ty), w01 = (1 - tx) * ty, w11 = tx * ty;
  return {w00 * a.c11 + w10 * b.c11 + w01 * c.c11 + w11 * d.c11, w00 * a.c12 + w10 * b.c12 + w01 * c.c12 + w11 * d.c12,
          w00 * a.c22 + w10 * b.c22 + w01 * c.c22 + w11 * d.c22};
}

Vec2 eta_from_eigen(const CGEigen& e, double lambda, Branch branch) {
  if (e.degenerate || e.lambda2 - e.lambda1 < kDegenerateRatio * e.lambda2)
    throw SingularityError("eta: Cauchy-Green tensor is degenerate here");
  const double L = lambda * lambda;
  if (L < e.lambda1 || L > e.lambda2) throw AdmissibilityError("eta: lambda^2 outside [lambda1, lambda2]");
  const double gap = e.lambda2 - e.lambda1;
  const double alpha = std::sqrt(std::max(0.0, (e.lambda2 - L) / gap));
  const double beta = std::sqrt(std::max(0.0, (L - e.lambda1) / gap));
  const double sign = branch == Branch::plus ? 1.0 : -1.0;
  const Vec2 v = alpha * e.xi1 + (sign * beta) * e.xi2;
  return v / norm(v);
}

EtaField::EtaField(std::shared_ptr<const CGInterpolator> cg, double lambda, Branch branch)
    : cg_(std::move(cg)), lambda_(lambda), branch_(branch) {
  if (!cg_) throw ConfigError("EtaField: null Cauchy-Green interpolator");
  if (!(lambda > 0.0)) throw ConfigError("EtaField: lambda must be positive");
}

bool EtaField::admissible(Vec2 x) const {
  const CGEigen e = cg_->eigen(x);
  const double L = lambda_ * lambda_;
  return e.lambda1 <= L && L <= e.lambda2;
}

double tangential_stretch(const CGInterpolator& cg, Vec2 x, Vec2 direction) {
  const double n2 = dot(direction, direction);
  if (!(n2 > 0.0)) throw ConfigError("tangential_stretch: zero direction");
  return std::sqrt(dot(direction, cg.tensor(x) * direction) / n2);
}

double average_tangential_strain(std::span<const Vec2> curve, const CGInterpolator& cg) {
  const Polyline ring = open_ring(Polyline(curve.begin(), curve.end()));
  const std::size_t n = ring.size();
  if (n < 3) throw ConfigError("average_tangential_strain: curve needs at least 3 vertices");
  double sum = 0.0, total = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const Vec2& prev = ring[(k + n - 1) % n];
    const Vec2& next = ring[(k + 1) % n];
    const double w = 0.5 * (norm(ring[k] - prev) + norm(next - ring[k]));
    const Vec2 t = next - prev;
    if (w == 0.0 || dot(t, t) == 0.0) continue;
    sum += w * tangential_stretch(cg, ring[k], t);
    total += w;
  }
  return total > 0.0 ? sum / total : 0.0;
}

}  // namespace lcs
