#include "lcs/field/spline.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "lcs/error.hpp"
#include "lcs/field/spectral.hpp"

namespace lcs {

namespace {

// Spectral symbol of the cubic B-spline sampled at integer nodes.
double bspline_symbol(int m, std::size_t n) {
  return (4.0 + 2.0 * std::cos(2.0 * std::numbers::pi * m / static_cast<double>(n))) / 6.0;
}

std::vector<double> bspline_coefficients(const Grid2D& grid, std::span<const double> values) {
  const Fft2d fft(grid);
  const Wavenumbers k(grid);
  auto spec = fft.forward(values);
  for (std::size_t r = 0; r < k.nx(); ++r) {
    const double bx = bspline_symbol(k.mode_x(r), grid.nx());
    for (std::size_t c = 0; c < k.nyh(); ++c)
      spec[r * k.nyh() + c] /= bx * bspline_symbol(k.mode_y(c), grid.ny());
  }
  return fft.inverse(spec);
}

// Copies an nx*ny array into an (nx+3)x(ny+3) array with one leading and
// two trailing periodic ghost layers; `comps` interleaved components.
std::vector<double> pad(const Grid2D& g, std::span<const double> a, std::size_t comps, std::size_t comp,
                        std::vector<double>&& out) {
  const std::size_t nx = g.nx(), ny = g.ny();
  const std::size_t stride = ny + 3;
  if (out.empty()) out.assign((nx + 3) * stride * comps, 0.0);
  for (std::size_t pi = 0; pi < nx + 3; ++pi) {
    const std::size_t i = (pi + nx - 1) % nx;
    for (std::size_t pj = 0; pj < ny + 3; ++pj) {
      const std::size_t j = (pj + ny - 1) % ny;
      out[(pi * stride + pj) * comps + comp] = a[i * ny + j];
    }
  }
  return std::move(out);
}

struct Stencil {
  std::size_t i, j;  // lower-left node (unpadded index)
  double tx, ty;     // fractional offsets in [0, 1)
};

Stencil locate(const Grid2D& g, Vec2 p) {
  p = g.wrap(p);
  const double ux = (p.x - g.x0()) / g.dx();
  const double uy = (p.y - g.y0()) / g.dy();
  double fx = std::floor(ux), fy = std::floor(uy);
  // points produced by Grid2D::node may divide back to just below an integer
  if (const double r = std::round(ux); g.x0() + r * g.dx() == p.x) fx = r;
  if (const double r = std::round(uy); g.y0() + r * g.dy() == p.y) fy = r;
  Stencil s{static_cast<std::size_t>(fx), static_cast<std::size_t>(fy),
            std::max(ux - fx, 0.0), std::max(uy - fy, 0.0)};
  // wrap() can round up onto the period end
  if (s.i >= g.nx()) s.i -= g.nx();
  if (s.j >= g.ny()) s.j -= g.ny();
  return s;
}

inline void weights(double t, double w[4]) {
  const double t2 = t * t, t3 = t2 * t;
  const double omt = 1.0 - t;
  w[0] = omt * omt * omt / 6.0;
  w[1] = (3.0 * t3 - 6.0 * t2 + 4.0) / 6.0;
  w[2] = (-3.0 * t3 + 3.0 * t2 + 3.0 * t + 1.0) / 6.0;
  w[3] = t3 / 6.0;
}

inline void dweights(double t, double w[4]) {
  const double t2 = t * t;
  const double omt = 1.0 - t;
  w[0] = -0.5 * omt * omt;
  w[1] = 1.5 * t2 - 2.0 * t;
  w[2] = -1.5 * t2 + t + 0.5;
  w[3] = 0.5 * t2;
}

}  // namespace

PeriodicSpline2D::PeriodicSpline2D(const Grid2D& grid, std::span<const double> values)
    : grid_(grid), samples_(values.begin(), values.end()), stride_(grid.ny() + 3) {
  if (values.size() != grid.size()) throw ConfigError("PeriodicSpline2D: size mismatch");
  const auto c = bspline_coefficients(grid, values);
  coeff_ = pad(grid, c, 1, 0, {});
}

double PeriodicSpline2D::operator()(Vec2 p) const { return eval(p, nullptr); }

double PeriodicSpline2D::eval(Vec2 p, Vec2* gradient) const {
  const Stencil s = locate(grid_, p);
  if (!gradient && s.tx == 0.0 && s.ty == 0.0) return samples_[grid_.index(s.i, s.j)];
  double wx[4], wy[4];
  weights(s.tx, wx);
  weights(s.ty, wy);
  double value = 0.0;
  double dwx[4], dwy[4];
  double gx = 0.0, gy = 0.0;
  if (gradient) {
    dweights(s.tx, dwx);
    dweights(s.ty, dwy);
  }
  for (int a = 0; a < 4; ++a) {
    const double* row = &coeff_[(s.i + a) * stride_ + s.j];
    double acc = 0.0, dacc = 0.0;
    for (int b = 0; b < 4; ++b) {
      acc += wy[b] * row[b];
      if (gradient) dacc += dwy[b] * row[b];
    }
    value += wx[a] * acc;
    if (gradient) {
      gx += dwx[a] * acc;
      gy += wx[a] * dacc;
    }
  }
  if (gradient) *gradient = {gx / grid_.dx(), gy / grid_.dy()};
  return value;
}

PeriodicSplineSet2D::PeriodicSplineSet2D(const Grid2D& grid, const std::vector<std::vector<double>>& components)
    : grid_(grid), comps_(components.size()), stride_(grid.ny() + 3) {
  for (std::size_t c = 0; c < comps_; ++c) {
    if (components[c].size() != grid.size()) throw ConfigError("PeriodicSplineSet2D: size mismatch");
    coeff_ = pad(grid, bspline_coefficients(grid, components[c]), comps_, c, std::move(coeff_));
  }
}

void PeriodicSplineSet2D::eval(Vec2 p, double* out) const {
  const Stencil s = locate(grid_, p);
  double wx[4], wy[4];
  weights(s.tx, wx);
  weights(s.ty, wy);
  for (std::size_t c = 0; c < comps_; ++c) out[c] = 0.0;
  for (int a = 0; a < 4; ++a) {
    const double* row = &coeff_[((s.i + a) * stride_ + s.j) * comps_];
    for (int b = 0; b < 4; ++b) {
      const double w = wx[a] * wy[b];
      const double* q = row + static_cast<std::size_t>(b) * comps_;
      for (std::size_t c = 0; c < comps_; ++c) out[c] += w * q[c];
    }
  }
}

VelocityInterpolator::VelocityInterpolator(std::shared_ptr<const VelocitySeries> series)
    : series_(std::move(series)) {
  if (!series_ || series_->size() == 0) throw ConfigError("VelocityInterpolator: empty series");
  const Grid2D& g = series_->grid();
  stride_ = g.ny() + 3;
  coeff_.reserve(series_->size());
  for (const auto& frame : series_->frames()) {
    frame.require_finite("VelocityInterpolator");
    std::vector<double> packed = pad(g, bspline_coefficients(g, frame.u), 2, 0, {});
    packed = pad(g, bspline_coefficients(g, frame.v), 2, 1, std::move(packed));
    coeff_.push_back(std::move(packed));
  }
}

Vec2 VelocityInterpolator::at_frame(std::size_t k, Vec2 x) const {
  const Grid2D& g = grid();
  const Stencil s = locate(g, x);
  if (s.tx == 0.0 && s.ty == 0.0) return (*series_)[k].at(s.i, s.j);
  double wx[4], wy[4];
  weights(s.tx, wx);
  weights(s.ty, wy);
  const auto& c = coeff_[k];
  double u = 0.0, v = 0.0;
  for (int a = 0; a < 4; ++a) {
    const double* row = &c[((s.i + a) * stride_ + s.j) * 2];
    double au = 0.0, av = 0.0;
    for (int b = 0; b < 4; ++b) {
      au += wy[b] * row[2 * b];
      av += wy[b] * row[2 * b + 1];
    }
    u += wx[a] * au;
    v += wx[a] * av;
  }
  return {u, v};
}

Vec2 VelocityInterpolator::operator()(Vec2 x, double t) const {
  if (!series_->contains(t))
    throw OutOfRangeError("interp_velocity: t=" + std::to_string(t) + " outside [" +
                          std::to_string(t_begin()) + ", " + std::to_string(t_end()) + "]");
  const std::size_t n = series_->size();
  if (n == 1) return at_frame(0, x);
  const double pos = (t - t_begin()) / frame_dt();
  auto k = static_cast<std::ptrdiff_t>(std::floor(pos));
  k = std::clamp<std::ptrdiff_t>(k, 0, static_cast<std::ptrdiff_t>(n) - 2);
  const auto kk = static_cast<std::size_t>(k);
  // exact frame times avoid the blend so nodes reproduce stored values
  if (t == (*series_)[kk].time) return at_frame(kk, x);
  if (t == (*series_)[kk + 1].time) return at_frame(kk + 1, x);
  const double w = std::clamp(pos - static_cast<double>(k), 0.0, 1.0);
  const Vec2 a = at_frame(kk, x), b = at_frame(kk + 1, x);
  return a * (1.0 - w) + b * w;
}

}  // namespace lcs
