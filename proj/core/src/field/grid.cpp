#include "lcs/field/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lcs/error.hpp"

namespace lcs {

Grid2D::Grid2D(std::size_t nx, std::size_t ny, double x0, double x1, double y0, double y1)
    : nx_(nx), ny_(ny), x0_(x0), x1_(x1), y0_(y0), y1_(y1) {
  if (nx < 8 || ny < 8)
    throw ConfigError("Grid2D: at least 8 points per axis required, got " + std::to_string(nx) +
                      "x" + std::to_string(ny));
  if (!(x1 > x0) || !(y1 > y0)) throw ConfigError("Grid2D: empty domain");
}

Vec2 Grid2D::wrap(Vec2 p) const {
  if (p.x < x0_ || p.x >= x1_) {
    p.x = x0_ + std::fmod(p.x - x0_, lx());
    if (p.x < x0_) p.x += lx();
    if (p.x >= x1_) p.x -= lx();
  }
  if (p.y < y0_ || p.y >= y1_) {
    p.y = y0_ + std::fmod(p.y - y0_, ly());
    if (p.y < y0_) p.y += ly();
    if (p.y >= y1_) p.y -= ly();
  }
  return p;
}

Vec2 Grid2D::periodic_delta(const Vec2& a, const Vec2& b) const {
  Vec2 d = b - a;
  d.x -= lx() * std::round(d.x / lx());
  d.y -= ly() * std::round(d.y / ly());
  return d;
}

ScalarField2D::ScalarField2D(const Grid2D& g, std::vector<double> v, double t)
    : grid(g), values(std::move(v)), time(t) {
  if (values.size() != grid.size()) throw ConfigError("ScalarField2D: value count does not match grid");
}

void ScalarField2D::require_finite(const char* what) const {
  for (double x : values)
    if (!std::isfinite(x)) throw NumericError(std::string(what) + ": non-finite field value");
}

VectorField2D::VectorField2D(const Grid2D& g, std::vector<double> uu, std::vector<double> vv, double t)
    : grid(g), u(std::move(uu)), v(std::move(vv)), time(t) {
  if (u.size() != grid.size() || v.size() != grid.size())
    throw ConfigError("VectorField2D: component size does not match grid");
}

void VectorField2D::require_finite(const char* what) const {
  for (std::size_t k = 0; k < u.size(); ++k)
    if (!std::isfinite(u[k]) || !std::isfinite(v[k]))
      throw NumericError(std::string(what) + ": non-finite field value");
}

VelocitySeries::VelocitySeries(std::vector<VectorField2D> frames) : frames_(std::move(frames)) {
  if (frames_.empty()) throw ConfigError("VelocitySeries: no frames");
  for (const auto& f : frames_)
    if (!(f.grid == frames_.front().grid)) throw ConfigError("VelocitySeries: frames on different grids");
  if (frames_.size() > 1) {
    dt_ = frames_[1].time - frames_[0].time;
    if (!(dt_ > 0.0)) throw ConfigError("VelocitySeries: frame times must increase");
    for (std::size_t k = 1; k < frames_.size(); ++k) {
      const double step = frames_[k].time - frames_[k - 1].time;
      if (std::abs(step - dt_) > 1e-12 * std::max(std::abs(dt_), std::abs(frames_[k].time)))
        throw ConfigError("VelocitySeries: non-uniform frame spacing");
    }
  }
}

bool VelocitySeries::contains(double t) const {
  const double slack = 1e-12 * std::max(1.0, std::abs(t_end()));
  return t >= t_begin() - slack && t <= t_end() + slack;
}

VectorField2D interpolate_frame(const VelocitySeries& s, double t) {
  if (s.size() == 0 || !s.contains(t))
    throw OutOfRangeError("interpolate_frame: t=" + std::to_string(t) + " outside the series span");
  if (s.size() == 1) return s[0];
  const double pos = (t - s.t_begin()) / s.dt();
  const auto k = std::clamp<std::ptrdiff_t>(static_cast<std::ptrdiff_t>(std::floor(pos)), 0,
                                            static_cast<std::ptrdiff_t>(s.size()) - 2);
  const auto kk = static_cast<std::size_t>(k);
  const double w = std::clamp(pos - static_cast<double>(k), 0.0, 1.0);
  const VectorField2D& a = s[kk];
  const VectorField2D& b = s[kk + 1];
  if (w == 0.0) return a;
  if (w == 1.0) return b;
  VectorField2D out(a.grid, t);
  for (std::size_t i = 0; i < a.u.size(); ++i) {
    out.u[i] = (1.0 - w) * a.u[i] + w * b.u[i];
    out.v[i] = (1.0 - w) * a.v[i] + w * b.v[i];
  }
  return out;
}

}  // namespace lcs
