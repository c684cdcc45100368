#pragma once

#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

#include "lcs/field/vec2.hpp"

namespace lcs {

// Uniform, doubly periodic grid. Node (i, j) sits at (x0 + i*dx, y0 + j*dy);
// node i = nx is the periodic image of i = 0.
class Grid2D {
 public:
  Grid2D() = default;
  Grid2D(std::size_t nx, std::size_t ny, double x0 = 0.0, double x1 = 2.0 * std::numbers::pi,
         double y0 = 0.0, double y1 = 2.0 * std::numbers::pi);

  static Grid2D square(std::size_t n) { return Grid2D(n, n); }

  std::size_t nx() const { return nx_; }
  std::size_t ny() const { return ny_; }
  std::size_t size() const { return nx_ * ny_; }
  double x0() const { return x0_; }
  double x1() const { return x1_; }
  double y0() const { return y0_; }
  double y1() const { return y1_; }
  double lx() const { return x1_ - x0_; }
  double ly() const { return y1_ - y0_; }
  double dx() const { return lx() / static_cast<double>(nx_); }
  double dy() const { return ly() / static_cast<double>(ny_); }
  double area() const { return lx() * ly(); }

  // Row-major, y fastest.
  std::size_t index(std::size_t i, std::size_t j) const { return i * ny_ + j; }
  Vec2 node(std::size_t i, std::size_t j) const {
    return {x0_ + static_cast<double>(i) * dx(), y0_ + static_cast<double>(j) * dy()};
  }
  // Maps a point into [x0, x1) x [y0, y1).
  Vec2 wrap(Vec2 p) const;
  // Shortest periodic displacement b - a.
  Vec2 periodic_delta(const Vec2& a, const Vec2& b) const;

  friend bool operator==(const Grid2D&, const Grid2D&) = default;

 private:
  std::size_t nx_ = 0, ny_ = 0;
  double x0_ = 0.0, x1_ = 0.0, y0_ = 0.0, y1_ = 0.0;
};

struct ScalarField2D {
  Grid2D grid;
  std::vector<double> values;
  double time = 0.0;

  ScalarField2D() = default;
  explicit ScalarField2D(const Grid2D& g, double t = 0.0) : grid(g), values(g.size(), 0.0), time(t) {}
  ScalarField2D(const Grid2D& g, std::vector<double> v, double t = 0.0);

  double& operator()(std::size_t i, std::size_t j) { return values[grid.index(i, j)]; }
  double operator()(std::size_t i, std::size_t j) const { return values[grid.index(i, j)]; }

  // Throws NumericError on the first NaN/Inf.
  void require_finite(const char* what) const;
};

struct VectorField2D {
  Grid2D grid;
  std::vector<double> u;
  std::vector<double> v;
  double time = 0.0;

  VectorField2D() = default;
  explicit VectorField2D(const Grid2D& g, double t = 0.0)
      : grid(g), u(g.size(), 0.0), v(g.size(), 0.0), time(t) {}
  VectorField2D(const Grid2D& g, std::vector<double> uu, std::vector<double> vv, double t = 0.0);

  Vec2 at(std::size_t i, std::size_t j) const {
    const auto k = grid.index(i, j);
    return {u[k], v[k]};
  }
  void require_finite(const char* what) const;
};

// Sample f(x, y) at every node.
template <class F>
ScalarField2D sample_scalar(const Grid2D& g, F&& f, double t = 0.0) {
  ScalarField2D out(g, t);
  for (std::size_t i = 0; i < g.nx(); ++i)
    for (std::size_t j = 0; j < g.ny(); ++j) out(i, j) = f(g.node(i, j));
  return out;
}

template <class F>
VectorField2D sample_vector(const Grid2D& g, F&& f, double t = 0.0) {
  VectorField2D out(g, t);
  for (std::size_t i = 0; i < g.nx(); ++i)
    for (std::size_t j = 0; j < g.ny(); ++j) {
      const Vec2 w = f(g.node(i, j));
      out.u[g.index(i, j)] = w.x;
      out.v[g.index(i, j)] = w.y;
    }
  return out;
}

// Time-ordered velocity frames on a common grid with a uniform step.
class VelocitySeries {
 public:
  VelocitySeries() = default;
  explicit VelocitySeries(std::vector<VectorField2D> frames);

  const std::vector<VectorField2D>& frames() const { return frames_; }
  std::size_t size() const { return frames_.size(); }
  const VectorField2D& operator[](std::size_t k) const { return frames_[k]; }
  const Grid2D& grid() const { return frames_.front().grid; }
  double t_begin() const { return frames_.front().time; }
  double t_end() const { return frames_.back().time; }
  // Zero for a single-frame series.
  double dt() const { return dt_; }
  bool contains(double t) const;

 private:
  std::vector<VectorField2D> frames_;
  double dt_ = 0.0;
};

// Linear interpolation between the frames around t. Throws OutOfRangeError
// outside the series span.
VectorField2D interpolate_frame(const VelocitySeries& s, double t);

}  // namespace lcs
