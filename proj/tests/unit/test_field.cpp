#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>

#include "lcs/error.hpp"
#include "lcs/field/io.hpp"
#include "lcs/field/polyline.hpp"
#include "lcs/field/spectral.hpp"
#include "lcs/field/spline.hpp"
#include "test_support.hpp"

using namespace lcs;
using std::numbers::pi;

namespace {

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

VelocitySeries two_frame_series(const Grid2D& g, const std::function<Vec2(Vec2)>& f) {
  return VelocitySeries({sample_vector(g, f, 0.0), sample_vector(g, f, 1.0)});
}

}  // namespace

TEST_CASE("grid rejects tiny or inverted domains") {
  CHECK_THROWS_AS(Grid2D(4, 16), ConfigError);
  CHECK_THROWS_AS(Grid2D(16, 16, 1.0, 0.0, 0.0, 1.0), ConfigError);
  const Grid2D g(16, 32);
  CHECK(g.dx() == doctest::Approx(2.0 * pi / 16));
  CHECK(g.dy() == doctest::Approx(2.0 * pi / 32));
}

TEST_CASE("wrap and periodic delta") {
  const Grid2D g(16, 16);
  const Vec2 w = g.wrap({-0.5, 2.0 * pi + 0.25});
  CHECK(w.x == doctest::Approx(2.0 * pi - 0.5));
  CHECK(w.y == doctest::Approx(0.25));
  const Vec2 d = g.periodic_delta({0.1, 0.1}, {2.0 * pi - 0.1, 0.3});
  CHECK(d.x == doctest::Approx(-0.2));
  CHECK(d.y == doctest::Approx(0.2));
}

TEST_CASE("velocity series requires a uniform step") {
  const Grid2D g(8, 8);
  CHECK_THROWS_AS(VelocitySeries({VectorField2D(g, 0.0), VectorField2D(g, 1.0), VectorField2D(g, 2.5)}), ConfigError);
  CHECK_THROWS_AS(VelocitySeries({VectorField2D(g, 0.0), VectorField2D(Grid2D(16, 16), 1.0)}), ConfigError);
}

TEST_CASE("interp_velocity reproduces a uniform field") {
  const Grid2D g(16, 16);
  const VelocityInterpolator interp(two_frame_series(g, [](Vec2) { return Vec2{1.0, 0.0}; }));
  for (const Vec2 x : {Vec2{0.3, 0.7}, Vec2{5.9, 1.1}, Vec2{-2.0, 9.0}}) {
    const Vec2 u = interp_velocity(interp, x, 0.37);
    CHECK(u.x == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(u.y) < 1e-14);
  }
}

TEST_CASE("interp_velocity is exact at nodes and frame times") {
  const Grid2D g(16, 16);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  VectorField2D f0(g, 0.0), f1(g, 0.5);
  for (std::size_t k = 0; k < g.size(); ++k) {
    f0.u[k] = U(rng);
    f0.v[k] = U(rng);
    f1.u[k] = U(rng);
    f1.v[k] = U(rng);
  }
  const VelocityInterpolator interp(VelocitySeries({f0, f1}));
  for (std::size_t i = 0; i < g.nx(); i += 3)
    for (std::size_t j = 0; j < g.ny(); j += 5) {
      const Vec2 a = interp(g.node(i, j), 0.0);
      const Vec2 b = interp(g.node(i, j), 0.5);
      CHECK(a.x == f0.u[g.index(i, j)]);
      CHECK(a.y == f0.v[g.index(i, j)]);
      CHECK(b.x == f1.u[g.index(i, j)]);
      CHECK(b.y == f1.v[g.index(i, j)]);
    }
}

TEST_CASE("interp_velocity converges on a smooth field") {
  const Grid2D g(64, 64);
  const VelocityInterpolator interp(two_frame_series(g, [](Vec2 x) { return Vec2{std::sin(x.y), 0.0}; }));
  const Vec2 u = interp({1.234, pi / 3.0}, 0.5);
  CHECK(std::abs(u.x - std::sin(pi / 3.0)) < 1e-6);
  CHECK(std::abs(u.y) < 1e-12);
}

TEST_CASE("interp_velocity is periodic and range checked") {
  const Grid2D g(32, 32);
  const VelocityInterpolator interp(
      two_frame_series(g, [](Vec2 x) { return Vec2{std::sin(x.y) * std::cos(x.x), std::cos(2.0 * x.x)}; }));
  const Vec2 x{0.77, 4.1};
  const Vec2 a = interp(x, 0.25), b = interp(x + Vec2{2.0 * pi, 0.0}, 0.25), c = interp(x + Vec2{0.0, -2.0 * pi}, 0.25);
  CHECK(std::abs(a.x - b.x) < 1e-12);
  CHECK(std::abs(a.y - b.y) < 1e-12);
  CHECK(std::abs(a.x - c.x) < 1e-12);
  CHECK_THROWS_AS(interp(x, 1.5), OutOfRangeError);
  CHECK_THROWS_AS(interp(x, -0.1), OutOfRangeError);
}

TEST_CASE("interpolate_frame blends linearly in time") {
  const Grid2D g(8, 8);
  VectorField2D f0(g, 0.0), f1(g, 2.0);
  for (std::size_t k = 0; k < g.size(); ++k) {
    f0.u[k] = 1.0;
    f1.u[k] = 3.0;
  }
  const VelocitySeries s({f0, f1});
  CHECK(interpolate_frame(s, 0.5).u[5] == doctest::Approx(1.5));
  CHECK_THROWS_AS(interpolate_frame(s, 2.5), OutOfRangeError);
}

TEST_CASE("spectral gradient of analytic fields") {
  const Grid2D g(32, 32);
  const auto zero = spectral_gradient(sample_scalar(g, [](Vec2) { return 3.5; }));
  CHECK(max_abs_diff(zero.u, std::vector<double>(g.size(), 0.0)) < 1e-12);
  CHECK(max_abs_diff(zero.v, std::vector<double>(g.size(), 0.0)) < 1e-12);

  const auto gs = spectral_gradient(sample_scalar(g, [](Vec2 x) { return std::sin(x.x); }));
  CHECK(max_abs_diff(gs.u, sample_scalar(g, [](Vec2 x) { return std::cos(x.x); }).values) < 1e-10);
  CHECK(max_abs_diff(gs.v, std::vector<double>(g.size(), 0.0)) < 1e-10);

  const auto gc = spectral_gradient(sample_scalar(g, [](Vec2 x) { return std::cos(3.0 * x.y); }));
  CHECK(max_abs_diff(gc.u, std::vector<double>(g.size(), 0.0)) < 1e-10);
  CHECK(max_abs_diff(gc.v, sample_scalar(g, [](Vec2 x) { return -3.0 * std::sin(3.0 * x.y); }).values) < 1e-10);

  ScalarField2D bad(g);
  bad.values[3] = std::nan("");
  CHECK_THROWS_AS(spectral_gradient(bad), NumericError);
}

TEST_CASE("divergence of a curl field vanishes") {
  const Grid2D g(32, 32);
  const auto psi = sample_scalar(g, [](Vec2 x) { return std::sin(2.0 * x.x) * std::cos(x.y) + std::cos(3.0 * x.y); });
  const auto gp = spectral_gradient(psi);
  VectorField2D w(g);
  w.u = gp.v;
  for (std::size_t k = 0; k < g.size(); ++k) w.v[k] = -gp.u[k];
  const auto div = spectral_divergence(w);
  CHECK(max_abs_diff(div.values, std::vector<double>(g.size(), 0.0)) < 1e-10);
}

TEST_CASE("invert_laplacian_neg on single modes") {
  const Grid2D g(32, 32);
  CHECK(max_abs_diff(invert_laplacian_neg(ScalarField2D(g)).values, std::vector<double>(g.size(), 0.0)) == 0.0);
  const auto s = invert_laplacian_neg(sample_scalar(g, [](Vec2 x) { return std::sin(x.x); }));
  CHECK(max_abs_diff(s.values, sample_scalar(g, [](Vec2 x) { return std::sin(x.x); }).values) < 1e-10);
  const auto c = invert_laplacian_neg(sample_scalar(g, [](Vec2 x) { return std::cos(2.0 * x.x); }));
  CHECK(max_abs_diff(c.values, sample_scalar(g, [](Vec2 x) { return 0.25 * std::cos(2.0 * x.x); }).values) < 1e-10);
  CHECK_THROWS_AS(invert_laplacian_neg(sample_scalar(g, [](Vec2 x) { return 1.0 + std::sin(x.x); })),
                  SolvabilityError);
}

TEST_CASE("invert_laplacian_neg is a two-sided inverse on zero-mean fields") {
  const Grid2D g(32, 32);
  const auto f = sample_scalar(g, [](Vec2 x) { return std::sin(x.x + 2.0 * x.y) - 0.5 * std::cos(3.0 * x.x); });
  auto lap = spectral_laplacian(invert_laplacian_neg(f));
  for (auto& v : lap.values) v = -v;
  CHECK(max_abs_diff(lap.values, f.values) < 1e-10);
  auto neg = spectral_laplacian(f);
  for (auto& v : neg.values) v = -v;
  CHECK(max_abs_diff(invert_laplacian_neg(neg).values, f.values) < 1e-10);
}

TEST_CASE("field files round-trip bit for bit") {
  const test::TempDir dir("field_io");
  const Grid2D g(16, 16, 0.0, 1.0, -2.0, 3.0);
  std::mt19937_64 rng(3);
  std::normal_distribution<double> N;
  ScalarField2D s(g, 1.25);
  for (auto& v : s.values) v = N(rng);
  VectorField2D w(g, -0.5);
  for (std::size_t k = 0; k < g.size(); ++k) {
    w.u[k] = N(rng);
    w.v[k] = N(rng);
  }
  write_field(s, dir / "s.lcs");
  write_field(w, dir / "w.lcs");
  const auto s2 = read_scalar_field(dir / "s.lcs");
  const auto w2 = read_vector_field(dir / "w.lcs");
  CHECK(s2.grid == g);
  CHECK(s2.time == s.time);
  CHECK(s2.values == s.values);
  CHECK(w2.u == w.u);
  CHECK(w2.v == w.v);
  CHECK(w2.time == w.time);
  CHECK(std::holds_alternative<ScalarField2D>(read_field(dir / "s.lcs")));

  const VelocitySeries series({w, VectorField2D(g, 0.5)});
  write_series(series, dir / "series");
  const auto back = read_series(dir / "series" / "manifest.txt");
  REQUIRE(back.size() == 2);
  CHECK(back[0].u == w.u);
  CHECK(back.dt() == 1.0);
}

TEST_CASE("malformed field files raise format errors") {
  const test::TempDir dir("field_bad");
  write_field(ScalarField2D(Grid2D(16, 16)), dir / "ok.lcs");
  std::string bytes = test::slurp(dir / "ok.lcs");

  std::string magic = bytes;
  magic[0] = 'X';
  test::spit(dir / "magic.lcs", magic);
  CHECK_THROWS_AS(read_field(dir / "magic.lcs"), FormatError);

  test::spit(dir / "short.lcs", bytes.substr(0, bytes.size() - 8));
  CHECK_THROWS_AS(read_field(dir / "short.lcs"), FormatError);

  test::spit(dir / "long.lcs", bytes + std::string(8, '\0'));
  CHECK_THROWS_AS(read_field(dir / "long.lcs"), FormatError);

  CHECK_THROWS_AS(read_field(dir / "missing.lcs"), IoError);
}

TEST_CASE("format_double round-trips") {
  for (double x : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23}) CHECK(std::stod(format_double(x)) == x);
}

TEST_CASE("polyline helpers") {
  const Polyline square{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  CHECK(ring_length(square) == doctest::Approx(4.0));
  CHECK(signed_area(square) == doctest::Approx(1.0));
  CHECK(point_in_ring(square, {0.5, 0.5}));
  CHECK_FALSE(point_in_ring(square, {1.5, 0.5}));
  CHECK(ring_is_simple(square));
  CHECK_FALSE(ring_is_simple(Polyline{{0, 0}, {1, 1}, {1, 0}, {0, 1}}));
  CHECK(ring_diameter(square) == doctest::Approx(std::sqrt(2.0)));
  CHECK(close_ring(square).size() == 5);
  CHECK(open_ring(close_ring(square)) == square);
}

TEST_CASE("periodic spline interpolates nodes and smooth data") {
  const Grid2D g(64, 64);
  const auto f = sample_scalar(g, [](Vec2 x) { return std::sin(x.y) + 0.5 * std::cos(2.0 * x.x); });
  const PeriodicSpline2D s(f);
  CHECK(s(g.node(5, 9)) == f(5, 9));
  const Vec2 p{0.9, pi / 3.0};
  CHECK(std::abs(s(p) - (std::sin(p.y) + 0.5 * std::cos(2.0 * p.x))) < 1e-6);
  Vec2 grad;
  s.eval(p, &grad);
  CHECK(std::abs(grad.x + std::sin(2.0 * p.x)) < 1e-4);
  CHECK(std::abs(grad.y - std::cos(p.y)) < 1e-4);
  CHECK(std::abs(s(p) - s(p + Vec2{-2.0 * pi, 4.0 * pi})) < 1e-12);

  const PeriodicSplineSet2D set(g, {f.values, sample_scalar(g, [](Vec2 x) { return std::cos(x.x); }).values});
  double out[2];
  set.eval(p, out);
  CHECK(out[0] == doctest::Approx(s(p)).epsilon(1e-13));
  CHECK(std::abs(out[1] - std::cos(p.x)) < 1e-6);
}
