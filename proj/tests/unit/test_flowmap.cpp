#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "lcs/error.hpp"
#include "lcs/flowmap/cauchy_green.hpp"
#include "lcs/flowmap/flowmap_io.hpp"
#include "test_support.hpp"

using namespace lcs;
using std::numbers::pi;

namespace {

VelocitySource uniform_flow() {
  return VelocitySource::analytic([](Vec2, double) { return Vec2{1.0, 0.0}; }, -10.0, 10.0);
}

VelocitySource rotation_flow() {
  return VelocitySource::analytic([](Vec2 x, double) { return Vec2{-(x.y - pi), x.x - pi}; }, -10.0, 10.0);
}

VelocitySource saddle_flow() {
  return VelocitySource::analytic([](Vec2 x, double) { return Vec2{x.x - pi, -(x.y - pi)}; }, -10.0, 10.0);
}

// Smooth, unsteady and periodic.
VelocitySource wavy_flow() {
  return VelocitySource::analytic(
      [](Vec2 x, double t) {
        return Vec2{std::sin(x.y) + 0.3 * std::cos(x.y - t), 0.5 * std::sin(x.x + 0.2 * t)};
      },
      0.0, 4.0);
}

double mat_diff(const Mat2& a, const Mat2& b) {
  return std::max({std::abs(a.a - b.a), std::abs(a.b - b.b), std::abs(a.c - b.c), std::abs(a.d - b.d)});
}

// Eigenvalues of DF / sqrt(det DF) from the characteristic polynomial; true
// when both lie on the unit circle.
bool roots_on_unit_circle(const Mat2& df) {
  const double det = df.det();
  if (det <= 0.0) return false;
  const double tr = df.trace() / std::sqrt(det);
  const std::complex<double> disc = std::sqrt(std::complex<double>(tr * tr - 4.0, 0.0));
  const auto r1 = (tr + disc) / 2.0, r2 = (tr - disc) / 2.0;
  return std::abs(std::abs(r1) - 1.0) < 1e-12 && std::abs(std::abs(r2) - 1.0) < 1e-12;
}

}  // namespace

TEST_CASE("advect_particle on analytic flows") {
  const Vec2 p = advect_particle(uniform_flow(), {0.0, 0.0}, 0.0, 1.0);
  CHECK(p.x == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(p.y) < 1e-14);

  const double r = 0.7;
  const Vec2 q = advect_particle(rotation_flow(), {pi + r, pi}, 0.0, pi / 2.0);
  CHECK(std::abs(q.x - pi) < 1e-7);
  CHECK(std::abs(q.y - (pi + r)) < 1e-7);

  const Vec2 x0{1.1, 2.3};
  const auto src = wavy_flow();
  const Vec2 fwd = advect_particle(src, x0, 0.5, 3.5);
  const Vec2 back = advect_particle(src, fwd, 3.5, 0.5);
  CHECK(norm(back - x0) < 1e-6);

  CHECK(advect_particle(src, x0, 1.0, 1.0) == x0);
  CHECK_THROWS_AS(advect_particle(src, x0, 0.0, 5.0), OutOfRangeError);
}

TEST_CASE("advection over an interpolated series respects the domain") {
  const Grid2D g(32, 32);
  std::vector<VectorField2D> frames;
  for (int k = 0; k <= 4; ++k)
    frames.push_back(sample_vector(g, [](Vec2) { return Vec2{1.0, 0.5}; }, 0.5 * k));
  const auto interp = std::make_shared<const VelocityInterpolator>(VelocitySeries(frames));
  const auto src = VelocitySource::from_series(interp);
  const Vec2 p = advect_particle(src, {6.0, 6.0}, 0.0, 2.0);
  CHECK(p.x == doctest::Approx(8.0 - 2.0 * pi).epsilon(1e-12));
  CHECK(p.y == doctest::Approx(7.0 - 2.0 * pi).epsilon(1e-12));
  const Vec2 q = advect_unwrapped(src, {6.0, 6.0}, 0.0, 2.0);
  CHECK(q.x == doctest::Approx(8.0).epsilon(1e-12));

  const auto traj = advect_trajectory(src, {0.0, 0.0}, 0.0, {0.5, 1.0, 1.7});
  REQUIRE(traj.size() == 3);
  CHECK(traj[2].x == doctest::Approx(1.7).epsilon(1e-12));
  CHECK(traj[2].y == doctest::Approx(0.85).epsilon(1e-12));
}

TEST_CASE("compute_flow_map on trivial windows and flows") {
  const Grid2D g(16, 16);
  const auto id = compute_flow_map(wavy_flow(), g, 1.0, 1.0);
  for (std::size_t i = 0; i < g.nx(); ++i)
    for (std::size_t j = 0; j < g.ny(); ++j) {
      CHECK(id.at(i, j) == g.node(i, j));
      CHECK(mat_diff(id.jac(i, j), Mat2::identity()) < 1e-12);
    }

  const auto tr = compute_flow_map(uniform_flow(), g, 0.0, 2.0);
  for (std::size_t k = 0; k < g.size(); ++k) {
    const Vec2 d = tr.position[k] - g.node(k / g.ny(), k % g.ny());
    CHECK(d.x == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(std::abs(d.y) < 1e-12);
  }
}

TEST_CASE("flow maps compose") {
  const auto src = wavy_flow();
  for (const Vec2 x : {Vec2{0.3, 0.4}, Vec2{2.0, 5.0}, Vec2{4.4, 1.9}}) {
    const Vec2 direct = advect_unwrapped(src, x, 0.0, 3.0);
    const Vec2 two = advect_unwrapped(src, advect_unwrapped(src, x, 0.0, 1.2), 1.2, 3.0);
    CHECK(norm(direct - two) < 1e-5);
  }
}

TEST_CASE("jacobian of analytic flows") {
  for (double T : {0.5, 1.0, 2.0}) {
    const Mat2 df = jacobian_aux_grid(saddle_flow(), {1.0, 2.0}, 0.0, T);
    CHECK(std::abs(df.a - std::exp(T)) < 1e-5 * std::exp(T));
    CHECK(std::abs(df.d - std::exp(-T)) < 1e-5);
    CHECK(std::abs(df.b) < 1e-5);
    CHECK(std::abs(df.c) < 1e-5);
  }
  const Mat2 rot = jacobian_aux_grid(rotation_flow(), {2.0, 2.5}, 0.0, 1.3);
  CHECK(mat_diff(rot, rotation(1.3)) < 1e-6);
  CHECK(mat_diff(rot.transposed() * rot, Mat2::identity()) < 1e-6);
  CHECK(mat_diff(jacobian_aux_grid(wavy_flow(), {1.0, 1.0}, 2.0, 2.0), Mat2::identity()) < 1e-12);

  // central differences converge at second order in delta
  const Vec2 x{1.3, 0.4};
  const AdvectOptions tight{1e-12, 0.0, 1e-12};
  const Mat2 fine = jacobian_aux_grid(wavy_flow(), x, 0.0, 3.0, 1e-4, tight);
  const Mat2 d1 = jacobian_aux_grid(wavy_flow(), x, 0.0, 3.0, 2e-2, tight);
  const Mat2 d2 = jacobian_aux_grid(wavy_flow(), x, 0.0, 3.0, 1e-2, tight);
  const double e1 = mat_diff(d1, fine), e2 = mat_diff(d2, fine);
  CHECK(e2 < 0.35 * e1);
}

TEST_CASE("cauchy_green eigen-decomposition") {
  const CGEigen id = cauchy_green(Mat2::identity());
  CHECK(id.lambda1 == 1.0);
  CHECK(id.lambda2 == 1.0);
  CHECK(id.degenerate);

  const CGEigen d = cauchy_green({2.0, 0.0, 0.0, 0.5});
  CHECK(d.lambda1 == doctest::Approx(0.25));
  CHECK(d.lambda2 == doctest::Approx(4.0));
  CHECK(std::abs(d.xi1.x) < 1e-15);
  CHECK(std::abs(d.xi1.y) == doctest::Approx(1.0));
  CHECK(d.xi2.x == doctest::Approx(1.0));
  CHECK_FALSE(d.degenerate);

  for (double theta : {0.3, 1.7, -2.4}) {
    const CGEigen e = cauchy_green(rotation(theta) * Mat2{3.0, 0.0, 0.0, 1.0 / 3.0});
    CHECK(std::abs(e.lambda2 - 9.0) < 1e-12);
    CHECK(std::abs(e.lambda1 - 1.0 / 9.0) < 1e-12);
    CHECK(std::abs(e.xi2.x - 1.0) < 1e-12);
    CHECK(std::abs(e.xi2.y) < 1e-12);
  }

  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> U(-2.0, 2.0);
  for (int k = 0; k < 50; ++k) {
    const Mat2 m{U(rng), U(rng), U(rng), U(rng)};
    if (std::abs(m.det()) < 1e-3) continue;
    const CGEigen e = cauchy_green(m);
    CHECK(std::abs(norm(e.xi1) - 1.0) < 1e-12);
    CHECK(std::abs(norm(e.xi2) - 1.0) < 1e-12);
    CHECK(std::abs(dot(e.xi1, e.xi2)) < 1e-12);
    CHECK(e.lambda1 <= e.lambda2);
    CHECK(e.xi2.x >= 0.0);
    const SymTensor c = right_cauchy_green(m);
    const Vec2 r = c * e.xi2 - e.xi2 * e.lambda2;
    CHECK(norm(r) < 1e-10 * e.lambda2);
  }
  CHECK_THROWS_AS(cauchy_green({1.0, 2.0, 2.0, 4.0}), SingularMatrixError);
  CHECK_THROWS_AS(cauchy_green({std::nan(""), 0.0, 0.0, 1.0}), SingularMatrixError);
}

TEST_CASE("ftle of the linear saddle is one in both directions") {
  const Grid2D g(16, 16);
  for (double T : {0.5, 2.0}) {
    const auto fwd = ftle(cauchy_green_field(compute_flow_map(saddle_flow(), g, 0.0, T)));
    const auto bwd = ftle(cauchy_green_field(compute_flow_map(saddle_flow(), g, T, 0.0)));
    for (std::size_t k = 0; k < g.size(); ++k) {
      CHECK(std::abs(fwd.values[k] - 1.0) < 1e-6);
      CHECK(std::abs(bwd.values[k] - 1.0) < 1e-6);
    }
  }
  const auto zero = ftle(cauchy_green_field(compute_flow_map(rotation_flow(), g, 0.0, 1.0)));
  for (double v : zero.values) CHECK(std::abs(v) < 1e-6);
}

TEST_CASE("incompressibility defect of area-preserving maps") {
  const Grid2D g(16, 16);
  const auto cg = cauchy_green_field(compute_flow_map(wavy_flow(), g, 0.0, 3.0));
  CHECK(incompressibility_defect(cg) < 1e-5);
}

TEST_CASE("mesoclassify on hand cases") {
  for (double theta : {0.2, 1.0, 2.5, 3.0}) {
    const MesoPoint p = mesoclassify(rotation(theta));
    CHECK(p.cls == MesoClass::elliptic);
    CHECK(p.trace == doctest::Approx(2.0 * std::cos(theta)));
    CHECK_FALSE(p.boundary);
  }
  CHECK(mesoclassify({2.0, 0.0, 0.0, 0.5}).cls == MesoClass::hyperbolic);
  const MesoPoint id = mesoclassify(Mat2::identity());
  CHECK(id.cls == MesoClass::elliptic);
  CHECK(id.boundary);
  CHECK(mesoclassify({-1.0, 0.0, 0.0, 1.0}).cls == MesoClass::hyperbolic);
  CHECK(mesoclassify({1.2, 0.0, 0.0, 1.0}).det_flag);
}

TEST_CASE("mesoclassify agrees with characteristic polynomial roots") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> U(-3.0, 3.0);
  int checked = 0;
  for (int k = 0; k < 2000; ++k) {
    const Mat2 m{U(rng), U(rng), U(rng), U(rng)};
    const MesoPoint p = mesoclassify(m);
    if (p.boundary) continue;
    ++checked;
    CHECK((p.cls == MesoClass::elliptic) == roots_on_unit_circle(m));
  }
  CHECK(checked > 1900);
}

TEST_CASE("flow map and Cauchy-Green files round-trip") {
  const test::TempDir dir("flowmap_io");
  const Grid2D g(16, 16);
  const auto fm = compute_flow_map(wavy_flow(), g, 0.0, 2.0);
  write_flow_map(fm, dir / "fm.lcs");
  const auto fm2 = read_flow_map(dir / "fm.lcs");
  CHECK(fm2.a == fm.a);
  CHECK(fm2.b == fm.b);
  for (std::size_t k = 0; k < g.size(); ++k) {
    CHECK(fm2.position[k] == fm.position[k]);
    CHECK(fm2.jacobian[k] == fm.jacobian[k]);
  }
  const auto cg = cauchy_green_field(fm);
  write_cauchy_green(cg, dir / "cg.lcs");
  const auto cg2 = read_cauchy_green(dir / "cg.lcs");
  CHECK(cg2.lambda1 == cg.lambda1);
  CHECK(cg2.lambda2 == cg.lambda2);
  CHECK(cg2.degenerate == cg.degenerate);
  for (std::size_t k = 0; k < g.size(); ++k) CHECK(cg2.xi2[k] == cg.xi2[k]);
  CHECK_THROWS_AS(read_cauchy_green(dir / "fm.lcs"), FormatError);
}
