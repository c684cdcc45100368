#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "lcs/error.hpp"
#include "lcs/ns2d/simulate.hpp"

using namespace lcs;
using std::numbers::pi;

namespace {

double max_abs(const std::vector<double>& a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

double max_abs(const std::vector<cplx>& a) {
  double m = 0.0;
  for (const cplx& v : a) m = std::max(m, std::abs(v));
  return m;
}

SpectralState state_of(const Grid2D& g, double (*f)(Vec2)) {
  return SpectralState::from_vorticity(sample_scalar(g, f));
}

double taylor_green(Vec2 x) { return 2.0 * std::cos(x.x) * std::cos(x.y); }

SpectralState random_state(const Grid2D& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> N;
  ScalarField2D w(g);
  for (auto& v : w.values) v = N(rng);
  double mean = 0.0;
  for (double v : w.values) mean += v;
  mean /= static_cast<double>(w.values.size());
  for (auto& v : w.values) v -= mean;
  return SpectralState::from_vorticity(w);
}

SolverConfig small_config() {
  SolverConfig c;
  c.n = 32;
  c.nu = 1e-3;
  c.t_end = 1.0;
  c.output_dt = 0.25;
  c.spinup_time = 0.5;
  c.tolerance = 1e-6;
  c.k_lo = 2.5;
  c.k_hi = 3.5;
  c.initial_peak_k = 3.0;
  return c;
}

}  // namespace

TEST_CASE("config validation") {
  SolverConfig c = small_config();
  CHECK_NOTHROW(c.validate());
  c.nu = -1.0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = small_config();
  c.k_hi = 12.0;  // beyond n/3
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = small_config();
  c.output_dt = 0.0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("velocity from vorticity") {
  const Grid2D g(32, 32);
  const auto zero = velocity_from_vorticity(SpectralState(g));
  CHECK(max_abs(zero.u) == 0.0);
  CHECK(max_abs(zero.v) == 0.0);

  const auto tg = velocity_from_vorticity(state_of(g, taylor_green));
  const auto u = sample_scalar(g, [](Vec2 x) { return -std::cos(x.x) * std::sin(x.y); });
  const auto v = sample_scalar(g, [](Vec2 x) { return std::sin(x.x) * std::cos(x.y); });
  CHECK(max_abs_diff(tg.u, u.values) < 1e-10);
  CHECK(max_abs_diff(tg.v, v.values) < 1e-10);

  const auto r = random_state(g, 5);
  const auto w = velocity_from_vorticity(r);
  CHECK(max_abs(spectral_divergence(w).values) < 1e-10);
  CHECK(max_abs_diff(spectral_curl(w).values, r.vorticity().values) < 1e-10);
}

TEST_CASE("rhs on steady and trivial states") {
  const Grid2D g(32, 32);
  const ForcingRealization none;
  CHECK(max_abs(rhs(SpectralState(g), none, 0.1)) == 0.0);

  const double nu = 0.05;
  const auto single = state_of(g, [](Vec2 x) { return std::sin(x.x); });
  auto expect = single.omega_hat;
  for (auto& c : expect) c *= -nu;
  auto got = rhs(single, none, nu);
  for (std::size_t k = 0; k < got.size(); ++k) got[k] -= expect[k];
  CHECK(max_abs(got) < 1e-10);

  const auto tg = state_of(g, taylor_green);
  auto t = rhs(tg, none, nu);
  for (std::size_t k = 0; k < t.size(); ++k) t[k] += 2.0 * nu * tg.omega_hat[k];
  CHECK(max_abs(t) < 1e-9);
}

TEST_CASE("forcing amplitude balances dissipation") {
  const Grid2D g(32, 32);
  std::mt19937_64 rng(11);
  const auto f = draw_forcing(g, 3.5, 4.5, 0.2, rng);
  REQUIRE_FALSE(f.modes.empty());
  for (std::size_t m : f.modes) {
    const Wavenumbers k(g);
    const double kk = std::sqrt(k.k2(m / k.nyh(), m % k.nyh()));
    CHECK(kk > 3.5);
    CHECK(kk < 4.5);
  }
  CHECK(forcing_amplitude(SpectralState(g), f, 1e-3) == 0.0);
  const auto s = state_of(g, [](Vec2 x) { return std::sin(4.0 * x.x); });
  CHECK(forcing_amplitude(s, f, 0.0) == 0.0);
  // omega = sin 4x: two modes of magnitude 1/2 at |k| = 4, so
  // nu sum |k|^2 |w|^2 / 2 = 4 nu, and 1/2 A^2 hold norm2 = 4 nu.
  const double nu = 1e-3;
  const double expect = std::sqrt(8.0 * nu / (f.hold * f.norm2));
  CHECK(std::abs(forcing_amplitude(s, f, nu) - expect) < 1e-12 * std::max(1.0, expect));
}

TEST_CASE("enstrophy spectrum") {
  const Grid2D g(32, 32);
  const auto zero = enstrophy_spectrum(SpectralState(g));
  CHECK(max_abs(zero) == 0.0);

  const auto z3 = enstrophy_spectrum(state_of(g, [](Vec2 x) { return std::sin(3.0 * x.x); }));
  for (std::size_t k = 0; k < z3.size(); ++k) {
    if (k == 3)
      CHECK(z3[k] == doctest::Approx(0.25));
    else
      CHECK(z3[k] == doctest::Approx(0.0));
  }

  const auto r = random_state(g, 9);
  const auto w = r.vorticity();
  double quad = 0.0;
  for (double v : w.values) quad += v * v;
  quad *= 0.5 / static_cast<double>(w.values.size());
  double total = 0.0;
  for (double z : enstrophy_spectrum(r)) total += z;
  CHECK(std::abs(total - quad) < 1e-10 * std::max(1.0, quad));
  CHECK(enstrophy(r) == doctest::Approx(quad).epsilon(1e-12));
}

TEST_CASE("step_rk4 leaves the zero state unchanged") {
  const Grid2D g(32, 32);
  const auto r = step_rk4(SpectralState(g), 0.1, ForcingRealization{}, 1e-2, 1e-6);
  CHECK(max_abs(r.state.omega_hat) == 0.0);
  CHECK(r.state.time == doctest::Approx(r.dt_taken));
}

TEST_CASE("Taylor-Green decay is reproduced") {
  SolverConfig c;
  c.n = 64;
  c.nu = 1e-2;
  c.forcing = false;
  Solver solver(c, state_of(Grid2D(64, 64), taylor_green));
  ForcingRealization none;
  solver.advance_to(1.0, none);
  CHECK(solver.state().time == 1.0);
  const double decay = std::exp(-2.0 * c.nu);
  const auto expect = sample_scalar(Grid2D(64, 64), [&](Vec2 x) { return decay * taylor_green(x); });
  CHECK(max_abs_diff(solver.state().vorticity().values, expect.values) <= 1e-6);
}

TEST_CASE("inviscid unforced steps conserve energy and enstrophy") {
  const Grid2D g(32, 32);
  SpectralState s = random_state(g, 21);
  const double e0 = kinetic_energy(s), z0 = enstrophy(s);
  double dt = 1e-3;
  for (int k = 0; k < 100; ++k) {
    const auto r = step_rk4(s, dt, ForcingRealization{}, 0.0, 1e-10);
    s = r.state;
    dt = r.dt_next;
  }
  CHECK(std::abs(kinetic_energy(s) - e0) <= 1e-8 * e0);
  CHECK(std::abs(enstrophy(s) - z0) <= 1e-8 * z0);

  // dealiased modes stay exactly zero
  const Wavenumbers k(g);
  for (std::size_t r = 0; r < k.nx(); ++r)
    for (std::size_t c = 0; c < k.nyh(); ++c)
      if (!dealias_keep(k, r, c, g)) CHECK(s.omega_hat[r * k.nyh() + c] == cplx(0.0, 0.0));
}

TEST_CASE("step size underflow raises a stiffness error") {
  const Grid2D g(32, 32);
  const auto s = random_state(g, 4);
  CHECK_THROWS_AS(step_rk4(s, 1.0, ForcingRealization{}, 0.0, 1e-300, 1e-3), StiffnessError);
}

TEST_CASE("simulate with t_end = 0 yields the initial condition") {
  SolverConfig c = small_config();
  c.t_end = 0.0;
  const auto sim = simulate(c);
  REQUIRE(sim.series.size() == 1);
  const auto expect = velocity_from_vorticity(initial_condition(c));
  CHECK(sim.series[0].u == expect.u);
  CHECK(sim.series[0].v == expect.v);
  CHECK(sim.series[0].time == 0.0);
}

TEST_CASE("simulate is deterministic and frames sit on the output grid") {
  const SolverConfig c = small_config();
  const auto a = simulate(c);
  const auto b = simulate(c);
  REQUIRE(a.series.size() == 5);
  REQUIRE(b.series.size() == 5);
  for (std::size_t k = 0; k < a.series.size(); ++k) {
    CHECK(a.series[k].time == doctest::Approx(0.25 * static_cast<double>(k)));
    CHECK(a.series[k].u == b.series[k].u);
    CHECK(a.series[k].v == b.series[k].v);
  }
  SolverConfig other = c;
  other.seed = 2;
  CHECK(simulate(other).series[4].u != a.series[4].u);
}

TEST_CASE("viscous unforced runs lose enstrophy frame to frame") {
  SolverConfig c = small_config();
  c.forcing = false;
  c.nu = 1e-2;
  const auto sim = simulate(c);
  REQUIRE(sim.summary.log.size() >= 2);
  for (std::size_t k = 1; k < sim.summary.log.size(); ++k)
    CHECK(sim.summary.log[k].enstrophy <= sim.summary.log[k - 1].enstrophy);
}

TEST_CASE("initial condition has the requested rms vorticity and zero mean") {
  SolverConfig c = small_config();
  c.spinup_time = 0.0;
  c.initial_rms_vorticity = 0.7;
  const auto s = initial_condition(c);
  CHECK(std::abs(s.omega_hat[0]) == 0.0);
  CHECK(std::sqrt(2.0 * enstrophy(s)) == doctest::Approx(0.7).epsilon(1e-10));
}
