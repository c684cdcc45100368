#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "lcs/elliptic/lambda_line.hpp"
#include "lcs/field/spline.hpp"
#include "lcs/flowmap/cauchy_green.hpp"
#include "lcs/ns2d/solver.hpp"

using namespace lcs;
using std::numbers::pi;

namespace {

void BM_SplineEval(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Grid2D g(n, n);
  const PeriodicSpline2D s(sample_scalar(g, [](Vec2 x) { return std::sin(x.x) * std::cos(2.0 * x.y); }));
  Vec2 p{0.1, 0.2};
  for (auto _ : state) {
    benchmark::DoNotOptimize(s(p));
    p.x += 0.0137;
    p.y += 0.0071;
  }
}
BENCHMARK(BM_SplineEval)->Arg(128)->Arg(512);

void BM_VelocityInterp(benchmark::State& state) {
  const Grid2D g(128, 128);
  std::vector<VectorField2D> frames;
  for (int k = 0; k < 4; ++k)
    frames.push_back(sample_vector(g, [k](Vec2 x) { return Vec2{std::sin(x.y + k), std::cos(x.x)}; }, 0.2 * k));
  const VelocityInterpolator interp{VelocitySeries(frames)};
  Vec2 p{0.1, 0.2};
  for (auto _ : state) {
    benchmark::DoNotOptimize(interp(p, 0.31));
    p.x += 0.0137;
  }
}
BENCHMARK(BM_VelocityInterp);

void BM_SolverStep(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Grid2D g(n, n);
  const auto s = SpectralState::from_vorticity(sample_scalar(
      g, [](Vec2 x) { return std::cos(3.0 * x.x) * std::sin(x.y) + 0.5 * std::sin(2.0 * x.x + 5.0 * x.y); }));
  const ForcingRealization none;
  for (auto _ : state) benchmark::DoNotOptimize(rk4_step(s, 1e-3, none, 1e-4));
}
BENCHMARK(BM_SolverStep)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

// One loop of a lambda = 1 line around a twist vortex.
void BM_LambdaLine(benchmark::State& state) {
  const Grid2D g(128, 128);
  FlowMapGrid fm;
  fm.grid = g;
  fm.b = 1.0;
  for (std::size_t i = 0; i < g.nx(); ++i)
    for (std::size_t j = 0; j < g.ny(); ++j) {
      const Vec2 d = g.node(i, j) - Vec2{pi, pi};
      const double r2 = d.x * d.x + d.y * d.y, w = 2.0 * std::exp(-r2);
      // DF of the twist x -> R(w(r)) x: rotation(w) (I + w'(r)/r (perp d) d^T)
      const double k = -4.0 * std::exp(-r2);
      const Vec2 pd = perp(d);
      const Mat2 shear{1.0 + k * pd.x * d.x, k * pd.x * d.y, k * pd.y * d.x, 1.0 + k * pd.y * d.y};
      fm.position.push_back(g.node(i, j));
      fm.jacobian.push_back(rotation(w) * shear);
    }
  const auto interp =
      std::make_shared<const CGInterpolator>(cauchy_green_field(fm), static_cast<CGInterpolation>(state.range(0)));
  const EtaField eta(interp, 1.0, Branch::minus);
  LambdaLineOptions opt;
  opt.initial_direction = {0.0, 1.0};
  opt.max_arclength = 2.0 * pi;
  std::size_t points = 0;
  for (auto _ : state) {
    const LambdaLine line = integrate_lambda_line(eta, {pi + 0.6, pi}, opt);
    points = line.points.size();
    benchmark::DoNotOptimize(line);
  }
  state.counters["points"] = static_cast<double>(points);
}
BENCHMARK(BM_LambdaLine)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_CauchyGreen(benchmark::State& state) {
  Mat2 m{1.3, 0.4, -0.2, 0.9};
  for (auto _ : state) {
    benchmark::DoNotOptimize(cauchy_green(m));
    m.a += 1e-9;
  }
}
BENCHMARK(BM_CauchyGreen);

}  // namespace

BENCHMARK_MAIN();
