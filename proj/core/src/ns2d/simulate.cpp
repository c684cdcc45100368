#include "lcs/ns2d/simulate.hpp"

#include <cmath>
#include <fstream>
#include <numbers>

#include "lcs/error.hpp"
#include "lcs/field/io.hpp"

namespace lcs {

namespace {

constexpr std::uint64_t kForcingStream = 0x9E3779B97F4A7C15ull;

RunLogRow log_row(const SpectralState& s, double dt, double amplitude) {
  RunLogRow row;
  row.time = s.time;
  row.dt = dt;
  row.energy = kinetic_energy(s);
  row.enstrophy = enstrophy(s);
  row.amplitude = amplitude;
  const double rms = std::sqrt(2.0 * row.enstrophy);
  row.eddy_turnover = rms > 0.0 ? 1.0 / rms : INFINITY;
  return row;
}

}  // namespace

SpectralState initial_condition(const SolverConfig& config) {
  config.validate();
  const Grid2D g = Grid2D::square(config.n);
  const Wavenumbers k(g);
  std::mt19937_64 rng(config.seed);
  SpectralState s(g);
  for (std::size_t r = 0; r < k.nx(); ++r)
    for (std::size_t c = 0; c < k.nyh(); ++c) {
      const double kk = std::sqrt(k.k2(r, c));
      const double phase = 2.0 * std::numbers::pi * uniform01(rng);
      if (kk == 0.0 || !dealias_keep(k, r, c, g)) continue;
      const double q = kk / config.initial_peak_k;
      s.omega_hat[r * k.nyh() + c] = std::polar(std::exp(-0.5 * q * q), phase);
    }
  enforce_hermitian(g, s.omega_hat);
  apply_dealias(g, s.omega_hat);
  const double rms = std::sqrt(2.0 * enstrophy(s));
  if (rms > 0.0)
    for (auto& w : s.omega_hat) w *= config.initial_rms_vorticity / rms;
  if (config.spinup_time > 0.0) {
    SolverConfig decay = config;
    decay.forcing = false;
    Solver solver(decay, s);
    ForcingRealization none;
    solver.advance_to(config.spinup_time, none, false);
    s = solver.state();
  }
  s.time = 0.0;
  return s;
}

SimulationSummary simulate(const SolverConfig& config, const SpectralState& initial, const FrameSink& sink) {
  config.validate();
  if (initial.grid.nx() != config.n || initial.grid.ny() != config.n)
    throw ConfigError("simulate: initial state does not match the configured resolution");
  SimulationSummary summary;
  std::mt19937_64 rng(config.seed ^ kForcingStream);
  Solver solver(config, initial);
  const double t0 = initial.time;
  const auto intervals = static_cast<std::size_t>(std::floor(config.t_end / config.output_dt * (1.0 + 1e-12)));

  auto emit = [&](std::size_t index, double amplitude) {
    const SpectralState& s = solver.state();
    const VectorField2D vel = velocity_from_vorticity(s);
    vel.require_finite("simulate");
    summary.log.push_back(log_row(s, solver.dt(), amplitude));
    if (sink) sink(index, s, vel);
    ++summary.frames;
  };

  ForcingRealization forcing;
  if (config.forcing) {
    forcing = draw_forcing(initial.grid, config.k_lo, config.k_hi, config.output_dt, rng);
    forcing.amplitude = forcing_amplitude(solver.state(), forcing, config.nu);
  }
  emit(0, forcing.amplitude);
  for (std::size_t k = 0; k < intervals; ++k) {
    if (config.forcing && k > 0) forcing = draw_forcing(initial.grid, config.k_lo, config.k_hi, config.output_dt, rng);
    solver.advance_to(t0 + static_cast<double>(k + 1) * config.output_dt, forcing, config.forcing);
    emit(k + 1, forcing.amplitude);
  }
  summary.final_state = solver.state();
  summary.accepted_steps = solver.accepted_steps();
  summary.rejected_steps = solver.rejected_steps();
  return summary;
}

SimulationSummary simulate(const SolverConfig& config, const FrameSink& sink) {
  return simulate(config, initial_condition(config), sink);
}

Simulation simulate(const SolverConfig& config) {
  std::vector<VectorField2D> frames;
  auto summary = simulate(config, [&](std::size_t, const SpectralState&, const VectorField2D& v) { frames.push_back(v); });
  return {VelocitySeries(std::move(frames)), std::move(summary)};
}

void write_run_log(const std::vector<RunLogRow>& rows, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write run log " + path.string());
  out << "time\tdt\tenergy\tenstrophy\tA\teddy_turnover\n";
  for (const auto& r : rows)
    out << format_double(r.time) << '\t' << format_double(r.dt) << '\t' << format_double(r.energy) << '\t'
        << format_double(r.enstrophy) << '\t' << format_double(r.amplitude) << '\t' << format_double(r.eddy_turnover)
        << '\n';
  if (!out) throw IoError("failed writing run log " + path.string());
}

}  // namespace lcs
