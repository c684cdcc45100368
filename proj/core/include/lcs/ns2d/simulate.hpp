#pragma once

#include <filesystem>
#include <functional>
#include <vector>

#include "lcs/ns2d/solver.hpp"

namespace lcs {

struct RunLogRow {
  double time = 0.0;
  double dt = 0.0;
  double energy = 0.0;
  double enstrophy = 0.0;
  double amplitude = 0.0;
  double eddy_turnover = 0.0;  // 1 / rms vorticity
};

// Random-phase field with per-mode |omega_hat|^2 ~ exp(-(k/k_peak)^2), so the
// shell spectrum goes like k exp(-(k/k_peak)^2); zero mean, rms vorticity
// set to config.initial_rms_vorticity, then decayed without forcing for
// config.spinup_time. The result is stamped t = 0.
SpectralState initial_condition(const SolverConfig& config);

using FrameSink = std::function<void(std::size_t index, const SpectralState& state, const VectorField2D& velocity)>;

struct SimulationSummary {
  std::vector<RunLogRow> log;
  SpectralState final_state;
  std::size_t frames = 0;
  std::size_t accepted_steps = 0;
  std::size_t rejected_steps = 0;
};

// Integrates from `initial` to config.t_end, emitting frames at multiples of
// config.output_dt. Forcing phases are redrawn at the start of every output
// interval from a stream seeded by config.seed.
SimulationSummary simulate(const SolverConfig& config, const SpectralState& initial, const FrameSink& sink);
SimulationSummary simulate(const SolverConfig& config, const FrameSink& sink);

struct Simulation {
  VelocitySeries series;
  SimulationSummary summary;
};
// Keeps every frame in memory.
Simulation simulate(const SolverConfig& config);

void write_run_log(const std::vector<RunLogRow>& rows, const std::filesystem::path& path);

}  // namespace lcs
