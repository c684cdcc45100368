#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "lcs/ns2d/spectral_state.hpp"

namespace lcs {

struct SolverConfig {
  std::size_t n = 512;
  double nu = 1e-5;
  double t_end = 50.0;
  double output_dt = 0.2;
  double k_lo = 3.5;
  double k_hi = 4.5;
  std::uint64_t seed = 1;
  double tolerance = 1e-6;
  double dt_initial = 1e-2;
  double dt_min = 1e-10;
  double spinup_time = 5.0;
  double initial_rms_vorticity = 1.0;
  double initial_peak_k = 6.0;
  bool forcing = true;

  // Throws ConfigError.
  void validate() const;
};

// Unit-magnitude random-phase vorticity forcing on the band k_lo < |k| < k_hi,
// scaled by `amplitude`.
struct ForcingRealization {
  std::vector<std::size_t> modes;  // half-spectrum indices
  std::vector<cplx> shape;
  double norm2 = 0.0;  // sum of |shape|^2 over the full spectrum
  double amplitude = 0.0;
  double hold = 0.0;  // time the phases stay fixed

  bool empty() const { return modes.empty() || amplitude == 0.0; }
};

// Portable uniform draw in [0, 1).
inline double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

ForcingRealization draw_forcing(const Grid2D& g, double k_lo, double k_hi, double hold, std::mt19937_64& rng);

// Amplitude whose mean enstrophy injection over `hold`, 1/2 A^2 hold norm2,
// matches the viscous loss nu sum |k|^2 1/2 |omega_hat|^2.
double forcing_amplitude(const SpectralState& state, const ForcingRealization& forcing, double nu);

// d(omega_hat)/dt = -(u.grad omega)^ - nu |k|^2 omega_hat + A f_hat, dealiased.
std::vector<cplx> rhs(const SpectralState& state, const ForcingRealization& forcing, double nu);

// One classical RK4 step.
SpectralState rk4_step(const SpectralState& state, double dt, const ForcingRealization& forcing, double nu);

struct StepResult {
  SpectralState state;
  double dt_taken = 0.0;
  double dt_next = 0.0;
  double error = 0.0;
  int rejections = 0;
};

// Step-doubling RK4 with local extrapolation. The error (y_half - y_full)/15
// is measured in max norm relative to max |omega_hat|; dt halves on
// rejection and doubles when the error is below tol/32. Throws
// StiffnessError once dt drops below dt_min.
StepResult step_rk4(const SpectralState& state, double dt, const ForcingRealization& forcing, double nu,
                    double tol, double dt_min = 1e-10);

class Solver {
 public:
  Solver(const SolverConfig& config, SpectralState initial);

  const SpectralState& state() const { return state_; }
  double dt() const { return dt_; }
  std::size_t accepted_steps() const { return accepted_; }
  std::size_t rejected_steps() const { return rejected_; }

  // Adaptive steps until state().time == t_target exactly. The forcing
  // amplitude is refreshed at the start of every step when `refresh` is set.
  void advance_to(double t_target, ForcingRealization& forcing, bool refresh = true);

 private:
  SolverConfig config_;
  SpectralState state_;
  double dt_;
  std::size_t accepted_ = 0, rejected_ = 0;
};

}  // namespace lcs
