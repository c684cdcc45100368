#include "lcs/ns2d/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "lcs/error.hpp"

namespace lcs {

void SolverConfig::validate() const {
  if (n < 8) throw ConfigError("solver: n must be >= 8");
  if (!(nu >= 0.0)) throw ConfigError("solver: nu must be >= 0");
  if (!(t_end >= 0.0)) throw ConfigError("solver: t_end must be >= 0");
  if (!(output_dt > 0.0)) throw ConfigError("solver: output_dt must be > 0");
  if (!(k_lo >= 0.0 && k_lo < k_hi)) throw ConfigError("solver: forcing band needs 0 <= k_lo < k_hi");
  if (!(k_hi < static_cast<double>(n) / 3.0)) throw ConfigError("solver: k_hi must stay below n/3");
  if (!(tolerance > 0.0)) throw ConfigError("solver: tolerance must be > 0");
  if (!(dt_initial > 0.0)) throw ConfigError("solver: dt_initial must be > 0");
  if (!(dt_min > 0.0)) throw ConfigError("solver: dt_min must be > 0");
  if (!(spinup_time >= 0.0)) throw ConfigError("solver: spinup_time must be >= 0");
  if (!(initial_rms_vorticity >= 0.0)) throw ConfigError("solver: initial_rms_vorticity must be >= 0");
  if (!(initial_peak_k > 0.0)) throw ConfigError("solver: initial_peak_k must be > 0");
}

ForcingRealization draw_forcing(const Grid2D& g, double k_lo, double k_hi, double hold, std::mt19937_64& rng) {
  const Wavenumbers k(g);
  const bool nyquist_col = g.ny() % 2 == 0;
  ForcingRealization f;
  f.hold = hold;
  for (std::size_t r = 0; r < k.nx(); ++r)
    for (std::size_t c = 0; c < k.nyh(); ++c) {
      const double kk = std::sqrt(k.k2(r, c));
      if (!(kk > k_lo && kk < k_hi) || !dealias_keep(k, r, c, g)) continue;
      const bool self_conj_col = c == 0 || (nyquist_col && c == g.ny() / 2);
      if (self_conj_col && k.mode_x(r) <= 0) continue;
      const double phase = 2.0 * std::numbers::pi * uniform01(rng);
      const cplx w = std::polar(1.0, phase);
      f.modes.push_back(r * k.nyh() + c);
      f.shape.push_back(w);
      f.norm2 += 2.0;
      if (self_conj_col) {
        f.modes.push_back((k.nx() - r) * k.nyh() + c);
        f.shape.push_back(std::conj(w));
      }
    }
  return f;
}

double forcing_amplitude(const SpectralState& state, const ForcingRealization& forcing, double nu) {
  if (nu <= 0.0 || forcing.norm2 <= 0.0 || forcing.hold <= 0.0) return 0.0;
  const Wavenumbers k(state.grid);
  double loss = 0.0;
  for (std::size_t r = 0; r < k.nx(); ++r)
    for (std::size_t c = 0; c < k.nyh(); ++c)
      loss += k.column_weight(c) * k.k2(r, c) * 0.5 * std::norm(state.omega_hat[r * k.nyh() + c]);
  loss *= nu;
  if (loss <= 0.0) return 0.0;
  return std::sqrt(2.0 * loss / (forcing.hold * forcing.norm2));
}

std::vector<cplx> rhs(const SpectralState& state, const ForcingRealization& forcing, double nu) {
  const Grid2D& g = state.grid;
  const Wavenumbers k(g);
  const Fft2d fft(g);
  const std::size_t ns = state.omega_hat.size();
  std::vector<cplx> uh(ns), vh(ns), wxh(ns), wyh(ns);
  for (std::size_t r = 0; r < k.nx(); ++r)
    for (std::size_t c = 0; c < k.nyh(); ++c) {
      const auto idx = r * k.nyh() + c;
      const cplx w = state.omega_hat[idx];
      const cplx ikx(0.0, k.kx_odd(r)), iky(0.0, k.ky_odd(c));
      const double k2 = k.k2(r, c);
      if (k2 > 0.0) {
        uh[idx] = iky * w / k2;
        vh[idx] = -ikx * w / k2;
      }
      wxh[idx] = ikx * w;
      wyh[idx] = iky * w;
    }
  const std::size_t np = g.size();
  std::vector<double> u(np), v(np), wx(np), wy(np);
  fft.inverse(uh, u);
  fft.inverse(vh, v);
  fft.inverse(wxh, wx);
  fft.inverse(wyh, wy);
  for (std::size_t i = 0; i < np; ++i) u[i] = -(u[i] * wx[i] + v[i] * wy[i]);
  std::vector<cplx> out(ns);
  fft.forward(u, out);
  for (std::size_t r = 0; r < k.nx(); ++r)
    for (std::size_t c = 0; c < k.nyh(); ++c) {
      const auto idx = r * k.nyh() + c;
      if (!dealias_keep(k, r, c, g)) {
        out[idx] = 0.0;
        continue;
      }
      out[idx] -= nu * k.k2(r, c) * state.omega_hat[idx];
    }
  out[0] = 0.0;
  if (forcing.amplitude != 0.0)
    for (std::size_t m = 0; m < forcing.modes.size(); ++m) out[forcing.modes[m]] += forcing.amplitude * forcing.shape[m];
  return out;
}

namespace {

SpectralState axpy(const SpectralState& s, double a, const std::vector<cplx>& d) {
  SpectralState out = s;
  for (std::size_t i = 0; i < d.size(); ++i) out.omega_hat[i] += a * d[i];
  return out;
}

}  // namespace

SpectralState rk4_step(const SpectralState& state, double dt, const ForcingRealization& forcing, double nu) {
  const auto k1 = rhs(state, forcing, nu);
  const auto k2 = rhs(axpy(state, 0.5 * dt, k1), forcing, nu);
  const auto k3 = rhs(axpy(state, 0.5 * dt, k2), forcing, nu);
  const auto k4 = rhs(axpy(state, dt, k3), forcing, nu);
  SpectralState out = state;
  for (std::size_t i = 0; i < k1.size(); ++i)
    out.omega_hat[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  out.time = state.time + dt;
  return out;
}

StepResult step_rk4(const SpectralState& state, double dt, const ForcingRealization& forcing, double nu,
                    double tol, double dt_min) {
  if (!(dt > 0.0)) throw ConfigError("step_rk4: dt must be > 0");
  StepResult res;
  for (;;) {
    if (dt < dt_min)
      throw StiffnessError("step_rk4: step size " + std::to_string(dt) + " underflowed at t=" +
                           std::to_string(state.time));
    const SpectralState full = rk4_step(state, dt, forcing, nu);
    const SpectralState half = rk4_step(rk4_step(state, 0.5 * dt, forcing, nu), 0.5 * dt, forcing, nu);
    double diff = 0.0, scale = 0.0;
    bool finite = true;
    for (std::size_t i = 0; i < half.omega_hat.size(); ++i) {
      const cplx d = half.omega_hat[i] - full.omega_hat[i];
      if (!std::isfinite(d.real()) || !std::isfinite(d.imag())) finite = false;
      diff = std::max(diff, std::abs(d));
      scale = std::max(scale, std::abs(half.omega_hat[i]));
    }
    const double err = !finite ? INFINITY : (diff == 0.0 ? 0.0 : diff / 15.0 / scale);
    if (err <= tol) {
      res.state = half;
      for (std::size_t i = 0; i < half.omega_hat.size(); ++i)
        res.state.omega_hat[i] += (half.omega_hat[i] - full.omega_hat[i]) / 15.0;
      res.state.time = state.time + dt;
      res.dt_taken = dt;
      res.dt_next = err < tol / 32.0 ? 2.0 * dt : dt;
      res.error = err;
      return res;
    }
    dt *= 0.5;
    ++res.rejections;
  }
}

Solver::Solver(const SolverConfig& config, SpectralState initial)
    : config_(config), state_(std::move(initial)), dt_(config.dt_initial) {}

void Solver::advance_to(double t_target, ForcingRealization& forcing, bool refresh) {
  while (state_.time < t_target) {
    const double remaining = t_target - state_.time;
    if (remaining <= 1e-12 * std::max(1.0, std::abs(t_target))) {
      state_.time = t_target;
      break;
    }
    const bool clamped = remaining <= std::max(dt_ * (1.0 + 1e-6), dt_ + 100.0 * config_.dt_min);
    const double h = clamped ? remaining : dt_;
    if (refresh) forcing.amplitude = config_.forcing ? forcing_amplitude(state_, forcing, config_.nu) : 0.0;
    StepResult res = step_rk4(state_, h, forcing, config_.nu, config_.tolerance, config_.dt_min);
    rejected_ += static_cast<std::size_t>(res.rejections);
    ++accepted_;
    state_ = std::move(res.state);
    if (clamped && res.rejections == 0) {
      state_.time = t_target;
    } else {
      dt_ = res.dt_next;
    }
  }
}

}  // namespace lcs
