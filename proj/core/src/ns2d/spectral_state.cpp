#include "lcs/ns2d/spectral_state.hpp"

#include <cmath>
#include <cstdlib>

namespace lcs {

SpectralState::SpectralState(const Grid2D& g, double t)
    : grid(g), omega_hat(g.nx() * (g.ny() / 2 + 1)), time(t) {}

SpectralState SpectralState::from_vorticity(const ScalarField2D& omega) {
  omega.require_finite("SpectralState::from_vorticity");
  SpectralState s(omega.grid, omega.time);
  s.omega_hat = Fft2d(omega.grid).forward(omega.values);
  apply_dealias(s.grid, s.omega_hat);
  return s;
}

ScalarField2D SpectralState::vorticity() const { return ScalarField2D(grid, Fft2d(grid).inverse(omega_hat), time); }

bool dealias_keep(const Wavenumbers& k, std::size_t row, std::size_t col, const Grid2D& g) {
  return 3 * static_cast<std::size_t>(std::abs(k.mode_x(row))) <= g.nx() &&
         3 * static_cast<std::size_t>(k.mode_y(col)) <= g.ny();
}

void apply_dealias(const Grid2D& g, std::vector<cplx>& spec) {
  const Wavenumbers k(g);
  for (std::size_t r = 0; r < k.nx(); ++r)
    for (std::size_t c = 0; c < k.nyh(); ++c)
      if (!dealias_keep(k, r, c, g)) spec[r * k.nyh() + c] = 0.0;
}

void enforce_hermitian(const Grid2D& g, std::vector<cplx>& spec) {
  const std::size_t nx = g.nx(), nyh = g.ny() / 2 + 1;
  std::vector<std::size_t> cols{0};
  if (g.ny() % 2 == 0) cols.push_back(g.ny() / 2);
  for (std::size_t c : cols) {
    spec[c] = spec[c].real();
    if (nx % 2 == 0) spec[(nx / 2) * nyh + c] = spec[(nx / 2) * nyh + c].real();
    for (std::size_t r = 1; r < (nx + 1) / 2; ++r) spec[(nx - r) * nyh + c] = std::conj(spec[r * nyh + c]);
  }
}

VectorField2D velocity_from_vorticity(const SpectralState& state) {
  const Wavenumbers k(state.grid);
  const Fft2d fft(state.grid);
  std::vector<cplx> uh(state.omega_hat.size()), vh(state.omega_hat.size());
  for (std::size_t r = 0; r < k.nx(); ++r)
    for (std::size_t c = 0; c < k.nyh(); ++c) {
      const auto idx = r * k.nyh() + c;
      const double k2 = k.k2(r, c);
      if (k2 == 0.0) continue;
      const cplx psi = state.omega_hat[idx] / k2;
      uh[idx] = cplx(0.0, k.ky_odd(c)) * psi;
      vh[idx] = -cplx(0.0, k.kx_odd(r)) * psi;
    }
  return VectorField2D(state.grid, fft.inverse(uh), fft.inverse(vh), state.time);
}

double kinetic_energy(const SpectralState& state) {
  const Wavenumbers k(state.grid);
  double e = 0.0;
  for (std::size_t r = 0; r < k.nx(); ++r)
    for (std::size_t c = 0; c < k.nyh(); ++c) {
      const double k2 = k.k2(r, c);
      if (k2 > 0.0) e += k.column_weight(c) * std::norm(state.omega_hat[r * k.nyh() + c]) / k2;
    }
  return 0.5 * e;
}

double enstrophy(const SpectralState& state) {
  const Wavenumbers k(state.grid);
  double z = 0.0;
  for (std::size_t r = 0; r < k.nx(); ++r)
    for (std::size_t c = 0; c < k.nyh(); ++c) z += k.column_weight(c) * std::norm(state.omega_hat[r * k.nyh() + c]);
  return 0.5 * z;
}

std::vector<double> enstrophy_spectrum(const SpectralState& state) {
  const Wavenumbers k(state.grid);
  std::vector<double> z;
  for (std::size_t r = 0; r < k.nx(); ++r)
    for (std::size_t c = 0; c < k.nyh(); ++c) {
      const auto shell = static_cast<std::size_t>(std::floor(std::sqrt(k.k2(r, c)) + 0.5));
      if (shell >= z.size()) z.resize(shell + 1, 0.0);
      z[shell] += 0.5 * k.column_weight(c) * std::norm(state.omega_hat[r * k.nyh() + c]);
    }
  return z;
}

}  // namespace lcs
