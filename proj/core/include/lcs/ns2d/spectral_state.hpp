#pragma once

#include <vector>

#include "lcs/field/grid.hpp"
#include "lcs/field/spectral.hpp"

namespace lcs {

// Fourier coefficients of vorticity in the half-spectrum layout of Fft2d,
// normalised so that omega(x) = sum_k omega_hat(k) exp(i k.x).
struct SpectralState {
  Grid2D grid;
  std::vector<cplx> omega_hat;
  double time = 0.0;

  SpectralState() = default;
  explicit SpectralState(const Grid2D& g, double t = 0.0);

  // Transforms, then zeroes the dealiased modes.
  static SpectralState from_vorticity(const ScalarField2D& omega);
  ScalarField2D vorticity() const;
};

// 2/3 rule: a mode survives when 3|m_x| <= nx and 3|m_y| <= ny.
bool dealias_keep(const Wavenumbers& k, std::size_t row, std::size_t col, const Grid2D& g);
void apply_dealias(const Grid2D& g, std::vector<cplx>& spec);

// Makes column 0 (and the Nyquist column) conjugate symmetric across rows,
// copying the m > 0 half onto m < 0.
void enforce_hermitian(const Grid2D& g, std::vector<cplx>& spec);

// u = d(psi)/dy, v = -d(psi)/dx with psi_hat = omega_hat / |k|^2.
VectorField2D velocity_from_vorticity(const SpectralState& state);

// Domain means: 1/2 <|u|^2> and 1/2 <omega^2>.
double kinetic_energy(const SpectralState& state);
double enstrophy(const SpectralState& state);
// Z(k), k = 0..kmax, summed over annuli k-1/2 <= |k| < k+1/2 (in units of
// the fundamental wavenumber).
std::vector<double> enstrophy_spectrum(const SpectralState& state);

}  // namespace lcs
