#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "lcs/field/grid.hpp"

namespace lcs {

using cplx = std::complex<double>;

// Real-to-complex 2D transform on a Grid2D. The half spectrum has nx rows
// and ny/2+1 columns. forward() returns amplitudes (divided by nx*ny) so that
// f(x) = sum_k fhat_k exp(i k.x); inverse() applies no scaling. Plans are
// cached per grid shape and are created with FFTW_ESTIMATE, which keeps
// results bit-reproducible from run to run. Both calls are thread-safe.
class Fft2d {
 public:
  explicit Fft2d(const Grid2D& grid);

  std::size_t nx() const { return nx_; }
  std::size_t ny() const { return ny_; }
  std::size_t nyh() const { return ny_ / 2 + 1; }
  std::size_t spectral_size() const { return nx_ * nyh(); }

  void forward(std::span<const double> in, std::span<cplx> out) const;
  // `in` is not modified.
  void inverse(std::span<const cplx> in, std::span<double> out) const;

  std::vector<cplx> forward(std::span<const double> in) const;
  std::vector<double> inverse(std::span<const cplx> in) const;

 private:
  struct Plans;
  std::size_t nx_, ny_;
  std::shared_ptr<const Plans> plans_;
};

// Physical wavenumbers of the half spectrum, plus the signed integer modes.
class Wavenumbers {
 public:
  explicit Wavenumbers(const Grid2D& grid);

  std::size_t nx() const { return nx_; }
  std::size_t nyh() const { return nyh_; }
  int mode_x(std::size_t row) const { return mx_[row]; }
  int mode_y(std::size_t col) const { return static_cast<int>(col); }
  double kx(std::size_t row) const { return kx_[row]; }
  double ky(std::size_t col) const { return ky_[col]; }
  double k2(std::size_t row, std::size_t col) const { return kx_[row] * kx_[row] + ky_[col] * ky_[col]; }
  // Wavenumbers used in odd (first) derivatives: Nyquist entries zeroed.
  double kx_odd(std::size_t row) const { return kx_odd_[row]; }
  double ky_odd(std::size_t col) const { return ky_odd_[col]; }
  // Multiplicity of a half-spectrum column in the full spectrum (1 or 2).
  double column_weight(std::size_t col) const;

 private:
  std::size_t nx_, ny_, nyh_;
  std::vector<int> mx_;
  std::vector<double> kx_, ky_, kx_odd_, ky_odd_;
};

ScalarField2D spectral_derivative_x(const ScalarField2D& f);
ScalarField2D spectral_derivative_y(const ScalarField2D& f);
// (df/dx, df/dy) through the multipliers i*k.
VectorField2D spectral_gradient(const ScalarField2D& f);
ScalarField2D spectral_divergence(const VectorField2D& w);
// dv/dx - du/dy.
ScalarField2D spectral_curl(const VectorField2D& w);
ScalarField2D spectral_laplacian(const ScalarField2D& f);

// psi with psi_hat(k) = omega_hat(k) / |k|^2 and psi_hat(0) = 0, i.e.
// psi = -Laplacian^{-1} omega. Throws SolvabilityError when the mean of
// omega exceeds 1e-8 of its max magnitude.
ScalarField2D invert_laplacian_neg(const ScalarField2D& omega);

}  // namespace lcs
