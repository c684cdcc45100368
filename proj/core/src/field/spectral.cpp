#include "lcs/field/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>
#include <mutex>
#include <numbers>

#include "lcs/error.hpp"

namespace lcs {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwBuffer {
  explicit FftwBuffer(std::size_t bytes) : ptr(fftw_malloc(bytes)) {
    if (!ptr) throw std::bad_alloc();
  }
  ~FftwBuffer() { fftw_free(ptr); }
  FftwBuffer(const FftwBuffer&) = delete;
  FftwBuffer& operator=(const FftwBuffer&) = delete;
  void* ptr;
};

}  // namespace

struct Fft2d::Plans {
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;
  ~Plans() {
    std::lock_guard lock(planner_mutex());
    if (r2c) fftw_destroy_plan(r2c);
    if (c2r) fftw_destroy_plan(c2r);
  }
};

Fft2d::Fft2d(const Grid2D& grid) : nx_(grid.nx()), ny_(grid.ny()) {
  static std::map<std::pair<std::size_t, std::size_t>, std::shared_ptr<const Plans>> cache;
  std::lock_guard lock(planner_mutex());
  auto& slot = cache[{nx_, ny_}];
  if (!slot) {
    auto plans = std::make_shared<Plans>();
    FftwBuffer real(sizeof(double) * nx_ * ny_);
    FftwBuffer spec(sizeof(fftw_complex) * nx_ * (ny_ / 2 + 1));
    const int n0 = static_cast<int>(nx_), n1 = static_cast<int>(ny_);
    plans->r2c = fftw_plan_dft_r2c_2d(n0, n1, static_cast<double*>(real.ptr),
                                      static_cast<fftw_complex*>(spec.ptr), FFTW_ESTIMATE);
    plans->c2r = fftw_plan_dft_c2r_2d(n0, n1, static_cast<fftw_complex*>(spec.ptr),
                                      static_cast<double*>(real.ptr), FFTW_ESTIMATE);
    if (!plans->r2c || !plans->c2r) throw NumericError("Fft2d: FFTW planning failed");
    slot = std::move(plans);
  }
  plans_ = slot;
}

void Fft2d::forward(std::span<const double> in, std::span<cplx> out) const {
  if (in.size() != nx_ * ny_ || out.size() != spectral_size())
    throw ConfigError("Fft2d::forward: size mismatch");
  FftwBuffer real(sizeof(double) * in.size());
  FftwBuffer spec(sizeof(fftw_complex) * out.size());
  std::memcpy(real.ptr, in.data(), sizeof(double) * in.size());
  fftw_execute_dft_r2c(plans_->r2c, static_cast<double*>(real.ptr), static_cast<fftw_complex*>(spec.ptr));
  const double scale = 1.0 / static_cast<double>(nx_ * ny_);
  const auto* s = static_cast<const cplx*>(spec.ptr);
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = s[k] * scale;
}

void Fft2d::inverse(std::span<const cplx> in, std::span<double> out) const {
  if (in.size() != spectral_size() || out.size() != nx_ * ny_)
    throw ConfigError("Fft2d::inverse: size mismatch");
  FftwBuffer real(sizeof(double) * out.size());
  FftwBuffer spec(sizeof(fftw_complex) * in.size());
  std::memcpy(spec.ptr, in.data(), sizeof(cplx) * in.size());
  fftw_execute_dft_c2r(plans_->c2r, static_cast<fftw_complex*>(spec.ptr), static_cast<double*>(real.ptr));
  std::memcpy(out.data(), real.ptr, sizeof(double) * out.size());
}

std::vector<cplx> Fft2d::forward(std::span<const double> in) const {
  std::vector<cplx> out(spectral_size());
  forward(in, out);
  return out;
}

std::vector<double> Fft2d::inverse(std::span<const cplx> in) const {
  std::vector<double> out(nx_ * ny_);
  inverse(in, out);
  return out;
}

Wavenumbers::Wavenumbers(const Grid2D& grid)
    : nx_(grid.nx()), ny_(grid.ny()), nyh_(grid.ny() / 2 + 1) {
  const double fx = 2.0 * std::numbers::pi / grid.lx();
  const double fy = 2.0 * std::numbers::pi / grid.ly();
  mx_.resize(nx_);
  kx_.resize(nx_);
  kx_odd_.resize(nx_);
  for (std::size_t r = 0; r < nx_; ++r) {
    const int m = r <= nx_ / 2 ? static_cast<int>(r) : static_cast<int>(r) - static_cast<int>(nx_);
    mx_[r] = m;
    kx_[r] = fx * m;
    kx_odd_[r] = (nx_ % 2 == 0 && r == nx_ / 2) ? 0.0 : kx_[r];
  }
  ky_.resize(nyh_);
  ky_odd_.resize(nyh_);
  for (std::size_t c = 0; c < nyh_; ++c) {
    ky_[c] = fy * static_cast<double>(c);
    ky_odd_[c] = (ny_ % 2 == 0 && c == ny_ / 2) ? 0.0 : ky_[c];
  }
}

double Wavenumbers::column_weight(std::size_t col) const {
  if (col == 0) return 1.0;
  if (ny_ % 2 == 0 && col == ny_ / 2) return 1.0;
  return 2.0;
}

namespace {

enum class Axis { x, y };

ScalarField2D derivative(const ScalarField2D& f, Axis axis) {
  f.require_finite("spectral derivative");
  const Fft2d fft(f.grid);
  const Wavenumbers k(f.grid);
  auto spec = fft.forward(f.values);
  for (std::size_t r = 0; r < k.nx(); ++r)
    for (std::size_t c = 0; c < k.nyh(); ++c) {
      const double m = axis == Axis::x ? k.kx_odd(r) : k.ky_odd(c);
      spec[r * k.nyh() + c] *= cplx(0.0, m);
    }
  return ScalarField2D(f.grid, fft.inverse(spec), f.time);
}

}  // namespace

ScalarField2D spectral_derivative_x(const ScalarField2D& f) { return derivative(f, Axis::x); }
ScalarField2D spectral_derivative_y(const ScalarField2D& f) { return derivative(f, Axis::y); }

VectorField2D spectral_gradient(const ScalarField2D& f) {
  f.require_finite("spectral_gradient");
  const Fft2d fft(f.grid);
  const Wavenumbers k(f.grid);
  const auto spec = fft.forward(f.values);
  std::vector<cplx> gx(spec.size()), gy(spec.size());
  for (std::size_t r = 0; r < k.nx(); ++r)
    for (std::size_t c = 0; c < k.nyh(); ++c) {
      const auto idx = r * k.nyh() + c;
      gx[idx] = spec[idx] * cplx(0.0, k.kx_odd(r));
      gy[idx] = spec[idx] * cplx(0.0, k.ky_odd(c));
    }
  return VectorField2D(f.grid, fft.inverse(gx), fft.inverse(gy), f.time);
}

ScalarField2D spectral_divergence(const VectorField2D& w) {
  w.require_finite("spectral_divergence");
  const Fft2d fft(w.grid);
  const Wavenumbers k(w.grid);
  auto su = fft.forward(w.u);
  const auto sv = fft.forward(w.v);
  for (std::size_t r = 0; r < k.nx(); ++r)
    for (std::size_t c = 0; c < k.nyh(); ++c) {
      const auto idx = r * k.nyh() + c;
      su[idx] = su[idx] * cplx(0.0, k.kx_odd(r)) + sv[idx] * cplx(0.0, k.ky_odd(c));
    }
  return ScalarField2D(w.grid, fft.inverse(su), w.time);
}

ScalarField2D spectral_curl(const VectorField2D& w) {
  w.require_finite("spectral_curl");
  const Fft2d fft(w.grid);
  const Wavenumbers k(w.grid);
  const auto su = fft.forward(w.u);
  auto sv = fft.forward(w.v);
  for (std::size_t r = 0; r < k.nx(); ++r)
    for (std::size_t c = 0; c < k.nyh(); ++c) {
      const auto idx = r * k.nyh() + c;
      sv[idx] = sv[idx] * cplx(0.0, k.kx_odd(r)) - su[idx] * cplx(0.0, k.ky_odd(c));
    }
  return ScalarField2D(w.grid, fft.inverse(sv), w.time);
}

ScalarField2D spectral_laplacian(const ScalarField2D& f) {
  f.require_finite("spectral_laplacian");
  const Fft2d fft(f.grid);
  const Wavenumbers k(f.grid);
  auto spec = fft.forward(f.values);
  for (std::size_t r = 0; r < k.nx(); ++r)
    for (std::size_t c = 0; c < k.nyh(); ++c) spec[r * k.nyh() + c] *= -k.k2(r, c);
  return ScalarField2D(f.grid, fft.inverse(spec), f.time);
}

ScalarField2D invert_laplacian_neg(const ScalarField2D& omega) {
  omega.require_finite("invert_laplacian_neg");
  double mean = 0.0, peak = 0.0;
  for (double w : omega.values) {
    mean += w;
    peak = std::max(peak, std::abs(w));
  }
  mean /= static_cast<double>(omega.values.size());
  if (std::abs(mean) > 1e-8 * peak)
    throw SolvabilityError("invert_laplacian_neg: field mean " + std::to_string(mean) +
                           " violates periodic solvability");
  const Fft2d fft(omega.grid);
  const Wavenumbers k(omega.grid);
  auto spec = fft.forward(omega.values);
  for (std::size_t r = 0; r < k.nx(); ++r)
    for (std::size_t c = 0; c < k.nyh(); ++c) {
      const double k2 = k.k2(r, c);
      spec[r * k.nyh() + c] = k2 > 0.0 ? spec[r * k.nyh() + c] / k2 : cplx(0.0, 0.0);
    }
  return ScalarField2D(omega.grid, fft.inverse(spec), omega.time);
}

}  // namespace lcs
