#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace cfprop {

using Complex = std::complex<double>;
using WaveVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Counts single complex transforms; the canonical cost unit is one
/// forward+inverse pair.
struct FftCounter {
  std::int64_t transforms = 0;
  double pairs() const { return 0.5 * static_cast<double>(transforms); }
  void reset() { transforms = 0; }
};

/// Periodic grid on [x0, xN): points x_j = x0 + j*dx, j = 0..n-1.
/// Wavenumbers are stored in FFT layout [0..n/2-1, -n/2..-1] scaled by
/// 2*pi/L; the Nyquist mode is assigned k = -pi*n/L so that k^2 stays real
/// and the kinetic operator Hermitian.
struct SpatialGrid {
  double x0 = 0.0;
  double xN = 1.0;
  int n_points = 0;
  double dx = 0.0;
  RealVector points;
  RealVector wavenumbers;

  static SpatialGrid make(double x0, double xN, int n_points);
  double length() const { return xN - x0; }
};

/// Radix-2 in-place complex FFT plan for a fixed power-of-two size.
/// Forward transform is unnormalized; the inverse carries the 1/N factor.
/// Immutable after construction, safe to share across workers; per-worker
/// counters keep the cost accounting exact.
class FourierTransform {
 public:
  explicit FourierTransform(int n);

  void forward(WaveVector& u, FftCounter& counter) const;
  void inverse(WaveVector& u, FftCounter& counter) const;
  int size() const { return n_; }

 private:
  void transform(WaveVector& u, bool inverse) const;

  int n_;
  std::vector<int> bit_reversal_;
  std::vector<Complex> twiddles_;  // exp(-2*pi*i*j/n), j < n/2
};

/// Action of T = F^{-1} diag(k^2 / (2*mu)) F. One call costs one FFT pair.
class KineticOperator {
 public:
  KineticOperator(const SpatialGrid& grid, double mu);

  void apply(const WaveVector& in, WaveVector& out, FftCounter& counter) const;
  void apply_in_place(WaveVector& u, FftCounter& counter) const;

  const SpatialGrid& grid() const { return grid_; }
  const FourierTransform& plan() const { return fft_; }
  double mu() const { return mu_; }

 private:
  SpatialGrid grid_;
  FourierTransform fft_;
  double mu_;
  RealVector multiplier_;  // k^2 / (2*mu)
};

/// Spectral first derivative of a real periodic sample vector. The Nyquist
/// mode has no odd-symmetric partner and is zeroed to keep the result real.
/// Costs one FFT pair; only meaningful for smooth periodic profiles.
RealVector spectral_derivative(const RealVector& values, const SpatialGrid& grid,
                               const FourierTransform& fft, FftCounter& counter);

}  // namespace cfprop
