#include "cfprop/spectral.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cfprop {

namespace {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

SpatialGrid SpatialGrid::make(double x0, double xN, int n_points) {
  if (!(xN > x0)) {
    throw std::invalid_argument("SpatialGrid: xN must exceed x0");
  }
  if (n_points < 4 || !is_power_of_two(n_points)) {
    throw std::invalid_argument("SpatialGrid: n_points must be a power of two >= 4");
  }
  SpatialGrid g;
  g.x0 = x0;
  g.xN = xN;
  g.n_points = n_points;
  g.dx = (xN - x0) / n_points;
  g.points.resize(n_points);
  g.wavenumbers.resize(n_points);
  const double base = 2.0 * std::numbers::pi / (xN - x0);
  for (int j = 0; j < n_points; ++j) {
    g.points[j] = x0 + j * g.dx;
    const int m = (j < n_points / 2) ? j : j - n_points;
    g.wavenumbers[j] = base * m;
  }
  return g;
}

FourierTransform::FourierTransform(int n) : n_(n) {
  if (!is_power_of_two(n) || n < 2) {
    throw std::invalid_argument("FourierTransform: size must be a power of two >= 2");
  }
  bit_reversal_.resize(n);
  int log2n = 0;
  while ((1 << log2n) < n) ++log2n;
  for (int i = 0; i < n; ++i) {
    int r = 0;
    for (int b = 0; b < log2n; ++b) {
      r = (r << 1) | ((i >> b) & 1);
    }
    bit_reversal_[i] = r;
  }
  twiddles_.resize(n / 2);
  for (int j = 0; j < n / 2; ++j) {
    const double phi = -2.0 * std::numbers::pi * j / n;
    twiddles_[j] = Complex(std::cos(phi), std::sin(phi));
  }
}

void FourierTransform::transform(WaveVector& u, bool inverse) const {
  if (u.size() != n_) {
    throw std::invalid_argument("FourierTransform: vector length does not match plan size");
  }
  Complex* a = u.data();
  for (int i = 0; i < n_; ++i) {
    const int r = bit_reversal_[i];
    if (r > i) std::swap(a[i], a[r]);
  }
  for (int len = 2; len <= n_; len <<= 1) {
    const int half = len >> 1;
    const int stride = n_ / len;
    for (int start = 0; start < n_; start += len) {
      for (int j = 0; j < half; ++j) {
        Complex w = twiddles_[j * stride];
        if (inverse) w = std::conj(w);
        const Complex lo = a[start + j];
        const Complex hi = a[start + j + half] * w;
        a[start + j] = lo + hi;
        a[start + j + half] = lo - hi;
      }
    }
  }
  if (inverse) {
    u *= 1.0 / n_;
  }
}

void FourierTransform::forward(WaveVector& u, FftCounter& counter) const {
  transform(u, false);
  ++counter.transforms;
}

void FourierTransform::inverse(WaveVector& u, FftCounter& counter) const {
  transform(u, true);
  ++counter.transforms;
}

KineticOperator::KineticOperator(const SpatialGrid& grid, double mu)
    : grid_(grid), fft_(grid.n_points), mu_(mu) {
  if (!(mu > 0.0)) {
    throw std::invalid_argument("KineticOperator: mass must be positive");
  }
  multiplier_ = grid_.wavenumbers.array().square() / (2.0 * mu);
}

void KineticOperator::apply(const WaveVector& in, WaveVector& out, FftCounter& counter) const {
  out = in;
  apply_in_place(out, counter);
}

void KineticOperator::apply_in_place(WaveVector& u, FftCounter& counter) const {
  fft_.forward(u, counter);
  u.array() *= multiplier_.array();
  fft_.inverse(u, counter);
}

RealVector spectral_derivative(const RealVector& values, const SpatialGrid& grid,
                               const FourierTransform& fft, FftCounter& counter) {
  if (values.size() != grid.n_points) {
    throw std::invalid_argument("spectral_derivative: length mismatch");
  }
  WaveVector work = values.cast<Complex>();
  fft.forward(work, counter);
  const int n = grid.n_points;
  for (int j = 0; j < n; ++j) {
    if (j == n / 2) {
      work[j] = Complex(0.0, 0.0);  // Nyquist has no conjugate partner
    } else {
      work[j] *= Complex(0.0, grid.wavenumbers[j]);
    }
  }
  fft.inverse(work, counter);
  return work.real();
}

}  // namespace cfprop
