#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "iclf/error.hpp"

namespace iclf {

using Complex = std::complex<double>;

namespace fft_detail {

inline bool is_power_of_two(std::size_t n) { return n && !(n & (n - 1)); }

// Iterative radix-2 Cooley-Tukey.  sign = -1 forward, +1 inverse
// (inverse includes the 1/N scaling).
inline void transform(std::vector<Complex>& a, int sign) {
  const std::size_t n = a.size();
  if (!is_power_of_two(n))
    throw Error(ErrorCode::BadInput, "FFT size must be a power of two");
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  const double pi = std::acos(-1.0);
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = sign * 2.0 * pi / static_cast<double>(len);
    const Complex wl = std::polar(1.0, ang);
    for (std::size_t i = 0; i < n; i += len) {
      Complex w(1.0);
      for (std::size_t j = 0; j < len / 2; ++j) {
        const Complex even = a[i + j];
        const Complex odd = a[i + j + len / 2] * w;
        a[i + j] = even + odd;
        a[i + j + len / 2] = even - odd;
        w *= wl;
      }
    }
  }
  if (sign > 0)
    for (Complex& x : a) x /= static_cast<double>(n);
}

}  // namespace fft_detail

// Fourier coefficients c_k = (1/N) sum f_j exp(-2 pi i k j / N) of a real
// field on the uniform periodic grid u_j = j/N.
inline std::vector<Complex> spectrum(const std::vector<double>& f) {
  std::vector<Complex> c(f.begin(), f.end());
  fft_detail::transform(c, -1);
  for (Complex& x : c) x /= static_cast<double>(f.size());
  return c;
}

inline std::vector<double> from_spectrum(std::vector<Complex> c) {
  for (Complex& x : c) x *= static_cast<double>(c.size());
  fft_detail::transform(c, +1);
  std::vector<double> f(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) f[i] = c[i].real();
  return f;
}

// Signed mode number of bin k.
inline long mode_of(std::size_t k, std::size_t n) {
  return k <= n / 2 ? static_cast<long>(k)
                    : static_cast<long>(k) - static_cast<long>(n);
}

// p-th spectral u-derivative on the unit-period grid.  The Nyquist mode is
// dropped for odd p (it has no well-defined odd derivative on a real grid).
inline std::vector<double> spectral_derivative_u(const std::vector<double>& f,
                                                 int p) {
  const std::size_t n = f.size();
  auto c = spectrum(f);
  const double two_pi = 2.0 * std::acos(-1.0);
  for (std::size_t k = 0; k < n; ++k) {
    const long m = mode_of(k, n);
    if (p % 2 == 1 && k == n / 2) {
      c[k] = 0.0;
      continue;
    }
    Complex factor(1.0);
    const Complex im(0.0, two_pi * static_cast<double>(m));
    for (int j = 0; j < p; ++j) factor *= im;
    c[k] *= factor;
  }
  return from_spectrum(std::move(c));
}

// Zero all modes with |k| > N/3 (the 2/3 rule for quadratic products).
inline std::vector<double> dealias_two_thirds(const std::vector<double>& f) {
  const std::size_t n = f.size();
  auto c = spectrum(f);
  const long cutoff = static_cast<long>(n) / 3;
  for (std::size_t k = 0; k < n; ++k)
    if (std::labs(mode_of(k, n)) > cutoff) c[k] = 0.0;
  return from_spectrum(std::move(c));
}

// Fraction of spectral energy above 2/3 of the Nyquist mode.
inline double tail_energy_fraction(const std::vector<double>& f) {
  const std::size_t n = f.size();
  const auto c = spectrum(f);
  const long cutoff = static_cast<long>(n) / 3;
  double tail = 0.0, total = 0.0;
  for (std::size_t k = 1; k < n; ++k) {
    const double e = std::norm(c[k]);
    total += e;
    if (std::labs(mode_of(k, n)) > cutoff) tail += e;
  }
  return total > 0.0 ? tail / total : 0.0;
}

inline void check_resolved(const std::vector<double>& f,
                           double max_fraction = 0.01) {
  const std::size_t n = f.size();
  const auto c = spectrum(f);
  const long cutoff = static_cast<long>(n) / 3;
  double tail = 0.0, total = 0.0;
  for (std::size_t k = 1; k < n; ++k) {
    const double e = std::norm(c[k]);
    total += e;
    if (std::labs(mode_of(k, n)) > cutoff) tail += e;
  }
  // A profile whose fluctuation about the mean sits at rounding level is
  // resolved no matter how its noise floor is distributed.
  if (total <= 1e-14 * std::max(1.0, std::norm(c[0]))) return;
  if (tail > max_fraction * total)
    throw Error(ErrorCode::Resolution,
                "spectral tail above 2/3 Nyquist exceeds 1% of energy");
}

// Evaluate the trigonometric interpolant of a real grid field at an
// arbitrary point u (period 1).
inline double fourier_eval(const std::vector<Complex>& c, double u) {
  const std::size_t n = c.size();
  const double two_pi = 2.0 * std::acos(-1.0);
  double acc = c[0].real();
  for (std::size_t k = 1; k < n / 2; ++k) {
    const double ph = two_pi * static_cast<double>(k) * u;
    acc += 2.0 * (c[k].real() * std::cos(ph) - c[k].imag() * std::sin(ph));
  }
  acc += c[n / 2].real() *
         std::cos(two_pi * static_cast<double>(n / 2) * u);
  return acc;
}

// Antiderivative of a real grid field: F(u) = int_0^u f, from its
// spectrum.  F(u) = c_0 u + sum_{k != 0} c_k (e^{2 pi i k u} - 1)/(2 pi i k),
// Nyquist handled as a cosine.
inline double fourier_antiderivative_eval(const std::vector<Complex>& c,
                                          double u) {
  const std::size_t n = c.size();
  const double two_pi = 2.0 * std::acos(-1.0);
  double acc = c[0].real() * u;
  for (std::size_t k = 1; k < n / 2; ++k) {
    const double w = two_pi * static_cast<double>(k);
    const double ph = w * u;
    // Re and Im parts of c_k (e^{i ph} - 1)/(i w), doubled for -k.
    const double a = c[k].real(), b = c[k].imag();
    acc += 2.0 * (a * std::sin(ph) + b * (std::cos(ph) - 1.0)) / w;
  }
  {
    const double w = two_pi * static_cast<double>(n / 2);
    acc += c[n / 2].real() * std::sin(w * u) / w;
  }
  return acc;
}

}  // namespace iclf
