#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "iclf/error.hpp"

namespace iclf {

// Least-squares fit of a degree-`degree` polynomial in (u - u0) to the
// samples (u[j], f[j]), j in [lo, hi].  Returns derivatives of the fit at
// u0 for orders 0..nder.  The abscissae are scaled to the window width
// before forming the normal equations.
inline std::vector<double> local_poly_derivatives(const std::vector<double>& u,
                                                  const std::vector<double>& f,
                                                  std::size_t lo,
                                                  std::size_t hi, double u0,
                                                  int degree, int nder) {
  const int m = degree + 1;
  const std::size_t npts = hi - lo + 1;
  if (npts < static_cast<std::size_t>(m))
    throw Error(ErrorCode::TooFewSamples, "window smaller than fit degree");

  double scale = 0.0;
  for (std::size_t j = lo; j <= hi; ++j)
    scale = std::max(scale, std::abs(u[j] - u0));
  if (scale == 0.0) scale = 1.0;

  // Normal equations A c = b for scaled monomials.
  std::vector<double> A(static_cast<std::size_t>(m) * m, 0.0);
  std::vector<double> b(m, 0.0);
  std::vector<double> pw(m);
  for (std::size_t j = lo; j <= hi; ++j) {
    const double x = (u[j] - u0) / scale;
    pw[0] = 1.0;
    for (int k = 1; k < m; ++k) pw[k] = pw[k - 1] * x;
    for (int r = 0; r < m; ++r) {
      b[r] += pw[r] * f[j];
      for (int ccol = 0; ccol < m; ++ccol) A[r * m + ccol] += pw[r] * pw[ccol];
    }
  }

  // Gaussian elimination with partial pivoting.
  std::vector<int> perm(m);
  for (int i = 0; i < m; ++i) perm[i] = i;
  for (int col = 0; col < m; ++col) {
    int piv = col;
    for (int r = col + 1; r < m; ++r)
      if (std::abs(A[r * m + col]) > std::abs(A[piv * m + col])) piv = r;
    if (piv != col) {
      for (int k = 0; k < m; ++k) std::swap(A[col * m + k], A[piv * m + k]);
      std::swap(b[col], b[piv]);
    }
    const double d = A[col * m + col];
    if (d == 0.0) throw Error(ErrorCode::BadInput, "singular fit window");
    for (int r = col + 1; r < m; ++r) {
      const double fac = A[r * m + col] / d;
      if (fac == 0.0) continue;
      for (int k = col; k < m; ++k) A[r * m + k] -= fac * A[col * m + k];
      b[r] -= fac * b[col];
    }
  }
  std::vector<double> coef(m);
  for (int r = m - 1; r >= 0; --r) {
    double s = b[r];
    for (int k = r + 1; k < m; ++k) s -= A[r * m + k] * coef[k];
    coef[r] = s / A[r * m + r];
  }

  std::vector<double> deriv(nder + 1, 0.0);
  double fact = 1.0;
  double spow = 1.0;
  for (int p = 0; p <= nder; ++p) {
    if (p > 0) {
      fact *= p;
      spow *= scale;
    }
    if (p < m) deriv[p] = coef[p] * fact / spow;
  }
  return deriv;
}

}  // namespace iclf
