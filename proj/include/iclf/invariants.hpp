#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "iclf/curve.hpp"
#include "iclf/error.hpp"
#include "iclf/mobius.hpp"
#include "iclf/polyfit.hpp"

namespace iclf {

// Curvature data per sample: tangent angle phi, k = dphi/du and its first
// three u-derivatives.  For a cocompact input the arrays carry one extra
// trailing entry for the virtual sample L(z_0) that closes the period, so
// jet.u.size() == curve.size() + 1 in that case.
struct CurvatureJet {
  std::vector<double> u;
  std::vector<double> phi;
  std::vector<double> k;
  std::vector<double> k_u;
  std::vector<double> k_uu;
  std::vector<double> k_uuu;
  bool cocompact = false;

  std::size_t size() const { return u.size(); }

  bool admissible(double eps = 1e-6) const {
    double kmax = 0.0;
    for (double v : k_u) kmax = std::max(kmax, v);
    if (kmax <= 0.0) return false;
    for (double v : k_u)
      if (v < eps * kmax) return false;
    return true;
  }

  void require_admissible(double eps = 1e-6) const {
    if (!admissible(eps))
      throw Error(ErrorCode::Inadmissible,
                  "k_u not strictly positive along the curve");
  }
};

namespace detail {

// Extend a sample list across the period seam using the monodromy, so
// interior-quality fit windows are available at every original sample.
struct ExtendedSamples {
  std::vector<double> u;
  std::vector<Complex> z;
  std::size_t offset = 0;  // index of original sample 0
};

inline ExtendedSamples extend_samples(const SampledCurve& c,
                                      std::size_t n_ext) {
  ExtendedSamples e;
  const std::size_t n = c.size();
  if (!c.cocompact || n_ext == 0) {
    e.u = c.u;
    e.z = c.z;
    return e;
  }
  n_ext = std::min(n_ext, n - 1);
  const MobiusMap L = c.monodromy;
  const MobiusMap Linv = L.inverse();
  e.offset = n_ext;
  e.z.reserve(n + 2 * n_ext + 1);
  // Left: preimages of the tail of the period.
  for (std::size_t j = 0; j < n_ext; ++j)
    e.z.push_back(apply_affine(Linv, c.z[n - n_ext + j]));
  for (std::size_t j = 0; j < n; ++j) e.z.push_back(c.z[j]);
  // Right: images of the head (j = 0 is the virtual closing sample).
  for (std::size_t j = 0; j <= n_ext; ++j)
    e.z.push_back(apply_affine(L, c.z[j]));
  // Parameters: keep the original u in the middle and accumulate
  // corrected chord lengths outward.
  const auto arc = interval_arcs(e.z);
  e.u.assign(e.z.size(), 0.0);
  for (std::size_t j = 0; j < n; ++j) e.u[e.offset + j] = c.u[j];
  for (std::size_t j = e.offset + n; j < e.z.size(); ++j)
    e.u[j] = e.u[j - 1] + arc[j - 1];
  for (std::size_t j = e.offset; j-- > 0;) e.u[j] = e.u[j + 1] - arc[j];
  return e;
}

}  // namespace detail

// Estimate k and its first three u-derivatives by local least-squares
// polynomial fits on the tangent angle.  Two stages: fit x(u), y(u) to get
// the tangent direction at each node, unwrap the angle, then fit the angle
// to read off derivatives 1..4.
inline CurvatureJet curvature_jet(const SampledCurve& curve,
                                  int window_halfwidth = 12, int degree = 6) {
  curve.validate();
  const std::size_t min_samples =
      std::max<std::size_t>(8, static_cast<std::size_t>(degree) + 2);
  if (curve.size() < min_samples)
    throw Error(ErrorCode::TooFewSamples, "need more samples for the jet fit");

  // Extend far enough that every angle entering a stage-2 window was
  // itself fitted on a full, centred stage-1 window.
  const auto ext = detail::extend_samples(
      curve, 2 * static_cast<std::size_t>(window_halfwidth));
  const std::size_t m = ext.u.size();
  std::vector<double> xs(m), ys(m);
  for (std::size_t i = 0; i < m; ++i) {
    xs[i] = ext.z[i].real();
    ys[i] = ext.z[i].imag();
  }

  auto window = [&](std::size_t i) {
    const std::size_t hw = static_cast<std::size_t>(window_halfwidth);
    std::size_t lo = i >= hw ? i - hw : 0;
    std::size_t hi = std::min(i + hw, m - 1);
    // Keep the window size near 2*hw+1 at the ends of open arcs.
    const std::size_t want = 2 * hw;
    if (hi - lo < want) {
      if (lo == 0)
        hi = std::min(lo + want, m - 1);
      else
        lo = hi >= want ? hi - want : 0;
    }
    return std::pair<std::size_t, std::size_t>(lo, hi);
  };

  // Stage 1: tangent angle at every extended node.
  std::vector<double> phi(m);
  double prev = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const auto [lo, hi] = window(i);
    const auto dx = local_poly_derivatives(ext.u, xs, lo, hi, ext.u[i],
                                           degree, 1);
    const auto dy = local_poly_derivatives(ext.u, ys, lo, hi, ext.u[i],
                                           degree, 1);
    double a = std::atan2(dy[1], dx[1]);
    if (i > 0) {
      const double two_pi = 2.0 * std::acos(-1.0);
      a += two_pi * std::round((prev - a) / two_pi);
    }
    phi[i] = a;
    prev = a;
  }

  // Stage 2: derivatives of the tangent angle.
  const std::size_t n_out = curve.size() + (curve.cocompact ? 1 : 0);
  CurvatureJet jet;
  jet.cocompact = curve.cocompact;
  jet.u.resize(n_out);
  jet.phi.resize(n_out);
  jet.k.resize(n_out);
  jet.k_u.resize(n_out);
  jet.k_uu.resize(n_out);
  jet.k_uuu.resize(n_out);
  for (std::size_t j = 0; j < n_out; ++j) {
    const std::size_t i = ext.offset + j;
    const auto [lo, hi] = window(i);
    const auto d =
        local_poly_derivatives(ext.u, phi, lo, hi, ext.u[i], degree, 4);
    jet.u[j] = ext.u[i];
    jet.phi[j] = d[0];
    jet.k[j] = d[1];
    jet.k_u[j] = d[2];
    jet.k_uu[j] = d[3];
    jet.k_uuu[j] = d[4];
  }
  return jet;
}

// Invariant arc length s(u) = int sqrt(k_u) du, s(u_0) = 0.  Corrected
// trapezoid rule (Euler-Maclaurin endpoint terms from k_uu).
inline std::vector<double> invariant_arclength(const CurvatureJet& jet) {
  jet.require_admissible();
  const std::size_t n = jet.size();
  std::vector<double> s(n, 0.0);
  for (std::size_t i = 1; i < n; ++i) {
    const double h = jet.u[i] - jet.u[i - 1];
    const double f0 = std::sqrt(jet.k_u[i - 1]);
    const double f1 = std::sqrt(jet.k_u[i]);
    const double d0 = jet.k_uu[i - 1] / (2.0 * f0);
    const double d1 = jet.k_uu[i] / (2.0 * f1);
    s[i] = s[i - 1] + h * (f0 + f1) / 2.0 - h * h * (d1 - d0) / 12.0;
  }
  return s;
}

// Fundamental invariant Q = k^2/(4 k') + 5 (k'')^2/(16 (k')^3)
//                          - k'''/(4 (k')^2), derivatives in u.
inline std::vector<double> fundamental_invariant(const CurvatureJet& jet) {
  jet.require_admissible();
  const std::size_t n = jet.size();
  std::vector<double> q(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double kp = jet.k_u[i];
    q[i] = 0.25 * jet.k[i] * jet.k[i] / kp +
           (5.0 / 16.0) * jet.k_uu[i] * jet.k_uu[i] / (kp * kp * kp) -
           0.25 * jet.k_uuu[i] / (kp * kp);
  }
  return q;
}

// Inversive Gauss frame at a sample.  G = G2 * G1 with G1 the rigid motion
// sending the point to 0 with tangent direction +1, and G2 the
// lower-triangular correction with a = (k')^{1/4}, b = -k''/(4 (k')^{5/4}),
// c = k/(2 (k')^{1/4}).
struct GaussFrame {
  MobiusMap G;
  std::size_t base = 0;
};

inline GaussFrame gauss_map_at(const SampledCurve& curve,
                               const CurvatureJet& jet, std::size_t i) {
  if (i >= curve.size() || i >= jet.size())
    throw Error(ErrorCode::BadInput, "sample index out of range");
  const double kp = jet.k_u[i];
  double kmax = 0.0;
  for (double v : jet.k_u) kmax = std::max(kmax, v);
  if (!(kp > 0.0) || kp < 1e-6 * kmax)
    throw Error(ErrorCode::Inadmissible, "k_u <= 0 at the base sample");
  const Complex half_turn = std::exp(Complex(0.0, -jet.phi[i] / 2.0));
  const MobiusMap G1(half_turn, -curve.z[i] * half_turn, 0.0,
                     1.0 / half_turn);
  const double a = std::pow(kp, 0.25);
  const double b = -jet.k_uu[i] / (4.0 * std::pow(kp, 1.25));
  const double c = jet.k[i] / (2.0 * a);
  const MobiusMap G2(a, 0.0, Complex(b, c), 1.0 / a);
  return GaussFrame{compose(G2, G1), i};
}

// Normal-form defect H([x+iy;1]) = y - x^3/6 of a point seen through a
// Gauss frame; the leading deviation is of order s^5 with coefficient -Q/30.
inline double normal_form_defect(const MobiusMap& G, Complex z) {
  const Complex w = apply_affine(G, z);
  return w.imag() - w.real() * w.real() * w.real() / 6.0;
}

// Winding integer from the total turning of the conjugated, projected
// curve over one period: int k du = 2 pi n + 2 theta.
inline int winding_number(const SampledCurve& curve, const MonodromyClass& cls,
                          double max_residual = 0.05) {
  if (!curve.cocompact)
    throw Error(ErrorCode::BadInput, "winding number needs a cocompact curve");
  const std::size_t n = curve.size();
  const Complex lambda2 = cls.eigenvalue() * cls.eigenvalue();
  std::vector<Complex> w(n + 2);
  for (std::size_t i = 0; i < n; ++i)
    w[i] = apply_affine(cls.conjugator, curve.z[i]);
  w[n] = lambda2 * w[0];
  w[n + 1] = lambda2 * w[1];

  const double two_pi = 2.0 * std::acos(-1.0);
  double total = 0.0;
  double prev_ang = std::arg(w[1] - w[0]);
  for (std::size_t i = 1; i <= n; ++i) {
    const double ang = std::arg(w[i + 1] - w[i]);
    total += std::remainder(ang - prev_ang, two_pi);
    prev_ang = ang;
  }
  // The chord w[n]->w[n+1] is exactly lambda^2 times the chord w[0]->w[1],
  // so the accumulated turning is 2 theta + 2 pi n.
  const double ratio = (total - 2.0 * cls.theta) / two_pi;
  const long nn = std::lround(ratio);
  if (!std::isfinite(ratio) ||
      std::abs(ratio - static_cast<double>(nn)) > max_residual)
    throw Error(ErrorCode::Nonintegral, "turning not consistent with class");
  return static_cast<int>(nn);
}

// Periodic resampling of a profile given at invariant arc lengths s[i]
// (with s.back() - s.front() = ell and q.back() == q.front()) onto a
// uniform s-grid of size n_out, by local cubic (4-point Lagrange)
// interpolation in s.
inline std::vector<double> resample_to_uniform_s(const std::vector<double>& s,
                                                 const std::vector<double>& q,
                                                 std::size_t n_out) {
  if (s.size() != q.size() || s.size() < 4)
    throw Error(ErrorCode::BadInput, "resample needs matching profiles");
  const double ell = s.back() - s.front();
  const std::size_t n = s.size() - 1;  // periodic: node n duplicates node 0
  auto node_s = [&](long i) {
    const long p = static_cast<long>(n);
    long w = ((i % p) + p) % p;
    const long cycles = (i - w) / p;
    return s[static_cast<std::size_t>(w)] + static_cast<double>(cycles) * ell;
  };
  auto node_q = [&](long i) {
    const long p = static_cast<long>(n);
    long w = ((i % p) + p) % p;
    return q[static_cast<std::size_t>(w)];
  };
  std::vector<double> out(n_out);
  std::size_t hint = 0;
  for (std::size_t j = 0; j < n_out; ++j) {
    const double sj = s.front() + ell * static_cast<double>(j) / n_out;
    while (hint + 1 < n && s[hint + 1] <= sj) ++hint;
    const long i = static_cast<long>(hint);
    double acc = 0.0;
    for (long a = i - 1; a <= i + 2; ++a) {
      double lag = 1.0;
      for (long b = i - 1; b <= i + 2; ++b) {
        if (b == a) continue;
        lag *= (sj - node_s(b)) / (node_s(a) - node_s(b));
      }
      acc += lag * node_q(a);
    }
    out[j] = acc;
  }
  return out;
}

}  // namespace iclf
