#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "iclf/curve.hpp"
#include "iclf/error.hpp"
#include "iclf/mobius.hpp"

namespace iclf {

// Plain 2x2 complex matrix for Lie-algebra elements and expansions, where
// no determinant normalization is wanted.
struct Mat2 {
  Complex a{0.0}, b{0.0}, c{0.0}, d{0.0};

  static Mat2 identity() { return Mat2{1.0, 0.0, 0.0, 1.0}; }

  static Mat2 from(const MobiusMap& m) { return Mat2{m.a, m.b, m.c, m.d}; }

  MobiusMap to_mobius() const { return MobiusMap(a, b, c, d); }

  Complex det() const { return a * d - b * c; }
  Complex trace() const { return a + d; }

  double frobenius_norm() const {
    return std::sqrt(std::norm(a) + std::norm(b) + std::norm(c) +
                     std::norm(d));
  }

  Mat2 operator+(const Mat2& o) const {
    return Mat2{a + o.a, b + o.b, c + o.c, d + o.d};
  }
  Mat2 operator-(const Mat2& o) const {
    return Mat2{a - o.a, b - o.b, c - o.c, d - o.d};
  }
  Mat2 operator*(const Mat2& o) const {
    return Mat2{a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c,
                c * o.b + d * o.d};
  }
  friend Mat2 operator*(Complex s, const Mat2& m) {
    return Mat2{s * m.a, s * m.b, s * m.c, s * m.d};
  }
};

// Coefficient matrix of the Serret-Frenet system dG/ds = M(Q) G.
// Traceless, with M^2 = -(Q + i/2) I.
inline Mat2 frenet_coefficient(double Q) {
  return Mat2{0.0, -1.0, Complex(Q, 0.5), 0.0};
}

struct GaussPath {
  double s0 = 0.0;
  double h = 0.0;
  std::vector<MobiusMap> G;
  std::vector<double> Q;

  double s_at(std::size_t i) const { return s0 + h * static_cast<double>(i); }
};

// Classical RK4 on the matrix system with per-step determinant
// renormalization.  Q is any callable profile of s.
inline GaussPath integrate_gauss(const std::function<double(double)>& Q,
                                 const MobiusMap& G_init, double s0, double h,
                                 std::size_t n_steps,
                                 double max_det_drift = 1e-3) {
  GaussPath path;
  path.s0 = s0;
  path.h = h;
  path.G.reserve(n_steps + 1);
  path.Q.reserve(n_steps + 1);
  Mat2 G = Mat2::from(G_init);
  path.G.push_back(G.to_mobius());
  path.Q.push_back(Q(s0));
  for (std::size_t i = 0; i < n_steps; ++i) {
    const double s = s0 + h * static_cast<double>(i);
    const Mat2 M1 = frenet_coefficient(Q(s));
    const Mat2 M2 = frenet_coefficient(Q(s + 0.5 * h));
    const Mat2 M4 = frenet_coefficient(Q(s + h));
    const Mat2 k1 = M1 * G;
    const Mat2 k2 = M2 * (G + (0.5 * h) * k1);
    const Mat2 k3 = M2 * (G + (0.5 * h) * k2);
    const Mat2 k4 = M4 * (G + Complex(h) * k3);
    G = G + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    const Complex det = G.det();
    if (std::abs(det - 1.0) > max_det_drift)
      throw Error(ErrorCode::StepTooLarge,
                  "determinant drift exceeds tolerance; reduce h");
    const Complex r = std::sqrt(det);
    G = (1.0 / r) * G;
    path.G.push_back(G.to_mobius());
    path.Q.push_back(Q(s + h));
  }
  return path;
}

// Periodic local-cubic interpolant of a uniform-grid profile of period
// n*h starting at s0.
inline std::function<double(double)> periodic_grid_interpolant(
    std::vector<double> values, double s0, double h) {
  const long n = static_cast<long>(values.size());
  return [values = std::move(values), s0, h, n](double s) {
    const double x = (s - s0) / h;
    const long i = static_cast<long>(std::floor(x));
    const double t = x - static_cast<double>(i);
    auto at = [&](long j) {
      long w = ((j % n) + n) % n;
      return values[static_cast<std::size_t>(w)];
    };
    const double qm1 = at(i - 1), q0 = at(i), q1 = at(i + 1), q2 = at(i + 2);
    // 4-point Lagrange on a uniform grid.
    return qm1 * (-t * (t - 1.0) * (t - 2.0) / 6.0) +
           q0 * ((t + 1.0) * (t - 1.0) * (t - 2.0) / 2.0) +
           q1 * (-(t + 1.0) * t * (t - 2.0) / 2.0) +
           q2 * ((t + 1.0) * t * (t - 1.0) / 6.0);
  };
}

// Grid overload: integrate one period of a uniform periodic Q profile.
inline GaussPath integrate_gauss(const std::vector<double>& Q_grid,
                                 const MobiusMap& G_init, double s0,
                                 double h) {
  return integrate_gauss(periodic_grid_interpolant(Q_grid, s0, h), G_init, s0,
                         h, Q_grid.size());
}

struct LoxodromeSpec {
  double Q0 = 0.0;
  MobiusMap G_init;
};

// Closed form exp(s M) G_0 with M = frenet_coefficient(Q0):
// exp(sM) = cos(sqrt(q) s) I + (sin(sqrt(q) s)/sqrt(q)) M, q = Q0 + i/2.
inline MobiusMap loxodrome(const LoxodromeSpec& spec, double s) {
  const Complex q(spec.Q0, 0.5);
  const Complex mu = std::sqrt(q);
  const Complex x = mu * s;
  Complex sinc;
  if (std::abs(x) < 1e-4) {
    const Complex x2 = x * x;
    sinc = s * (1.0 - x2 / 6.0 + x2 * x2 / 120.0);
  } else {
    sinc = std::sin(x) / mu;
  }
  const Complex co = std::cos(x);
  const Mat2 M = frenet_coefficient(spec.Q0);
  const Mat2 E = Mat2{co, 0.0, 0.0, co} + sinc * M;
  return (E * Mat2::from(spec.G_init)).to_mobius();
}

inline GaussPath loxodrome_path(const LoxodromeSpec& spec, double s0, double h,
                                std::size_t n_steps) {
  GaussPath path;
  path.s0 = s0;
  path.h = h;
  for (std::size_t i = 0; i <= n_steps; ++i) {
    path.G.push_back(loxodrome(spec, s0 + h * static_cast<double>(i)));
    path.Q.push_back(spec.Q0);
  }
  return path;
}

// Embedding X(s) = G(s)^{-1} [0;1], stereographically projected.
inline SampledCurve reconstruct_curve(const GaussPath& path) {
  SampledCurve out;
  out.z.reserve(path.G.size());
  for (const MobiusMap& G : path.G) {
    const ProjectivePoint p = apply(G.inverse(), ProjectivePoint(0.0, 1.0));
    if (std::abs(p.z2) < 1e-9)
      throw Error(ErrorCode::ProjectionAtInfinity,
                  "curve passes near infinity; pre-compose a generic map");
    out.z.push_back(p.z1 / p.z2);
  }
  const auto arc = detail::interval_arcs(out.z);
  out.u.resize(out.z.size());
  out.u[0] = 0.0;
  for (std::size_t i = 0; i + 1 < out.z.size(); ++i)
    out.u[i + 1] = out.u[i] + arc[i];
  return out;
}

// Monodromy of a path spanning exactly one period:
// X(s + ell) = L X(s) with L = G(ell)^{-1} G(0).
inline MobiusMap path_monodromy(const GaussPath& path) {
  return compose(path.G.back().inverse(), path.G.front());
}

// Fourth-order polynomial expansion of G(0) G^{-1}(s) in the invariant
// parameter, with coefficient matrices in terms of Q and its s-derivatives
// at s = 0.
inline Mat2 taylor_gauss_inverse(double Q, double Q_s, double Q_ss,
                                 double Q_sss, double s) {
  const Complex q(Q, 0.5);
  const Mat2 C1 = frenet_coefficient(Q);
  const Mat2 C2{q, 0.0, Q_s, q};
  const Complex e(Q_ss - Q * Q + 0.25, -Q);
  const Mat2 C3{2.0 * Q_s, q, e, Q_s};
  const Mat2 C4{3.0 * Q_ss - Q * Q + Complex(0.25, 0.0) - Complex(0.0, Q),
                2.0 * Q_s, Complex(Q_sss - 4.0 * Q * Q_s, -2.0 * Q_s),
                Q_ss - Q * Q + Complex(0.25, 0.0) - Complex(0.0, Q)};
  const double s2 = s * s;
  return Mat2::identity() - Complex(s) * C1 - Complex(s2 / 2.0) * C2 -
         Complex(s2 * s / 6.0) * C3 - Complex(s2 * s2 / 24.0) * C4;
}

// Generator of the Gauss-map motion under the normal variation
// dX/dt = f N: dG/dt = T G.  Traceless by construction.
inline Mat2 variation_generator(double f, double f_s, double f_ss,
                                double f_sss, double f_ssss, double Q,
                                double Q_s, double Q_ss) {
  const Complex t11(0.25 * f_sss + Q * f_s + 0.5 * Q_s * f, -0.5 * f_s);
  const Complex t12(0.0, -f);
  const Complex t21(-0.25 * f_ssss - Q * f_ss - 1.5 * Q_s * f_s -
                        0.5 * (Q_ss + 1.0) * f,
                    0.5 * f_ss + Q * f);
  return Mat2{t11, t12, t21, -t11};
}

// Commutator density for a general normal variation f:
// C = -f'''/2 - 2 Q f_s - Q_s f.
inline double variation_commutator(double f, double f_s, double f_sss,
                                   double Q, double Q_s) {
  return -0.5 * f_sss - 2.0 * Q * f_s - Q_s * f;
}

// Serret-Frenet integration in a fixed parametrisation u in [0,1) with
// density rho: dG/du = rho(u) M(Q(u)) G.  Used to extract the monodromy of
// a flow state.  Midpoint values come from periodic cubic interpolation.
inline GaussPath integrate_gauss_u(const std::vector<double>& Q,
                                   const std::vector<double>& rho,
                                   const MobiusMap& G_init) {
  if (Q.size() != rho.size() || Q.empty())
    throw Error(ErrorCode::BadInput, "mismatched Q/rho grids");
  const std::size_t n = Q.size();
  const double h = 1.0 / static_cast<double>(n);
  const auto Qi = periodic_grid_interpolant(Q, 0.0, h);
  const auto Ri = periodic_grid_interpolant(rho, 0.0, h);
  GaussPath path;
  path.s0 = 0.0;
  path.h = h;  // parameter step in u, not s
  Mat2 G = Mat2::from(G_init);
  path.G.push_back(G.to_mobius());
  path.Q.push_back(Q[0]);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = h * static_cast<double>(i);
    auto coeff = [&](double uu) {
      return Complex(Ri(uu)) * frenet_coefficient(Qi(uu));
    };
    const Mat2 M1 = coeff(u);
    const Mat2 M2 = coeff(u + 0.5 * h);
    const Mat2 M4 = coeff(u + h);
    const Mat2 k1 = M1 * G;
    const Mat2 k2 = M2 * (G + (0.5 * h) * k1);
    const Mat2 k3 = M2 * (G + (0.5 * h) * k2);
    const Mat2 k4 = M4 * (G + Complex(h) * k3);
    G = G + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    G = (1.0 / std::sqrt(G.det())) * G;
    path.G.push_back(G.to_mobius());
    path.Q.push_back(Qi(u + h));
  }
  return path;
}

}  // namespace iclf
