#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <optional>

#include "iclf/error.hpp"

namespace iclf {

using Complex = std::complex<double>;

// Element of SL(2,C), used projectively (M and -M act identically on CP^1).
// The determinant is renormalized to 1 on construction.
struct MobiusMap {
  Complex a{1.0}, b{0.0}, c{0.0}, d{1.0};

  MobiusMap() = default;

  MobiusMap(Complex a_, Complex b_, Complex c_, Complex d_)
      : a(a_), b(b_), c(c_), d(d_) {
    renormalize();
  }

  static MobiusMap identity() { return MobiusMap(); }

  static MobiusMap diagonal(Complex lambda) {
    return MobiusMap(lambda, 0.0, 0.0, 1.0 / lambda);
  }

  Complex det() const { return a * d - b * c; }

  // Divide by a square root of det.  Requires det away from zero.
  void renormalize() {
    const Complex r = std::sqrt(det());
    a /= r;
    b /= r;
    c /= r;
    d /= r;
  }

  MobiusMap inverse() const {
    MobiusMap m;
    m.a = d;
    m.b = -b;
    m.c = -c;
    m.d = a;
    return m;
  }

  Complex trace() const { return a + d; }

  double frobenius_norm() const {
    return std::sqrt(std::norm(a) + std::norm(b) + std::norm(c) +
                     std::norm(d));
  }
};

inline MobiusMap compose(const MobiusMap& A, const MobiusMap& B) {
  return MobiusMap(A.a * B.a + A.b * B.c, A.a * B.b + A.b * B.d,
                   A.c * B.a + A.d * B.c, A.c * B.b + A.d * B.d);
}

inline MobiusMap operator*(const MobiusMap& A, const MobiusMap& B) {
  return compose(A, B);
}

// Frobenius distance after aligning signs via the entry of largest modulus.
inline double projective_distance(const MobiusMap& A, const MobiusMap& B) {
  const std::array<Complex, 4> ea{A.a, A.b, A.c, A.d};
  const std::array<Complex, 4> eb{B.a, B.b, B.c, B.d};
  int imax = 0;
  double best = 0.0;
  for (int i = 0; i < 4; ++i) {
    const double m = std::abs(ea[i]) + std::abs(eb[i]);
    if (m > best) {
      best = m;
      imax = i;
    }
  }
  const double sign =
      (ea[imax] * std::conj(eb[imax])).real() >= 0.0 ? 1.0 : -1.0;
  double d2 = 0.0;
  for (int i = 0; i < 4; ++i) d2 += std::norm(ea[i] - sign * eb[i]);
  return std::sqrt(d2);
}

inline bool projectively_equal(const MobiusMap& A, const MobiusMap& B,
                               double tol = 1e-10) {
  return projective_distance(A, B) < tol;
}

// Point of CP^1 in homogeneous coordinates, renormalized to unit norm.
struct ProjectivePoint {
  Complex z1{0.0}, z2{1.0};

  ProjectivePoint() = default;

  ProjectivePoint(Complex z1_, Complex z2_) : z1(z1_), z2(z2_) {
    const double n = std::sqrt(std::norm(z1) + std::norm(z2));
    if (n == 0.0) throw Error(ErrorCode::BadInput, "zero homogeneous vector");
    z1 /= n;
    z2 /= n;
  }

  static ProjectivePoint from_affine(Complex z) {
    return ProjectivePoint(z, 1.0);
  }

  static ProjectivePoint infinity_point() { return ProjectivePoint(1.0, 0.0); }
};

inline ProjectivePoint apply(const MobiusMap& M, const ProjectivePoint& p) {
  return ProjectivePoint(M.a * p.z1 + M.b * p.z2, M.c * p.z1 + M.d * p.z2);
}

inline double chordal_distance(const ProjectivePoint& p,
                               const ProjectivePoint& q) {
  // |<p,q^perp>| for unit representatives; zero iff equal in CP^1.
  return std::abs(p.z1 * q.z2 - p.z2 * q.z1);
}

// Stereographic projection [z1;z2] -> z1/z2, with infinity kept as a
// tagged value rather than an IEEE special.
struct ExtendedComplex {
  Complex value{0.0};
  bool is_infinity{false};
};

inline ExtendedComplex stereographic(const ProjectivePoint& p,
                                     double inf_tol = 0.0) {
  if (std::abs(p.z2) <= inf_tol) return ExtendedComplex{Complex{0.0}, true};
  return ExtendedComplex{p.z1 / p.z2, false};
}

// Affine action convenience: z -> (az+b)/(cz+d).  Throws on the point at
// infinity of the image.
inline Complex apply_affine(const MobiusMap& M, Complex z) {
  const Complex den = M.c * z + M.d;
  if (std::abs(den) < 1e-300)
    throw Error(ErrorCode::ProjectionAtInfinity, "image at infinity");
  return (M.a * z + M.b) / den;
}

// Conjugacy data of an admissible monodromy: L = T^{-1} diag(l,1/l) T with
// l = r e^{i theta}, 0 < r < 1, theta in [0,pi).  The winding integer n is
// not determined by L alone; it is filled in from the curve.
struct MonodromyClass {
  double r{0.0};
  double theta{0.0};
  int n{-1};  // -1: unset
  MobiusMap conjugator;  // T

  Complex eigenvalue() const { return std::polar(r, theta); }
};

// Diagonalize an admissible monodromy.  Rejects elliptic (unit-circle
// eigenvalues) and parabolic (repeated eigenvalue) elements.
inline MonodromyClass normal_form(const MobiusMap& L,
                                  double circle_tol = 1e-9) {
  const Complex tr = L.trace();
  const Complex disc = tr * tr - 4.0;
  if (std::abs(disc) < 1e-12)
    throw Error(ErrorCode::Parabolic, "repeated eigenvalue");
  const Complex root = std::sqrt(disc);
  Complex lambda = (tr + root) / 2.0;
  Complex lambda2 = (tr - root) / 2.0;
  if (std::abs(lambda) > std::abs(lambda2)) std::swap(lambda, lambda2);
  if (std::abs(std::abs(lambda) - 1.0) < circle_tol)
    throw Error(ErrorCode::EigenvalueOnUnitCircle, "elliptic monodromy");

  // Eigenvectors belong to the raw roots; the PSL sign freedom changes
  // the eigenvalues of the representative but not the eigenspaces.
  const Complex mu1 = lambda, mu2 = lambda2;

  // PSL sign freedom: fold arg(lambda) mod pi into [0, pi), sending the
  // boundary (and rounding residue around it) to 0.
  const double pi = std::acos(-1.0);
  double theta = std::arg(lambda);
  if (theta < 0.0) theta += pi;
  if (theta >= pi - 1e-9) theta -= pi;
  if (std::abs(theta) < 1e-9) theta = 0.0;

  // Eigenvectors of L for lambda and 1/lambda; T^{-1} has them as columns.
  auto eigvec = [&](Complex lam) -> std::array<Complex, 2> {
    // (a - lam) v1 + b v2 = 0; pick the better-conditioned row.
    const Complex r1a = L.a - lam, r1b = L.b;
    const Complex r2a = L.c, r2b = L.d - lam;
    std::array<Complex, 2> v;
    if (std::abs(r1a) + std::abs(r1b) > std::abs(r2a) + std::abs(r2b)) {
      v = {-r1b, r1a};
    } else {
      v = {-r2b, r2a};
    }
    const double n = std::sqrt(std::norm(v[0]) + std::norm(v[1]));
    return {v[0] / n, v[1] / n};
  };
  const auto v1 = eigvec(mu1);
  const auto v2 = eigvec(mu2);
  const MobiusMap Tinv(v1[0], v2[0], v1[1], v2[1]);

  MonodromyClass cls;
  cls.r = std::abs(lambda);
  cls.theta = theta;
  cls.conjugator = Tinv.inverse();
  return cls;
}

// Unique Mobius map sending (p1,p2,p3) to (q1,q2,q3), all finite and
// pairwise distinct.  Used for best-fit alignment in round-trip checks.
inline MobiusMap mobius_from_three_points(Complex p1, Complex p2, Complex p3,
                                          Complex q1, Complex q2, Complex q3) {
  // Map z1,z2,z3 -> 0,1,inf.
  auto to_standard = [](Complex z1, Complex z2, Complex z3) {
    return MobiusMap(z2 - z3, -z1 * (z2 - z3), z2 - z1, -z3 * (z2 - z1));
  };
  const MobiusMap Mp = to_standard(p1, p2, p3);
  const MobiusMap Mq = to_standard(q1, q2, q3);
  return compose(Mq.inverse(), Mp);
}

}  // namespace iclf
