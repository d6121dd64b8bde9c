#pragma once

#include <cmath>
#include <complex>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "iclf/error.hpp"
#include "iclf/mobius.hpp"

namespace iclf {

// Plane curve given by samples z(u_i) at strictly increasing Euclidean
// arc-length parameters u_i.  A cocompact curve stores the monodromy L
// with z(u + period) = L(z(u)); its samples cover exactly one period,
// so L maps sample 0 to the (virtual) sample N.
struct SampledCurve {
  std::vector<double> u;
  std::vector<Complex> z;
  bool cocompact = false;
  MobiusMap monodromy;

  std::size_t size() const { return u.size(); }

  void validate() const {
    if (u.size() != z.size() || u.size() < 2)
      throw Error(ErrorCode::TooFewSamples, "curve needs >= 2 samples");
    for (std::size_t i = 1; i < u.size(); ++i) {
      if (!(u[i] > u[i - 1]))
        throw Error(ErrorCode::NonmonotoneParam, "u not strictly increasing");
      if (std::abs(z[i] - z[i - 1]) == 0.0)
        throw Error(ErrorCode::BadInput, "repeated sample point");
    }
  }

  double diameter() const {
    double lo_x = 1e300, hi_x = -1e300, lo_y = 1e300, hi_y = -1e300;
    for (const Complex& p : z) {
      lo_x = std::min(lo_x, p.real());
      hi_x = std::max(hi_x, p.real());
      lo_y = std::min(lo_y, p.imag());
      hi_y = std::max(hi_y, p.imag());
    }
    return std::hypot(hi_x - lo_x, hi_y - lo_y);
  }
};

// Logarithmic spiral sampled in the admissible (inward) orientation, so
// the Euclidean curvature increases along the parameter.  The trace is
// w -> exp((a-i)w) traversed with w decreasing; the signed curvature is
// k(u) = 1/(a(u0-u)) with u0 the remaining length to the center, and
// Q = (1-a^2)/(4a).
inline SampledCurve log_spiral(double a, double turns, int samples_per_turn,
                               double w_start = 0.0) {
  if (a <= 0.0) throw Error(ErrorCode::BadInput, "spiral needs a > 0");
  const double pi = std::acos(-1.0);
  // Half-open period: the closing sample at w_start is virtual (the image
  // of sample 0 under the monodromy).
  const int n = static_cast<int>(std::lround(turns * samples_per_turn));
  const double w_hi = w_start + 2.0 * pi * turns;
  const double speed = std::sqrt(1.0 + a * a);
  SampledCurve c;
  c.u.resize(n);
  c.z.resize(n);
  for (int j = 0; j < n; ++j) {
    // Traverse from w_hi downward; u is the exact arc length traversed.
    const double w = w_hi - 2.0 * pi * turns * j / static_cast<double>(n);
    c.u[j] = (speed / a) * (std::exp(a * w_hi) - std::exp(a * w));
    c.z[j] = std::exp(Complex(a, -1.0) * w);
  }
  // The samples span one period of the cocompact action: continuing
  // inward multiplies by exp(-2 pi turns (a-i)).
  const Complex lambda = std::exp(Complex(-pi * a * turns, pi * turns));
  c.cocompact = true;
  c.monodromy = MobiusMap::diagonal(lambda);
  return c;
}

namespace detail {

// Arc lengths of the polyline intervals: arc = chord * (1 + turn^2/24),
// with the turning angle taken as half the angle between the neighbouring
// chords (one-sided at the ends).
inline std::vector<double> interval_arcs(const std::vector<Complex>& z) {
  const std::size_t m = z.size();
  const double two_pi = 2.0 * std::acos(-1.0);
  std::vector<double> ang(m - 1), arc(m - 1);
  for (std::size_t j = 0; j + 1 < m; ++j) ang[j] = std::arg(z[j + 1] - z[j]);
  for (std::size_t j = 0; j + 1 < m; ++j) {
    double turn;
    if (j == 0)
      turn = std::remainder(ang[1] - ang[0], two_pi);
    else if (j == m - 2)
      turn = std::remainder(ang[j] - ang[j - 1], two_pi);
    else
      turn = 0.5 * std::remainder(ang[j + 1] - ang[j - 1], two_pi);
    arc[j] = std::abs(z[j + 1] - z[j]) * (1.0 + turn * turn / 24.0);
  }
  return arc;
}

}  // namespace detail

// Image of a curve under a Mobius map.  The Euclidean parameter is
// recomputed from chord lengths with a second-order turning-angle
// correction.
inline SampledCurve transform_curve(const MobiusMap& M,
                                    const SampledCurve& curve) {
  SampledCurve out;
  out.z.resize(curve.size());
  for (std::size_t i = 0; i < curve.size(); ++i)
    out.z[i] = apply_affine(M, curve.z[i]);
  const auto arc = detail::interval_arcs(out.z);
  out.u.resize(curve.size());
  out.u[0] = 0.0;
  for (std::size_t i = 0; i + 1 < curve.size(); ++i)
    out.u[i + 1] = out.u[i] + arc[i];
  out.cocompact = curve.cocompact;
  if (curve.cocompact)
    out.monodromy = compose(M, compose(curve.monodromy, M.inverse()));
  return out;
}

// CSV schema: one sample per line, columns u,re,im; optional header.
inline SampledCurve read_curve_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::BadInput, "cannot open " + path);
  SampledCurve c;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string f1, f2, f3;
    if (!std::getline(ss, f1, ',') || !std::getline(ss, f2, ',') ||
        !std::getline(ss, f3))
      throw Error(ErrorCode::BadInput, "expected u,re,im in " + path);
    try {
      const double uu = std::stod(f1);
      const double re = std::stod(f2);
      const double im = std::stod(f3);
      c.u.push_back(uu);
      c.z.emplace_back(re, im);
    } catch (const std::exception&) {
      if (first) {
        first = false;
        continue;  // header line
      }
      throw Error(ErrorCode::BadInput, "unparseable line: " + line);
    }
    first = false;
  }
  c.validate();
  return c;
}

inline void write_curve_csv(const std::string& path, const SampledCurve& c,
                            bool header = true) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::BadInput, "cannot open " + path);
  if (header) out << "u,re,im\n";
  char buf[128];
  for (std::size_t i = 0; i < c.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", c.u[i],
                  c.z[i].real(), c.z[i].imag());
    out << buf;
  }
}

}  // namespace iclf
