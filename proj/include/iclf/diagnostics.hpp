#pragma once

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "iclf/error.hpp"
#include "iclf/flow.hpp"
#include "iclf/frenet.hpp"
#include "iclf/invariants.hpp"
#include "iclf/mobius.hpp"

namespace iclf {

// ||d^m Q / ds^m||_2 with the ds measure.
inline double sobolev_seminorm(const std::vector<double>& Q,
                               const std::vector<double>& rho, int order) {
  const auto d = s_derivative(Q, rho, order, /*check_resolution=*/false);
  return norm2_ds(d, rho);
}

// Growth rate of a single Fourier mode e^{i omega s} about the constant
// profile Q0.
inline double dispersion_rate(double omega, double Q0) {
  const double w2 = omega * omega;
  return -0.25 * w2 * w2 * w2 + 2.0 * Q0 * w2 * w2 -
         (4.0 * Q0 * Q0 + 1.0) * w2;
}

// Upper bound for the invariant length of any curve in a hyperbolic
// monodromy class with winding n.  `printed` keeps the log(1/r) variant
// for comparison; `bound` is the one the loxodrome saturates.
struct LengthBound {
  double bound = 0.0;
  double printed = 0.0;
};

inline LengthBound lox_length_bound(const MonodromyClass& cls) {
  if (cls.n < 0)
    throw Error(ErrorCode::BadInput, "winding number required for bound");
  const double pi = std::acos(-1.0);
  const double angle = 2.0 * pi * static_cast<double>(cls.n) + 2.0 * cls.theta;
  const double log_inv_r = std::log(1.0 / cls.r);
  LengthBound out;
  out.bound = std::sqrt(angle * 2.0 * log_inv_r);
  out.printed = std::sqrt(angle * log_inv_r);
  return out;
}

// The unique loxodrome in a hyperbolic class with winding n: pitch
// parameter t, limiting invariant Q and invariant length.
struct LimitPrediction {
  double t = 0.0;
  double Q_infinity = 0.0;
  double ell_infinity = 0.0;
};

inline LimitPrediction predict_limit_Q(const MonodromyClass& cls) {
  if (cls.n < 0)
    throw Error(ErrorCode::BadInput, "winding number required for prediction");
  const double pi = std::acos(-1.0);
  const double log_inv_r = std::log(1.0 / cls.r);
  if (!(log_inv_r > 0.0))
    throw Error(ErrorCode::EigenvalueOnUnitCircle, "class is not hyperbolic");
  const double t =
      (pi * static_cast<double>(cls.n) + cls.theta) / log_inv_r;
  if (!(t > 0.0))
    throw Error(ErrorCode::NoMatch, "no closed loxodrome in this class");
  LimitPrediction out;
  out.t = t;
  out.Q_infinity = 0.25 * (t - 1.0 / t);
  out.ell_infinity = 2.0 * std::sqrt(t) * log_inv_r;
  return out;
}

// Least-squares fit y ~ A exp(rate * t) through log y.
struct DecayFit {
  double rate = 0.0;
  double log_amplitude = 0.0;
  double r_squared = 0.0;
};

inline DecayFit fit_decay_rate(const std::vector<double>& t,
                               const std::vector<double>& y) {
  if (t.size() != y.size() || t.size() < 3)
    throw Error(ErrorCode::TooFewSamples, "need at least three samples");
  const std::size_t n = t.size();
  std::vector<double> ly(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(y[i] > 0.0))
      throw Error(ErrorCode::NonpositiveValues,
                  "decay fit requires positive values");
    ly[i] = std::log(y[i]);
  }
  double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    st += t[i];
    sy += ly[i];
    stt += t[i] * t[i];
    sty += t[i] * ly[i];
  }
  const double dn = static_cast<double>(n);
  const double denom = dn * stt - st * st;
  if (denom == 0.0)
    throw Error(ErrorCode::BadInput, "degenerate abscissae");
  DecayFit fit;
  fit.rate = (dn * sty - st * sy) / denom;
  fit.log_amplitude = (sy - fit.rate * st) / dn;
  double ss_res = 0.0, ss_tot = 0.0;
  const double mean = sy / dn;
  for (std::size_t i = 0; i < n; ++i) {
    const double pred = fit.log_amplitude + fit.rate * t[i];
    ss_res += (ly[i] - pred) * (ly[i] - pred);
    ss_tot += (ly[i] - mean) * (ly[i] - mean);
  }
  fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  return fit;
}

// Monodromy of a flow state, by integrating the frame equation over one
// period in the fixed parametrisation.  Winding is measured from the
// reconstructed embedding when requested.
inline MonodromyClass measure_monodromy(const FlowState& state,
                                        bool with_winding = true) {
  // The normal form does not depend on the initial frame; the embedding
  // used for the winding count does, so retry with generic frames if the
  // reconstruction passes too close to infinity.
  const MobiusMap frames[] = {
      MobiusMap::identity(),
      MobiusMap(1.0, 0.0, Complex(0.37, 0.21), 1.0),
      MobiusMap(1.0, Complex(0.5, -0.3), Complex(-0.11, 0.29), 1.0),
  };
  MonodromyClass cls;
  for (std::size_t attempt = 0; attempt < 3; ++attempt) {
    const GaussPath path =
        integrate_gauss_u(state.Q, state.rho, frames[attempt]);
    const MobiusMap L = path_monodromy(path);
    cls = normal_form(L);
    if (!with_winding) return cls;
    try {
      SampledCurve curve = reconstruct_curve(path);
      curve.cocompact = true;
      curve.monodromy = L;
      cls.n = winding_number(curve, cls);
      return cls;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::ProjectionAtInfinity || attempt == 2) throw;
    }
  }
  return cls;
}

// Measure the invariants of a curve, rebuild it from Q(s) alone by
// integrating the frame equation from the frame at sample 0, and compare
// the two embeddings.  Deviation is reported relative to the diameter.
struct RoundtripReport {
  double ell = 0.0;            // invariant length of the sampled span
  double max_deviation = 0.0;  // max |z_rec - z| / diameter
  double q_min = 0.0, q_max = 0.0;
  SampledCurve reconstructed;
};

inline RoundtripReport roundtrip(const SampledCurve& curve,
                                 std::size_t n_grid = 512) {
  const CurvatureJet jet = curvature_jet(curve);
  const std::vector<double> s = invariant_arclength(jet);
  const std::vector<double> Q = fundamental_invariant(jet);

  RoundtripReport rep;
  rep.ell = s.back() - s.front();
  rep.q_min = Q[0];
  rep.q_max = Q[0];
  for (double q : Q) {
    rep.q_min = std::min(rep.q_min, q);
    rep.q_max = std::max(rep.q_max, q);
  }

  // Non-periodic profile: integrate with a monotone cubic read straight
  // off the (s, Q) table.
  auto q_of_s = [&](double ss) {
    // clamped 4-point Lagrange on the nonuniform table
    const std::size_t n = s.size();
    std::size_t i = 0;
    while (i + 2 < n && s[i + 1] <= ss) ++i;
    const std::size_t a0 = std::min(i >= 1 ? i - 1 : 0, n - 4);
    double acc = 0.0;
    for (std::size_t a = a0; a < a0 + 4; ++a) {
      double lag = 1.0;
      for (std::size_t b = a0; b < a0 + 4; ++b) {
        if (b == a) continue;
        lag *= (ss - s[b]) / (s[a] - s[b]);
      }
      acc += lag * Q[a];
    }
    return acc;
  };

  const MobiusMap G0 = gauss_map_at(curve, jet, 0).G;
  const double h = rep.ell / static_cast<double>(n_grid);
  const GaussPath path = integrate_gauss(q_of_s, G0, s.front(), h, n_grid);
  rep.reconstructed = reconstruct_curve(path);

  // Original embedding at the reconstruction abscissae, via interpolation
  // of z against s.  For a cocompact curve the closing sample is the
  // monodromy image of sample 0.
  std::vector<Complex> zs = curve.z;
  if (curve.cocompact) zs.push_back(apply_affine(curve.monodromy, curve.z[0]));
  const double diam = curve.diameter();
  std::size_t hint = 0;
  for (std::size_t j = 0; j + 1 < path.G.size(); ++j) {
    const double ss = path.s_at(j);
    while (hint + 2 < s.size() && s[hint + 1] <= ss) ++hint;
    // linear interpolation is enough for a comparison grid
    const double w = (ss - s[hint]) / (s[hint + 1] - s[hint]);
    const Complex z_ref = (1.0 - w) * zs[hint] + w * zs[hint + 1];
    const double dev = std::abs(rep.reconstructed.z[j] - z_ref) / diam;
    rep.max_deviation = std::max(rep.max_deviation, dev);
  }
  return rep;
}

// --- trajectory serialization -------------------------------------------

inline void write_summary_csv(const std::string& path,
                              const std::vector<SummaryRow>& rows) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw Error(ErrorCode::BadInput, "cannot open " + path);
  std::fprintf(f, "t,ell,normQ2,normQs2,dissipation_residual\n");
  for (const SummaryRow& r : rows)
    std::fprintf(f, "%.17g,%.17g,%.17g,%.17g,%.17g\n", r.t, r.ell, r.normQ2,
                 r.normQs2, r.dissipation_residual);
  std::fclose(f);
}

inline void write_snapshots_csv(const std::string& path,
                                const std::vector<FlowState>& snapshots) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw Error(ErrorCode::BadInput, "cannot open " + path);
  std::fprintf(f, "t,i,u,Q,rho\n");
  for (const FlowState& st : snapshots) {
    const std::size_t n = st.grid_size();
    for (std::size_t i = 0; i < n; ++i)
      std::fprintf(f, "%.17g,%zu,%.17g,%.17g,%.17g\n", st.t, i,
                   static_cast<double>(i) / static_cast<double>(n), st.Q[i],
                   st.rho[i]);
  }
  std::fclose(f);
}

}  // namespace iclf
