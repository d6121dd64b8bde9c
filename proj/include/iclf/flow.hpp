#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "iclf/error.hpp"
#include "iclf/fft.hpp"
#include "iclf/mobius.hpp"

namespace iclf {

// State of the lengthening flow on a fixed periodic grid u in [0,1):
// the fundamental invariant Q and the arc-length density rho (ds = rho du).
struct FlowState {
  std::vector<double> Q;
  std::vector<double> rho;
  double t = 0.0;
  std::optional<MonodromyClass> monodromy_class;

  std::size_t grid_size() const { return Q.size(); }

  void validate() const {
    if (Q.size() != rho.size() || Q.empty())
      throw Error(ErrorCode::BadInput, "Q and rho grids must match");
    for (double r : rho)
      if (!(r > 0.0))
        throw Error(ErrorCode::RhoNonpositive, "density must stay positive");
  }
};

enum class Scheme { IMEX, ERK };

struct StepperConfig {
  double dt_init = 1e-6;
  double dt_min = 1e-14;
  double dt_max = 0.05;
  double rtol = 1e-8;
  double atol = 1e-12;
  // The density is periodically reset by remeshing, so its local error
  // can be controlled more loosely than the invariant itself.
  double rho_rtol_factor = 1.0;
  Scheme scheme = Scheme::IMEX;
  int remesh_interval = 20;
};

// --- ds quadrature ------------------------------------------------------

inline double ds_integral(const std::vector<double>& f,
                          const std::vector<double>& rho) {
  double acc = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) acc += f[i] * rho[i];
  return acc / static_cast<double>(f.size());
}

inline double norm2_ds(const std::vector<double>& f,
                       const std::vector<double>& rho) {
  double acc = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) acc += f[i] * f[i] * rho[i];
  return std::sqrt(acc / static_cast<double>(f.size()));
}

inline double flow_length(const FlowState& st) {
  double acc = 0.0;
  for (double r : st.rho) acc += r;
  return acc / static_cast<double>(st.rho.size());
}

// --- spatial operators --------------------------------------------------

namespace flow_detail {

inline std::vector<double> s_derivative_unchecked(std::vector<double> f,
                                                  const std::vector<double>& rho,
                                                  int p) {
  for (int j = 0; j < p; ++j) {
    f = spectral_derivative_u(f, 1);
    for (std::size_t i = 0; i < f.size(); ++i) f[i] /= rho[i];
  }
  return f;
}

inline std::vector<double> product(const std::vector<double>& a,
                                   const std::vector<double>& b,
                                   bool dealias) {
  std::vector<double> p(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) p[i] = a[i] * b[i];
  return dealias ? dealias_two_thirds(p) : p;
}

}  // namespace flow_detail

// p-th invariant derivative: repeated rho^{-1} d/du with spectral
// u-derivatives.
inline std::vector<double> s_derivative(const std::vector<double>& f,
                                        const std::vector<double>& rho,
                                        int p, bool check_resolution = true) {
  if (p < 0 || p > 6)
    throw Error(ErrorCode::BadInput, "derivative order must be in 0..6");
  if (f.size() != rho.size())
    throw Error(ErrorCode::BadInput, "field/density grid mismatch");
  if (check_resolution) check_resolved(f);
  return flow_detail::s_derivative_unchecked(f, rho, p);
}

// Commutator density C = Q''''/2 + 2 Q Q'' + (Q')^2 (derivatives in s).
inline std::vector<double> commutator_C(const std::vector<double>& Q,
                                        const std::vector<double>& rho,
                                        bool dealias = true,
                                        bool check_resolution = true) {
  if (check_resolution) check_resolved(Q);
  const auto Q1 = flow_detail::s_derivative_unchecked(Q, rho, 1);
  const auto Q2 = flow_detail::s_derivative_unchecked(Q1, rho, 1);
  const auto Q3 = flow_detail::s_derivative_unchecked(Q2, rho, 1);
  const auto Q4 = flow_detail::s_derivative_unchecked(Q3, rho, 1);
  const auto QQ2 = flow_detail::product(Q, Q2, dealias);
  const auto Q1Q1 = flow_detail::product(Q1, Q1, dealias);
  std::vector<double> c(Q.size());
  for (std::size_t i = 0; i < Q.size(); ++i)
    c[i] = 0.5 * Q4[i] + 2.0 * QQ2[i] + Q1Q1[i];
  return c;
}

// Right-hand side of the Q evolution:
// dQ/dt = Q^(6)/4 + 2 Q Q^(4) + 3 Q' Q^(3) + 2 (Q'')^2
//         + (4Q^2 + 1) Q'' + 2 Q (Q')^2.
inline std::vector<double> rhs_Q(const std::vector<double>& Q,
                                 const std::vector<double>& rho,
                                 bool dealias = true,
                                 bool check_resolution = true) {
  if (check_resolution) check_resolved(Q);
  const std::size_t n = Q.size();
  const auto Q1 = flow_detail::s_derivative_unchecked(Q, rho, 1);
  const auto Q2 = flow_detail::s_derivative_unchecked(Q1, rho, 1);
  const auto Q3 = flow_detail::s_derivative_unchecked(Q2, rho, 1);
  const auto Q4 = flow_detail::s_derivative_unchecked(Q3, rho, 1);
  const auto Q5 = flow_detail::s_derivative_unchecked(Q4, rho, 1);
  const auto Q6 = flow_detail::s_derivative_unchecked(Q5, rho, 1);
  const auto QQ4 = flow_detail::product(Q, Q4, dealias);
  const auto Q1Q3 = flow_detail::product(Q1, Q3, dealias);
  const auto Q2Q2 = flow_detail::product(Q2, Q2, dealias);
  const auto QQ = flow_detail::product(Q, Q, dealias);
  const auto QQ_Q2 = flow_detail::product(QQ, Q2, dealias);
  const auto Q1Q1 = flow_detail::product(Q1, Q1, dealias);
  const auto QQ1Q1 = flow_detail::product(Q, Q1Q1, dealias);
  std::vector<double> r(n);
  for (std::size_t i = 0; i < n; ++i)
    r[i] = 0.25 * Q6[i] + 2.0 * QQ4[i] + 3.0 * Q1Q3[i] + 2.0 * Q2Q2[i] +
           4.0 * QQ_Q2[i] + Q2[i] + 2.0 * QQ1Q1[i];
  return r;
}

// Same-state dissipation identity of the spatial discretization:
// d/dt int Q^2 ds computed from rhs_Q and C must equal the integrated-by-
// parts form.  Holds to spectral/rounding accuracy on resolved states.
struct DissipationIdentity {
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
};

inline DissipationIdentity dissipation_identity(const std::vector<double>& Q,
                                                const std::vector<double>& rho,
                                                double atol = 1e-14) {
  const auto rhs = rhs_Q(Q, rho, /*dealias=*/false, /*check=*/false);
  const auto C = commutator_C(Q, rho, /*dealias=*/false, /*check=*/false);
  const std::size_t n = Q.size();
  std::vector<double> lhs_field(n);
  for (std::size_t i = 0; i < n; ++i)
    lhs_field[i] = 2.0 * Q[i] * rhs[i] - C[i] * Q[i] * Q[i];
  const double lhs = ds_integral(lhs_field, rho);

  const auto Q1 = flow_detail::s_derivative_unchecked(Q, rho, 1);
  const auto Q2 = flow_detail::s_derivative_unchecked(Q1, rho, 1);
  const auto Q3 = flow_detail::s_derivative_unchecked(Q2, rho, 1);
  std::vector<double> rhs_field(n);
  for (std::size_t i = 0; i < n; ++i)
    rhs_field[i] = -0.5 * Q3[i] * Q3[i] - 2.0 * Q1[i] * Q1[i] -
                   15.0 * Q[i] * Q[i] * Q1[i] * Q1[i] +
                   5.0 * Q[i] * Q2[i] * Q2[i];
  const double rhs_val = ds_integral(rhs_field, rho);
  DissipationIdentity out;
  out.lhs = lhs;
  out.rhs = rhs_val;
  out.residual = std::abs(lhs - rhs_val) / std::max(std::abs(lhs), atol);
  return out;
}

// --- time stepping ------------------------------------------------------

namespace flow_detail {

// exp and the first two phi functions for real z <= 0, series-guarded.
inline double phi1(double z) {
  if (std::abs(z) < 0.5) {
    double term = 1.0, acc = 1.0;
    for (int k = 2; k <= 14; ++k) {
      term *= z / static_cast<double>(k);
      acc += term;
    }
    return acc;
  }
  return (std::exp(z) - 1.0) / z;
}

inline double phi2(double z) {
  if (std::abs(z) < 0.5) {
    double term = 0.5, acc = 0.5;
    for (int k = 3; k <= 15; ++k) {
      term *= z / static_cast<double>(k);
      acc += term;
    }
    return acc;
  }
  return (std::exp(z) - 1.0 - z) / (z * z);
}

// Symbol of the frozen-coefficient linearization about the mean profile
// q_bar: sigma(m) = -m^6/4 + 2 q_bar m^4 - (4 q_bar^2 + 1) m^2, which is
// nonpositive for every real wavenumber (so exp(sigma dt) is a
// contraction) and leaves only a mean-free remainder to treat explicitly.
inline std::vector<double> linear_symbol(std::size_t n, double rho_bar,
                                         double q_bar = 0.0) {
  std::vector<double> sym(n);
  const double two_pi = 2.0 * std::acos(-1.0);
  for (std::size_t k = 0; k < n; ++k) {
    const double m =
        two_pi * static_cast<double>(mode_of(k, n)) / rho_bar;
    const double m2 = m * m;
    sym[k] = -0.25 * m2 * m2 * m2 + 2.0 * q_bar * m2 * m2 -
             (4.0 * q_bar * q_bar + 1.0) * m2;
  }
  return sym;
}

inline std::vector<double> apply_symbol(const std::vector<double>& f,
                                        const std::vector<double>& sym) {
  auto c = spectrum(f);
  for (std::size_t k = 0; k < c.size(); ++k) c[k] *= sym[k];
  return from_spectrum(std::move(c));
}

inline double rms(const std::vector<double>& f) {
  double acc = 0.0;
  for (double v : f) acc += v * v;
  return std::sqrt(acc / static_cast<double>(f.size()));
}

}  // namespace flow_detail

class Stepper {
 public:
  Stepper(StepperConfig cfg) : cfg_(cfg), dt_(cfg.dt_init) {}

  double dt() const { return dt_; }
  void set_dt(double dt) { dt_ = dt; }

  // One accepted step; dt adapts internally.
  FlowState step(const FlowState& state) {
    state.validate();
    check_resolved(state.Q);
    for (;;) {
      if (dt_ < cfg_.dt_min)
        throw Error(ErrorCode::DtUnderflow, "time step below dt_min");
      double err_scaled = 0.0;
      FlowState next = cfg_.scheme == Scheme::IMEX
                           ? attempt_imex(state, dt_, err_scaled)
                           : attempt_erk(state, dt_, err_scaled);
      const double safe =
          0.9 * std::pow(std::max(err_scaled, 1e-10), -0.5);
      const double factor = std::min(5.0, std::max(0.2, safe));
      if (err_scaled <= 1.0) {
        dt_ = std::min(cfg_.dt_max, dt_ * factor);
        for (double r : next.rho)
          if (!(r > 0.0))
            throw Error(ErrorCode::RhoNonpositive,
                        "admissibility lost during step");
        return next;
      }
      dt_ *= std::max(0.1, factor);
    }
  }

 private:
  // ETD2RK: exact integrating factor for the frozen linear symbol, the
  // remainder explicit; the phi2 correction doubles as the embedded error
  // estimate.
  FlowState attempt_imex(const FlowState& st, double dt,
                         double& err_scaled) const {
    const std::size_t n = st.grid_size();
    const double rho_bar = flow_length(st);
    double q_bar = 0.0;
    for (double q : st.Q) q_bar += q;
    q_bar /= static_cast<double>(n);
    const auto sym = flow_detail::linear_symbol(n, rho_bar, q_bar);

    auto nonlinear = [&](const std::vector<double>& Q,
                         const std::vector<double>& rho) {
      auto r = rhs_Q(Q, rho, /*dealias=*/true, /*check=*/false);
      const auto LQ = flow_detail::apply_symbol(Q, sym);
      for (std::size_t i = 0; i < n; ++i) r[i] -= LQ[i];
      return r;
    };
    auto rho_rate = [&](const std::vector<double>& Q,
                        const std::vector<double>& rho) {
      auto c = commutator_C(Q, rho, /*dealias=*/true, /*check=*/false);
      std::vector<double> g(n);
      for (std::size_t i = 0; i < n; ++i) g[i] = -c[i] * rho[i];
      return g;
    };

    const auto Nn = nonlinear(st.Q, st.rho);
    const auto gn = rho_rate(st.Q, st.rho);

    // Predictor (ETD Euler).
    auto cQ = spectrum(st.Q);
    auto cN = spectrum(Nn);
    for (std::size_t k = 0; k < n; ++k) {
      const double z = sym[k] * dt;
      cQ[k] = std::exp(z) * cQ[k] + dt * flow_detail::phi1(z) * cN[k];
    }
    std::vector<double> Qa = from_spectrum(std::move(cQ));
    std::vector<double> rho_a(n);
    for (std::size_t i = 0; i < n; ++i) rho_a[i] = st.rho[i] + dt * gn[i];

    const auto Na = nonlinear(Qa, rho_a);
    const auto ga = rho_rate(Qa, rho_a);

    // Corrector.
    std::vector<double> diff(n);
    for (std::size_t i = 0; i < n; ++i) diff[i] = Na[i] - Nn[i];
    auto cD = spectrum(diff);
    for (std::size_t k = 0; k < n; ++k)
      cD[k] *= dt * flow_detail::phi2(sym[k] * dt);
    const std::vector<double> corrQ = from_spectrum(std::move(cD));

    FlowState next;
    next.t = st.t + dt;
    next.monodromy_class = st.monodromy_class;
    next.Q.resize(n);
    next.rho.resize(n);
    std::vector<double> corr_rho(n);
    for (std::size_t i = 0; i < n; ++i) {
      next.Q[i] = Qa[i] + corrQ[i];
      corr_rho[i] = 0.5 * dt * (ga[i] - gn[i]);
      next.rho[i] = st.rho[i] + dt * gn[i] + corr_rho[i];
    }

    const double scaleQ = cfg_.rtol * flow_detail::rms(st.Q) + cfg_.atol;
    const double scaleR =
        cfg_.rho_rtol_factor * cfg_.rtol * flow_detail::rms(st.rho) +
        cfg_.atol;
    err_scaled = std::max(flow_detail::rms(corrQ) / scaleQ,
                          flow_detail::rms(corr_rho) / scaleR);
    return next;
  }

  // Bogacki-Shampine 3(2) on the full explicit system.  Subject to the
  // ~ (h min rho)^6 stability ceiling of the sixth-order operator; meant
  // for small grids and cross-checks.
  FlowState attempt_erk(const FlowState& st, double dt,
                        double& err_scaled) const {
    const std::size_t n = st.grid_size();
    using Field = std::vector<double>;
    auto deriv = [&](const Field& Q, const Field& rho,
                     Field& dQ, Field& dR) {
      dQ = rhs_Q(Q, rho, /*dealias=*/true, /*check=*/false);
      const auto c = commutator_C(Q, rho, /*dealias=*/true, /*check=*/false);
      dR.resize(n);
      for (std::size_t i = 0; i < n; ++i) dR[i] = -c[i] * rho[i];
    };
    auto axpy = [&](const Field& y, double h, const Field& d) {
      Field r(n);
      for (std::size_t i = 0; i < n; ++i) r[i] = y[i] + h * d[i];
      return r;
    };

    Field k1Q, k1R, k2Q, k2R, k3Q, k3R, k4Q, k4R;
    deriv(st.Q, st.rho, k1Q, k1R);
    deriv(axpy(st.Q, 0.5 * dt, k1Q), axpy(st.rho, 0.5 * dt, k1R), k2Q, k2R);
    deriv(axpy(st.Q, 0.75 * dt, k2Q), axpy(st.rho, 0.75 * dt, k2R), k3Q,
          k3R);

    FlowState next;
    next.t = st.t + dt;
    next.monodromy_class = st.monodromy_class;
    next.Q.resize(n);
    next.rho.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      next.Q[i] = st.Q[i] +
                  dt * (2.0 * k1Q[i] + 3.0 * k2Q[i] + 4.0 * k3Q[i]) / 9.0;
      next.rho[i] = st.rho[i] +
                    dt * (2.0 * k1R[i] + 3.0 * k2R[i] + 4.0 * k3R[i]) / 9.0;
    }
    deriv(next.Q, next.rho, k4Q, k4R);
    // Embedded 2nd-order difference.
    double e2Q = 0.0, e2R = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double eq = dt * (-5.0 * k1Q[i] / 72.0 + k2Q[i] / 12.0 +
                              k3Q[i] / 9.0 - k4Q[i] / 8.0);
      const double er = dt * (-5.0 * k1R[i] / 72.0 + k2R[i] / 12.0 +
                              k3R[i] / 9.0 - k4R[i] / 8.0);
      e2Q += eq * eq;
      e2R += er * er;
    }
    const double scaleQ = cfg_.rtol * flow_detail::rms(st.Q) + cfg_.atol;
    const double scaleR =
        cfg_.rho_rtol_factor * cfg_.rtol * flow_detail::rms(st.rho) +
        cfg_.atol;
    err_scaled =
        std::max(std::sqrt(e2Q / static_cast<double>(n)) / scaleQ,
                 std::sqrt(e2R / static_cast<double>(n)) / scaleR);
    return next;
  }

  StepperConfig cfg_;
  double dt_;
};

inline FlowState step(const FlowState& state, const StepperConfig& cfg) {
  Stepper st(cfg);
  return st.step(state);
}

// Resample Q onto the uniform-invariant-arc-length parametrisation
// (rho == ell) by spectral interpolation.  Geometric content unchanged.
inline FlowState remesh(const FlowState& state) {
  state.validate();
  const std::size_t n = state.grid_size();
  const double ell = flow_length(state);
  const auto c_rho = spectrum(state.rho);
  const auto c_Q = spectrum(state.Q);
  FlowState out;
  out.t = state.t;
  out.monodromy_class = state.monodromy_class;
  out.Q.resize(n);
  out.rho.assign(n, ell);
  double u = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double target = ell * static_cast<double>(j) / static_cast<double>(n);
    // Newton on sigma(u) = int_0^u rho = target; sigma' = rho > 0.
    for (int it = 0; it < 50; ++it) {
      const double g = fourier_antiderivative_eval(c_rho, u) - target;
      const double d = fourier_eval(c_rho, u);
      const double du = g / d;
      u -= du;
      if (std::abs(du) < 1e-15) break;
    }
    out.Q[j] = fourier_eval(c_Q, u);
  }
  return out;
}

// --- trajectory driver --------------------------------------------------

enum class Termination { AlreadyConverged, Converged, ReachedTEnd };

inline const char* to_string(Termination t) {
  switch (t) {
    case Termination::AlreadyConverged: return "already_loxodromic";
    case Termination::Converged: return "converged";
    case Termination::ReachedTEnd: return "reached_t_end";
  }
  return "unknown";
}

struct SummaryRow {
  double t = 0.0;
  double ell = 0.0;
  double normQ2 = 0.0;   // ||Q||_2^2 (ds)
  double normQs2 = 0.0;  // ||Q_s||_2^2 (ds)
  double dissipation_residual = 0.0;
};

struct Trajectory {
  std::vector<FlowState> snapshots;
  std::vector<SummaryRow> summary;
  // Per accepted step (including t = 0):
  std::vector<double> t_series;
  std::vector<double> ell_series;
  std::vector<double> qs2_series;   // int Q_s^2 ds
  std::vector<double> q2_series;    // int Q^2 ds
  std::vector<double> lyap_series;  // (1/22)||Q'''||^2 + (5/4)||Q Q'||^2
                                    //   + 2||Q'||^2
  Termination reason = Termination::ReachedTEnd;
  double dissipation_accum = 0.0;  // int_0^t int Q_s^2 ds dtau (trapezoid)
  std::size_t accepted_steps = 0;
};

struct EvolveOptions {
  int snapshot_interval = 50;   // accepted steps per stored snapshot
  double convergence_qs = 1e-10;  // ||Q_s||_2 threshold
  int convergence_hits = 3;
  std::function<void(const FlowState&)> observer;
};

inline Trajectory evolve(const FlowState& state0, double t_end,
                         const StepperConfig& cfg,
                         const EvolveOptions& opts = {}) {
  state0.validate();
  Trajectory traj;
  Stepper stepper(cfg);
  FlowState cur = state0;

  auto qs_norm2 = [&](const FlowState& st) {
    const auto Qs = s_derivative(st.Q, st.rho, 1, /*check=*/false);
    const double v = norm2_ds(Qs, st.rho);
    return v * v;
  };
  auto record_summary = [&](const FlowState& st) {
    SummaryRow row;
    row.t = st.t;
    row.ell = flow_length(st);
    const double nq = norm2_ds(st.Q, st.rho);
    row.normQ2 = nq * nq;
    row.normQs2 = qs_norm2(st);
    row.dissipation_residual = dissipation_identity(st.Q, st.rho).residual;
    traj.summary.push_back(row);
  };
  auto record_series = [&](const FlowState& st, double qs2) {
    traj.t_series.push_back(st.t);
    traj.ell_series.push_back(flow_length(st));
    traj.qs2_series.push_back(qs2);
    const double q2 = norm2_ds(st.Q, st.rho);
    traj.q2_series.push_back(q2 * q2);
    const auto Q1 = flow_detail::s_derivative_unchecked(st.Q, st.rho, 1);
    const auto Q2 = flow_detail::s_derivative_unchecked(Q1, st.rho, 1);
    const auto Q3 = flow_detail::s_derivative_unchecked(Q2, st.rho, 1);
    std::vector<double> qq1(st.Q.size());
    for (std::size_t i = 0; i < st.Q.size(); ++i) qq1[i] = st.Q[i] * Q1[i];
    const double n3 = norm2_ds(Q3, st.rho);
    const double nqq1 = norm2_ds(qq1, st.rho);
    traj.lyap_series.push_back(n3 * n3 / 22.0 + 1.25 * nqq1 * nqq1 +
                               2.0 * qs2);
  };

  double qs2 = qs_norm2(cur);
  record_series(cur, qs2);
  record_summary(cur);
  traj.snapshots.push_back(cur);
  if (opts.observer) opts.observer(cur);

  if (std::sqrt(qs2) < opts.convergence_qs) {
    traj.reason = Termination::AlreadyConverged;
    return traj;
  }

  int hits = 0;
  int since_snapshot = 0;
  int since_remesh = 0;
  while (cur.t < t_end) {
    if (stepper.dt() > t_end - cur.t) stepper.set_dt(t_end - cur.t);
    FlowState next = stepper.step(cur);
    ++traj.accepted_steps;
    ++since_snapshot;
    ++since_remesh;

    if (cfg.remesh_interval > 0 && since_remesh >= cfg.remesh_interval) {
      next = remesh(next);
      since_remesh = 0;
    }

    const double qs2_next = qs_norm2(next);
    traj.dissipation_accum += 0.5 * (qs2 + qs2_next) * (next.t - cur.t);
    qs2 = qs2_next;
    cur = std::move(next);
    record_series(cur, qs2);

    if (since_snapshot >= opts.snapshot_interval) {
      since_snapshot = 0;
      record_summary(cur);
      traj.snapshots.push_back(cur);
      if (opts.observer) opts.observer(cur);
    }

    if (std::sqrt(qs2) < opts.convergence_qs) {
      if (++hits >= opts.convergence_hits) {
        traj.reason = Termination::Converged;
        break;
      }
    } else {
      hits = 0;
    }
  }
  if (traj.snapshots.back().t != cur.t) {
    record_summary(cur);
    traj.snapshots.push_back(cur);
    if (opts.observer) opts.observer(cur);
  }
  return traj;
}

// Band-limited noise about a constant, normalized to a given sup-norm
// amplitude.  Deterministic for a fixed seed.
inline std::vector<double> band_limited_noise(double base, double amplitude,
                                              int max_mode, std::uint64_t seed,
                                              std::size_t n) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> coef_a(max_mode + 1), coef_b(max_mode + 1);
  for (int k = 1; k <= max_mode; ++k) {
    coef_a[k] = normal(rng);
    coef_b[k] = normal(rng);
  }
  const double two_pi = 2.0 * std::acos(-1.0);
  std::vector<double> p(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = static_cast<double>(i) / static_cast<double>(n);
    for (int k = 1; k <= max_mode; ++k)
      p[i] += coef_a[k] * std::cos(two_pi * k * u) +
              coef_b[k] * std::sin(two_pi * k * u);
  }
  double sup = 0.0;
  for (double v : p) sup = std::max(sup, std::abs(v));
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i)
    out[i] = base + (sup > 0.0 ? amplitude * p[i] / sup : 0.0);
  return out;
}

// Loxodrome fixed point of the flow: constant Q on a period of invariant
// length ell.
inline FlowState loxodrome_state(double Q0, double ell, std::size_t n) {
  FlowState st;
  st.Q.assign(n, Q0);
  st.rho.assign(n, ell);
  return st;
}

}  // namespace iclf
