#include <catch2/catch_amalgamated.hpp>

#include "iclf/curve.hpp"
#include "iclf/diagnostics.hpp"
#include "iclf/invariants.hpp"

using namespace iclf;
using Catch::Approx;

namespace {

const double kPi = std::acos(-1.0);

// Remaining Euclidean length to the spiral center from the start of the
// sampled period.
double spiral_center_u(double a, double turns, double w_start = 0.0) {
  const double w_hi = w_start + 2.0 * kPi * turns;
  return std::sqrt(1.0 + a * a) / a * std::exp(a * w_hi);
}

}  // namespace

TEST_CASE("spiral jets match the analytic curvature derivatives") {
  const double a = 0.5;
  const SampledCurve curve = log_spiral(a, 1, 1500);
  const CurvatureJet jet = curvature_jet(curve);
  const double u0 = spiral_center_u(a, 1);

  double err_k = 0.0, err_ku = 0.0, err_kuu = 0.0, err_kuuu = 0.0;
  for (std::size_t i = 0; i < jet.size(); ++i) {
    const double R = u0 - jet.u[i];
    err_k = std::max(err_k, std::abs(jet.k[i] * a * R - 1.0));
    err_ku = std::max(err_ku, std::abs(jet.k_u[i] * a * R * R - 1.0));
    err_kuu = std::max(err_kuu, std::abs(jet.k_uu[i] * a * R * R * R / 2.0 - 1.0));
    err_kuuu =
        std::max(err_kuuu, std::abs(jet.k_uuu[i] * a * R * R * R * R / 6.0 - 1.0));
  }
  REQUIRE(err_k < 1e-6);
  REQUIRE(err_ku < 1e-4);
  REQUIRE(err_kuu < 1e-2);
  REQUIRE(err_kuuu < 1e-1);
}

TEST_CASE("spiral invariant length is 2 pi sqrt(a) per turn") {
  for (double a : {0.5, 1.0}) {
    const SampledCurve curve = log_spiral(a, 1, 1200);
    const CurvatureJet jet = curvature_jet(curve);
    const auto s = invariant_arclength(jet);
    REQUIRE(s.back() - s.front() ==
            Approx(2.0 * kPi * std::sqrt(a)).epsilon(1e-7));
  }
}

TEST_CASE("invariant length error drops fast under refinement") {
  const double a = 0.7;
  const double exact = 2.0 * kPi * std::sqrt(a);
  auto err = [&](int n) {
    const SampledCurve curve = log_spiral(a, 1, n);
    const auto s = invariant_arclength(curvature_jet(curve));
    return std::abs(s.back() - s.front() - exact);
  };
  const double e300 = err(300);
  const double e600 = err(600);
  REQUIRE(e300 / e600 > 16.0);
  REQUIRE(err(1200) < 1e-8);
}

TEST_CASE("spiral fundamental invariant is (1 - a^2) / (4a)") {
  for (double a : {0.4, 0.5, 1.0}) {
    const SampledCurve curve = log_spiral(a, 1, 1200);
    const auto Q = fundamental_invariant(curvature_jet(curve));
    const double expected = (1.0 - a * a) / (4.0 * a);
    for (double q : Q) REQUIRE(q == Approx(expected).margin(1e-4));
  }
}

TEST_CASE("fundamental invariant is Mobius invariant") {
  const double a = 0.5;
  const SampledCurve curve = log_spiral(a, 1, 2000);
  const Complex I(0.0, 1.0);
  // A generic map keeping the image away from infinity.
  const MobiusMap M(1.0, 0.2 + 0.1 * I, Complex(0.0, 0.01), 1.0);
  const SampledCurve image = transform_curve(M, curve);
  const auto Q = fundamental_invariant(curvature_jet(image));
  const double expected = (1.0 - a * a) / (4.0 * a);
  for (std::size_t i = 0; i < Q.size(); ++i)
    REQUIRE(Q[i] == Approx(expected).margin(5e-4));
}

TEST_CASE("a circular arc is inadmissible") {
  SampledCurve circle;
  const int n = 400;
  for (int i = 0; i < n; ++i) {
    const double u = 2.0 * i / n;  // third of a circle, open arc
    circle.u.push_back(u);
    circle.z.emplace_back(std::cos(u), std::sin(u));
  }
  const CurvatureJet jet = curvature_jet(circle);
  REQUIRE_FALSE(jet.admissible());
  REQUIRE_THROWS_MATCHES(fundamental_invariant(jet), Error,
                         Catch::Matchers::Predicate<Error>([](const Error& e) {
                           return e.code() == ErrorCode::Inadmissible;
                         }));
}

TEST_CASE("winding number counts the turns of the period") {
  for (double turns : {1.0, 2.0}) {
    const SampledCurve curve = log_spiral(0.8, turns, 900);
    const MonodromyClass cls = normal_form(curve.monodromy);
    REQUIRE(winding_number(curve, cls) == static_cast<int>(turns));
  }
}

TEST_CASE("monodromy eigenvalue of the spiral is exp(-pi a turns)") {
  const double a = 0.6, turns = 1.0;
  const SampledCurve curve = log_spiral(a, turns, 600);
  const MonodromyClass cls = normal_form(curve.monodromy);
  REQUIRE(cls.r == Approx(std::exp(-kPi * a * turns)).epsilon(1e-12));
  REQUIRE(cls.theta == Approx(0.0).margin(1e-12));
}

TEST_CASE("gauss frame sends the base point to a fifth-order normal form") {
  const double a = 0.7;
  const SampledCurve curve = log_spiral(a, 1, 4000);
  const CurvatureJet jet = curvature_jet(curve);
  const auto s = invariant_arclength(jet);
  const double Q = (1.0 - a * a) / (4.0 * a);

  const std::size_t base = 2000;
  const GaussFrame frame = gauss_map_at(curve, jet, base);

  // H = -(Q/30) s^5 + O(s^6): check both the exponent and the
  // coefficient.
  std::vector<double> log_s, log_h;
  for (int off : {8, 16, 32, 64}) {
    const double ds = s[base + off] - s[base];
    const double H = normal_form_defect(frame.G, curve.z[base + off]);
    REQUIRE(H / std::pow(ds, 5) == Approx(-Q / 30.0).epsilon(0.05));
    log_s.push_back(std::log(ds));
    log_h.push_back(std::log(std::abs(H)));
  }
  const double slope = (log_h.back() - log_h.front()) /
                       (log_s.back() - log_s.front());
  REQUIRE(slope > 4.7);
  REQUIRE(slope < 5.3);
}

TEST_CASE("resampling to uniform invariant length is accurate") {
  // Nonuniform parametrisation of a smooth periodic profile.
  const std::size_t n = 400;
  std::vector<double> s(n + 1), q(n + 1);
  const double ell = 3.0;
  for (std::size_t i = 0; i <= n; ++i) {
    const double x = static_cast<double>(i) / n;
    s[i] = ell * (x + 0.1 * std::sin(2.0 * kPi * x) / (2.0 * kPi));
    q[i] = std::cos(2.0 * kPi * x - 0.4);  // note: parametrised by x, not s
  }
  q[n] = q[0];
  const auto out = resample_to_uniform_s(s, q, 256);
  // Invert s(x) to evaluate the reference at the uniform s nodes.
  for (std::size_t j = 0; j < out.size(); ++j) {
    const double sj = ell * static_cast<double>(j) / out.size();
    double x = sj / ell;
    for (int it = 0; it < 40; ++it)
      x -= (ell * (x + 0.1 * std::sin(2.0 * kPi * x) / (2.0 * kPi)) - sj) /
           (ell * (1.0 + 0.1 * std::cos(2.0 * kPi * x)));
    REQUIRE(out[j] == Approx(std::cos(2.0 * kPi * x - 0.4)).margin(5e-8));
  }
}

TEST_CASE("curve csv io round-trips") {
  const SampledCurve curve = log_spiral(0.5, 1, 50);
  write_curve_csv("test_curve_io.csv", curve);
  const SampledCurve back = read_curve_csv("test_curve_io.csv");
  REQUIRE(back.size() == curve.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    REQUIRE(back.u[i] == curve.u[i]);
    REQUIRE(back.z[i] == curve.z[i]);
  }
  std::remove("test_curve_io.csv");
}

TEST_CASE("validation rejects a nonmonotone parameter") {
  SampledCurve c;
  c.u = {0.0, 1.0, 0.5};
  c.z = {Complex(0, 0), Complex(1, 0), Complex(2, 0)};
  REQUIRE_THROWS_MATCHES(c.validate(), Error,
                         Catch::Matchers::Predicate<Error>([](const Error& e) {
                           return e.code() == ErrorCode::NonmonotoneParam;
                         }));
}
