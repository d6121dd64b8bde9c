// Command-line driver: evolve the inversive lengthening flow, generate
// loxodromes, analyze sampled curves, and check invariant/reconstruction
// roundtrips.

#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "iclf/iclf.hpp"

namespace fs = std::filesystem;
using namespace iclf;

namespace {

struct CommonArgs {
  std::string config_path;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::optional<long> n_grid;
  std::optional<double> t_end;
  bool svg = false;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "key=value config file");
  cmd->add_option("--out", args.out_dir, "output directory");
  cmd->add_option("--seed", args.seed, "RNG seed override");
  cmd->add_option("--n-grid", args.n_grid, "grid size override");
  cmd->add_option("--t-end", args.t_end, "final time override");
  cmd->add_flag("--svg", args.svg, "write SVG figures");
}

Config load_config(const CommonArgs& args) {
  Config cfg;
  if (!args.config_path.empty()) cfg = Config::from_file(args.config_path);
  if (args.seed) cfg.set("flow.seed", std::to_string(*args.seed));
  if (args.n_grid) cfg.set("flow.n_grid", std::to_string(*args.n_grid));
  if (args.t_end) cfg.set("flow.t_end", std::to_string(*args.t_end));
  return cfg;
}

std::string out_path(const CommonArgs& args, const std::string& name) {
  fs::create_directories(args.out_dir);
  return (fs::path(args.out_dir) / name).string();
}

// Spiral parameter a for a constant invariant Q0: Q0 = (1 - a^2) / (4a).
double spiral_param(double q0) {
  return -2.0 * q0 + std::sqrt(4.0 * q0 * q0 + 1.0);
}

SampledCurve curve_from_config(const Config& cfg, const std::string& csv_arg) {
  if (!csv_arg.empty()) return read_curve_csv(csv_arg);
  const std::string source = cfg.get_string("curve.source", "spiral");
  if (source == "csv")
    return read_curve_csv(cfg.get_string("curve.path", "curve.csv"));
  if (source != "spiral")
    throw Error(ErrorCode::BadInput, "unknown curve.source " + source);
  return log_spiral(cfg.get_double("curve.a", 0.5),
                    cfg.get_double("curve.turns", 1.0),
                    static_cast<int>(cfg.get_long("curve.samples_per_turn",
                                                  1200)));
}

int cmd_run(const CommonArgs& args) {
  const Config cfg = load_config(args);
  const std::size_t n =
      static_cast<std::size_t>(cfg.get_long("flow.n_grid", 256));
  const double q0 = cfg.get_double("flow.q0", 0.375);
  const double a = spiral_param(q0);
  const double ell_default = 2.0 * std::acos(-1.0) * std::sqrt(a);
  const double ell = cfg.get_double("flow.ell", ell_default);

  FlowState st = loxodrome_state(q0, ell, n);
  st.Q = band_limited_noise(q0, cfg.get_double("flow.amplitude", 0.05),
                            static_cast<int>(cfg.get_long("flow.max_mode", 10)),
                            cfg.get_u64("flow.seed", 1), n);

  StepperConfig sc;
  sc.rtol = cfg.get_double("flow.rtol", 1e-8);
  sc.atol = cfg.get_double("flow.atol", 1e-12);
  sc.dt_init = cfg.get_double("flow.dt_init", 1e-6);
  sc.dt_max = cfg.get_double("flow.dt_max", 0.05);
  sc.remesh_interval =
      static_cast<int>(cfg.get_long("flow.remesh_interval", 20));
  const std::string scheme = cfg.get_string("flow.scheme", "imex");
  if (scheme == "erk")
    sc.scheme = Scheme::ERK;
  else if (scheme != "imex")
    throw Error(ErrorCode::BadInput, "unknown scheme " + scheme);

  EvolveOptions opts;
  opts.snapshot_interval =
      static_cast<int>(cfg.get_long("flow.snapshot_interval", 50));

  const double t_end = cfg.get_double("flow.t_end", 1.0);
  const Trajectory traj = evolve(st, t_end, sc, opts);

  write_summary_csv(out_path(args, "summary.csv"), traj.summary);
  write_snapshots_csv(out_path(args, "snapshots.csv"), traj.snapshots);

  const FlowState& fin = traj.snapshots.back();
  const MonodromyClass cls = measure_monodromy(fin);
  const LimitPrediction pred = predict_limit_Q(cls);
  std::printf("termination: %s\n", to_string(traj.reason));
  std::printf("steps: %zu  t: %.6g\n", traj.accepted_steps,
              traj.t_series.back());
  std::printf("length: %.12g -> %.12g\n", traj.ell_series.front(),
              traj.ell_series.back());
  std::printf("class: r=%.12g theta=%.12g n=%d\n", cls.r, cls.theta, cls.n);
  std::printf("predicted limit: Q=%.12g ell=%.12g\n", pred.Q_infinity,
              pred.ell_infinity);

  if (args.svg) {
    SvgPlot len_plot;
    len_plot.add_polyline(traj.t_series, traj.ell_series);
    len_plot.write(out_path(args, "length.svg"));
    bool positive = true;
    for (double v : traj.qs2_series) positive = positive && v > 0.0;
    if (positive) {
      SvgPlot decay(640, 480, false, /*log_y=*/true);
      decay.add_polyline(traj.t_series, traj.qs2_series, "#b22222");
      decay.write(out_path(args, "dissipation.svg"));
    }
    const GaussPath path = integrate_gauss_u(fin.Q, fin.rho,
                                             MobiusMap::identity());
    const SampledCurve curve = reconstruct_curve(path);
    SvgPlot portrait(640, 640, /*equal_aspect=*/true);
    portrait.add_curve(curve.z);
    portrait.write(out_path(args, "final_curve.svg"));
  }
  return 0;
}

int cmd_loxodrome(const CommonArgs& args) {
  const Config cfg = load_config(args);
  const double q0 = cfg.get_double("loxodrome.q0", 0.375);
  const double turns = cfg.get_double("loxodrome.turns", 1.0);
  const std::size_t samples = static_cast<std::size_t>(
      args.n_grid.value_or(cfg.get_long("loxodrome.samples", 2048)));
  const double a = spiral_param(q0);
  const double ell = 2.0 * std::acos(-1.0) * std::sqrt(a) * turns;

  LoxodromeSpec spec;
  spec.Q0 = q0;
  const GaussPath path =
      loxodrome_path(spec, 0.0, ell / static_cast<double>(samples), samples);
  SampledCurve curve = reconstruct_curve(path);
  curve.cocompact = true;
  curve.monodromy = path_monodromy(path);
  write_curve_csv(out_path(args, "curve.csv"), curve);

  const MonodromyClass cls = normal_form(curve.monodromy);
  std::printf("Q0=%.12g a=%.12g ell=%.12g\n", q0, a, ell);
  std::printf("class: r=%.12g theta=%.12g\n", cls.r, cls.theta);

  if (args.svg) {
    SvgPlot portrait(640, 640, /*equal_aspect=*/true);
    portrait.add_curve(curve.z);
    portrait.write(out_path(args, "curve.svg"));
  }
  return 0;
}

int cmd_analyze(const CommonArgs& args, const std::string& csv_arg) {
  const Config cfg = load_config(args);
  const SampledCurve curve = curve_from_config(cfg, csv_arg);
  const CurvatureJet jet = curvature_jet(curve);
  if (!jet.admissible())
    throw Error(ErrorCode::Inadmissible, "curve is not admissible");
  const auto s = invariant_arclength(jet);
  const auto Q = fundamental_invariant(jet);

  const std::string path = out_path(args, "invariants.csv");
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw Error(ErrorCode::BadInput, "cannot open " + path);
  std::fprintf(f, "u,k,k_u,k_uu,k_uuu,s,Q\n");
  for (std::size_t i = 0; i < jet.size(); ++i)
    std::fprintf(f, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", jet.u[i],
                 jet.k[i], jet.k_u[i], jet.k_uu[i], jet.k_uuu[i], s[i], Q[i]);
  std::fclose(f);

  double q_lo = Q[0], q_hi = Q[0];
  for (double q : Q) {
    q_lo = std::min(q_lo, q);
    q_hi = std::max(q_hi, q);
  }
  std::printf("samples: %zu\n", curve.size());
  std::printf("invariant length: %.12g\n", s.back() - s.front());
  std::printf("Q range: [%.12g, %.12g]\n", q_lo, q_hi);

  if (curve.cocompact) {
    const MonodromyClass cls0 = normal_form(curve.monodromy);
    MonodromyClass cls = cls0;
    cls.n = winding_number(curve, cls0);
    const LimitPrediction pred = predict_limit_Q(cls);
    const LengthBound bound = lox_length_bound(cls);
    std::printf("class: r=%.12g theta=%.12g n=%d\n", cls.r, cls.theta, cls.n);
    std::printf("limit: Q=%.12g ell=%.12g\n", pred.Q_infinity,
                pred.ell_infinity);
    std::printf("length bound: %.12g (alternate form %.12g)\n", bound.bound,
                bound.printed);
  }

  if (args.svg) {
    SvgPlot portrait(640, 640, /*equal_aspect=*/true);
    portrait.add_curve(curve.z);
    portrait.write(out_path(args, "curve.svg"));
    SvgPlot qplot;
    qplot.add_polyline(s, Q);
    qplot.write(out_path(args, "q_of_s.svg"));
  }
  return 0;
}

int cmd_roundtrip(const CommonArgs& args, const std::string& csv_arg) {
  const Config cfg = load_config(args);
  const SampledCurve curve = curve_from_config(cfg, csv_arg);
  const std::size_t n = static_cast<std::size_t>(
      args.n_grid.value_or(cfg.get_long("flow.n_grid", 512)));
  const RoundtripReport rep = roundtrip(curve, n);
  std::printf("invariant length: %.12g\n", rep.ell);
  std::printf("Q range: [%.12g, %.12g]\n", rep.q_min, rep.q_max);
  std::printf("max relative deviation: %.6e\n", rep.max_deviation);
  write_curve_csv(out_path(args, "reconstructed.csv"), rep.reconstructed);
  if (args.svg) {
    SvgPlot portrait(640, 640, /*equal_aspect=*/true);
    portrait.add_curve(curve.z, "#888888");
    portrait.add_curve(rep.reconstructed.z, "#b22222");
    portrait.write(out_path(args, "roundtrip.svg"));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"inversive curve-lengthening flow simulator"};
  app.require_subcommand(1);

  CommonArgs run_args, lox_args, ana_args, rt_args;
  std::string ana_csv, rt_csv;

  CLI::App* run = app.add_subcommand("run", "evolve the lengthening flow");
  add_common(run, run_args);
  CLI::App* lox = app.add_subcommand("loxodrome", "closed-form loxodrome");
  add_common(lox, lox_args);
  CLI::App* ana = app.add_subcommand("analyze", "invariants of a curve");
  add_common(ana, ana_args);
  ana->add_option("input", ana_csv, "curve CSV (u,re,im)");
  CLI::App* rt = app.add_subcommand("roundtrip",
                                    "measure, rebuild, compare");
  add_common(rt, rt_args);
  rt->add_option("input", rt_csv, "curve CSV (u,re,im)");

  CLI11_PARSE(app, argc, argv);
  try {
    if (run->parsed()) return cmd_run(run_args);
    if (lox->parsed()) return cmd_loxodrome(lox_args);
    if (ana->parsed()) return cmd_analyze(ana_args, ana_csv);
    if (rt->parsed()) return cmd_roundtrip(rt_args, rt_csv);
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return 1;
}
