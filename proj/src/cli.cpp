#include "charwave/cli.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "charwave/csv.hpp"
#include "charwave/oracle.hpp"
#include "charwave/scenario.hpp"

namespace charwave {

namespace {

struct Options {
  std::string scenario;
  std::string out;
  int nx = 0;
  int nt = 0;
  int nmax = 400;
  std::string point;
  std::string invariant = "p";
  unsigned long long seed = 0;
};

std::string guarded(const std::function<double()>& fn) {
  try {
    return format_real(fn());
  } catch (const HorizonExceeded&) {
    return "beyond-horizon";
  }
}

const char* configuration_name(ControlConfiguration c) {
  switch (c) {
    case ControlConfiguration::coincident:
      return "coincident";
    case ControlConfiguration::secondary_earlier:
      return "secondary-earlier";
    case ControlConfiguration::secondary_later:
      return "secondary-later";
  }
  return "coincident";
}

void run_check(const Scenario& sc, std::ostream& out) {
  const auto& maps = *sc.maps;
  const auto& report = maps.curves().report();
  out << "valid=true\n";
  out << "alpha=" << maps.curves().alpha().describe() << '\n';
  out << "beta=" << maps.curves().beta().describe() << '\n';
  out << "horizon=" << format_real(sc.horizon()) << '\n';
  out << "alpha_interpolation=" << report.alpha_interpolation << '\n';
  out << "beta_interpolation=" << report.beta_interpolation << '\n';
  out << "alpha_derivative_bound=" << format_real(report.alpha_derivative_bound) << '\n';
  out << "beta_derivative_bound=" << format_real(report.beta_derivative_bound) << '\n';
  out << "min_gap=" << format_real(report.min_gap) << '\n';
  out << "T*=" << guarded([&] { return maps.min_control_time(); }) << '\n';
  out << "T**=" << guarded([&] { return maps.secondary_time(); }) << '\n';
  out << "phi(0)=" << guarded([&] { return maps.phi_iterate(1, 0.0); }) << '\n';
  const IncreasingCheck inc = maps.check_increasing();
  out << "increasing=" << (inc.ok ? "true" : "false") << '\n';
  try {
    out << "configuration=" << configuration_name(configuration(maps)) << '\n';
  } catch (const HorizonExceeded&) {
    out << "configuration=beyond-horizon\n";
  }
  for (const auto& d : maps.diagnostics()) out << "diagnostic=" << d << '\n';
}

void run_solve(const Scenario& sc, const Options& opt, std::ostream& out) {
  const int nx = opt.nx > 0 ? opt.nx : sc.n_x;
  const int nt = opt.nt > 0 ? opt.nt : sc.n_t;
  const WaveSystem system = sc.system();
  CsvWriter csv(out, {"t", "x", "p", "q", "y", "y_t"});
  for (int i = 0; i < nt; ++i) {
    const double t = nt == 1 ? 0.0 : sc.horizon() * i / (nt - 1);
    const FieldSample f = system.reconstruct(t, nx);
    for (std::size_t k = 0; k < f.x.size(); ++k) {
      csv.cell(t).cell(f.x[k]).cell(f.p[k]).cell(f.q[k]).cell(f.y[k]).cell(f.y_t[k]);
      csv.end_row();
    }
  }
}

void run_control(const Scenario& sc, const Options& opt, std::ostream& out) {
  const int nx = opt.nx > 0 ? opt.nx : sc.n_x;
  const int nt = opt.nt > 0 ? opt.nt : sc.n_t;
  const bool target = sc.control_config.mode == ControlConfig::Mode::target;
  ControlConfiguration config = configuration(*sc.maps);
  ControlSignal signal;
  if (target) {
    TargetControl tc = target_control_v(sc.maps, sc.initial, sc.control_config.target,
                                        sc.tolerances.quadrature);
    signal = std::move(tc.signal);
    config = tc.configuration;
  } else {
    signal = null_control_v(sc.maps, sc.initial, sc.tolerances.quadrature);
  }
  const double t_star = sc.maps->min_control_time();
  CsvWriter csv(out, {"t", "u", "v"});
  for (int i = 0; i < nt; ++i) {
    const double t = nt == 1 ? 0.0 : t_star * i / (nt - 1);
    csv.cell(t).cell(signal.u(t)).cell(signal.v(t));
    csv.end_row();
  }
  summary_line(out, "mode", target ? "target" : "null");
  summary_line(out, "configuration", configuration_name(config));
  summary_line(out, "T*", t_star);
  const NullCheck check = verify_null(sc.maps, sc.initial, signal, nx);
  summary_line(out, "initial_energy", check.initial_energy);
  summary_line(out, "terminal_energy", check.terminal_energy);
  if (target) {
    const FieldSample f = controlled_system(sc.maps, sc.initial, signal).reconstruct(t_star, nx);
    double err_y = 0.0;
    double err_yt = 0.0;
    // The end nodes sit on the characteristics leaving the corners at T*,
    // where the state already belongs to the uncontrolled regions.
    for (std::size_t k = 1; k + 1 < f.x.size(); ++k) {
      err_y = std::max(err_y, std::fabs(f.y[k] - sc.control_config.target.h(f.x[k])));
      err_yt = std::max(err_yt, std::fabs(f.y_t[k] - sc.control_config.target.k(f.x[k])));
    }
    summary_line(out, "max_target_error_y", err_y);
    summary_line(out, "max_target_error_y_t", err_yt);
  } else {
    summary_line(out, "relative_energy",
                 check.initial_energy > 0.0 ? check.terminal_energy / check.initial_energy : 0.0);
    summary_line(out, "max_abs_y", check.max_abs_y);
    summary_line(out, "max_abs_y_t", check.max_abs_y_t);
  }
}

void run_stability(const Scenario& sc, const Options& opt, std::ostream& out) {
  const DecayReport report = psi_table(*sc.maps, sc.feedback, opt.nmax);
  std::vector<RateCandidate> candidates;
  if (sc.feedback_config.mode == FeedbackConfig::Mode::designed) {
    candidates.push_back({sc.feedback_config.rate.describe(), sc.feedback_config.rate});
  }
  const DecayVerdict verdict = classify_decay(report, candidates);
  const GrowthBound gb = growth_bound(report);
  CsvWriter csv(out, {"tau", "n", "psi", "ln_psi_over_phi_n"});
  for (int n = 0; n <= report.n_max; ++n) {
    for (std::size_t j = 0; j < report.tau.size(); ++j) {
      csv.cell(report.tau[j]).cell(static_cast<long long>(n)).cell(report.psi(n, j));
      csv.cell(report.ln_psi[n][j] / report.phi_n[n][j]);
      csv.end_row();
    }
  }
  summary_line(out, "feedback", sc.feedback.describe());
  summary_line(out, "increasing", report.increasing_ok ? "true" : "false");
  summary_line(out, "n_max", static_cast<double>(report.n_max));
  summary_line(out, "classification", verdict.label());
  summary_line(out, "omega", gb.status == GrowthBound::Status::undefined
                                 ? std::string("undefined")
                                 : format_real(gb.omega));
  if (verdict.kind == DecayKind::finite_time) {
    summary_line(out, "extinction_time", verdict.extinction_time);
  }
  if (!gb.diagnostic.empty()) summary_line(out, "omega_diagnostic", gb.diagnostic);
  for (const auto& d : report.diagnostics) summary_line(out, "diagnostic", d);
}

void run_trace(const Scenario& sc, const Options& opt, std::ostream& out) {
  double t = 0.0;
  double x = 0.0;
  if (!opt.point.empty()) {
    const auto comma = opt.point.find(',');
    if (comma == std::string::npos) throw ParseError("--point expects t,x");
    try {
      t = std::stod(opt.point.substr(0, comma));
      x = std::stod(opt.point.substr(comma + 1));
    } catch (const std::logic_error&) {
      throw ParseError("--point expects two numbers t,x");
    }
  } else {
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    t = sc.horizon() * unit(rng);
    const auto& cv = sc.maps->curves();
    x = cv.alpha().value(t) + (cv.beta().value(t) - cv.alpha().value(t)) * unit(rng);
  }
  if (opt.invariant != "p" && opt.invariant != "q") {
    throw ParseError("--invariant expects p or q");
  }
  const Invariant inv = opt.invariant == "p" ? Invariant::p : Invariant::q;
  const WaveSystem system = sc.system();
  sc.maps->classify(t, x);
  const RayTrace ray = trace(system, t, x, inv);
  CsvWriter csv(out, {"event_index", "time", "side", "factor"});
  for (std::size_t i = 0; i < ray.events.size(); ++i) {
    const auto& e = ray.events[i];
    csv.cell(static_cast<long long>(i)).cell(e.time);
    csv.cell(e.side == Side::alpha ? "alpha" : "beta").cell(e.factor);
    csv.end_row();
  }
  const PQ pq = system.eval_pq(t, x);
  summary_line(out, "t", t);
  summary_line(out, "x", x);
  summary_line(out, "invariant", opt.invariant);
  summary_line(out, "value", ray.value);
  summary_line(out, "closed_form", inv == Invariant::p ? pq.p : pq.q);
  summary_line(out, "terminal_invariant", ray.terminal_invariant == Invariant::p ? "p" : "q");
  summary_line(out, "terminal_coordinate", ray.terminal_coordinate);
}

void run_regions(const Scenario& sc, std::ostream& out) {
  const auto& maps = *sc.maps;
  const auto& cv = maps.curves();
  const double h = sc.horizon();
  CsvWriter csv(out, {"family", "index", "t", "x"});
  auto row = [&](const char* fam, std::size_t idx, double t, double x) {
    csv.cell(fam).cell(static_cast<long long>(idx)).cell(t).cell(x);
    csv.end_row();
  };
  const auto pb = maps.p_breakpoints();
  for (std::size_t j = 0; j < pb.size(); ++j) {
    const double s = pb[j];
    if (!std::isfinite(s) || s > cv.alpha_minus().forward(h)) break;
    const double t0 = cv.alpha_minus().inverse(s);
    row("p", j + 1, t0, cv.alpha().value(t0));
    if (s <= cv.beta_minus().forward(h)) {
      const double t1 = cv.beta_minus().inverse(s);
      row("p", j + 1, t1, cv.beta().value(t1));
    } else {
      row("p", j + 1, h, h - s);
    }
  }
  const auto qb = maps.q_breakpoints();
  for (std::size_t j = 0; j < qb.size(); ++j) {
    const double c = qb[j];
    if (!std::isfinite(c) || c > cv.beta_plus().forward(h)) break;
    const double t0 = cv.beta_plus().inverse(c);
    row("q", j + 1, t0, cv.beta().value(t0));
    if (c <= cv.alpha_plus().forward(h)) {
      const double t1 = cv.alpha_plus().inverse(c);
      row("q", j + 1, t1, cv.alpha().value(t1));
    } else {
      row("q", j + 1, h, c - h);
    }
  }
}

void add_common(CLI::App* cmd, Options& opt) {
  cmd->add_option("scenario", opt.scenario, "scenario file (JSON)")->required();
  cmd->add_option("--out", opt.out, "write the table to this file instead of stdout");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Characteristic-based solver for the 1D wave equation on moving domains"};
  app.require_subcommand(1);
  Options opt;
  auto* check = app.add_subcommand("check", "validate curves and print key times");
  auto* solve = app.add_subcommand("solve", "sample the field on a time-space grid");
  auto* control = app.add_subcommand("control", "synthesize and verify a boundary control");
  auto* stability = app.add_subcommand("stability", "tabulate psi_n and classify decay");
  auto* tracer = app.add_subcommand("trace", "trace one backward characteristic");
  auto* regions = app.add_subcommand("regions", "export region boundary segments");
  for (auto* cmd : {check, solve, control, stability, tracer, regions}) add_common(cmd, opt);
  for (auto* cmd : {solve, control}) {
    cmd->add_option("--nx", opt.nx, "space intervals per time slice")->check(CLI::Range(16, 1 << 24));
    cmd->add_option("--nt", opt.nt, "number of time samples")->check(CLI::PositiveNumber);
  }
  stability->add_option("--nmax", opt.nmax, "number of reflection iterates")
      ->check(CLI::Range(8, 1 << 24));
  tracer->add_option("--point", opt.point, "evaluation point t,x");
  tracer->add_option("--invariant", opt.invariant, "p or q");
  tracer->add_option("--seed", opt.seed, "seed for a random point when --point is absent");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  std::ofstream file;
  std::ostream* sink = &out;
  if (!opt.out.empty()) {
    file.open(opt.out, std::ios::binary);
    if (!file) {
      err << "error: cannot open " << opt.out << '\n';
      return kExitFailure;
    }
    sink = &file;
  }

  try {
    const Scenario sc = parse_scenario(opt.scenario);
    if (check->parsed()) run_check(sc, *sink);
    if (solve->parsed()) run_solve(sc, opt, *sink);
    if (control->parsed()) run_control(sc, opt, *sink);
    if (stability->parsed()) run_stability(sc, opt, *sink);
    if (tracer->parsed()) run_trace(sc, opt, *sink);
    if (regions->parsed()) run_regions(sc, *sink);
  } catch (const ValidationError& e) {
    if (check->parsed()) *sink << "valid=false\nerror=" << e.what() << '\n';
    err << "validation error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const HorizonExceeded& e) {
    err << "horizon exceeded: " << e.what() << '\n';
    return kExitHorizon;
  } catch (const ConvergenceError& e) {
    err << "non-convergence: " << e.what() << '\n';
    return kExitConvergence;
  } catch (const GeometryError& e) {
    err << "non-convergence: " << e.what() << '\n';
    return kExitConvergence;
  } catch (const RunawayError& e) {
    err << "non-convergence: " << e.what() << '\n';
    return kExitConvergence;
  } catch (const Error& e) {
    // Parse errors, singular feedback, refused preconditions, domain errors.
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitOk;
}

}  // namespace charwave
