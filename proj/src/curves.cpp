#include "charwave/curves.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "charwave/catalog.hpp"

namespace charwave {

namespace {

template <class... Ts>
struct Overload : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overload(Ts...) -> Overload<Ts...>;

constexpr int kGapSamples = 10000;
constexpr double kEdgeSlack = 1e-9;

std::string num(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

double BoundaryFn::value(double t) const {
  return std::visit(Overload{
                        [t](const Line& l) { return l.intercept + l.slope * t; },
                        [t](const Sinusoid& s) {
                          return s.offset + s.amplitude * std::sin(s.frequency * t);
                        },
                        [t](const Tabulated& tab) { return tab.interp.value(t); },
                    },
                    repr_);
}

double BoundaryFn::derivative(double t) const {
  return std::visit(Overload{
                        [](const Line& l) { return l.slope; },
                        [t](const Sinusoid& s) {
                          return s.amplitude * s.frequency * std::cos(s.frequency * t);
                        },
                        [t](const Tabulated& tab) { return tab.interp.derivative(t); },
                    },
                    repr_);
}

std::optional<Line> BoundaryFn::as_line() const {
  if (const auto* l = std::get_if<Line>(&repr_)) return *l;
  return std::nullopt;
}

double BoundaryFn::derivative_sup(double horizon) const {
  return std::visit(Overload{
                        [](const Line& l) { return std::fabs(l.slope); },
                        // cos(frequency t) = 1 at t = 0, so the bound is attained.
                        [](const Sinusoid& s) { return std::fabs(s.amplitude * s.frequency); },
                        [horizon](const Tabulated& tab) {
                          double sup = 0.0;
                          const double end = std::min(horizon, tab.interp.back());
                          for (int i = 0; i <= kGapSamples; ++i) {
                            const double t = end * i / kGapSamples;
                            sup = std::max(sup, std::fabs(tab.interp.derivative(t)));
                          }
                          for (double t : tab.interp.nodes()) {
                            if (t <= end) sup = std::max(sup, std::fabs(tab.interp.derivative(t)));
                          }
                          return sup;
                        },
                    },
                    repr_);
}

double BoundaryFn::domain_end() const {
  if (const auto* tab = std::get_if<Tabulated>(&repr_)) return tab->interp.back();
  return std::numeric_limits<double>::infinity();
}

std::string BoundaryFn::describe() const {
  return std::visit(
      Overload{
          [](const Line& l) {
            if (l.slope == 0.0) return "const(" + num(l.intercept) + ")";
            return "affine(" + num(l.slope) + ", " + num(l.intercept) + ")";
          },
          [](const Sinusoid& s) {
            return "sinusoid(" + num(s.amplitude) + ", " + num(s.frequency) + ", " +
                   num(s.offset) + ")";
          },
          [](const Tabulated& tab) {
            return "tabulated(" + std::to_string(tab.interp.nodes().size()) + " samples)";
          },
      },
      repr_);
}

std::string BoundaryFn::interpolation() const {
  return std::holds_alternative<Tabulated>(repr_) ? "monotone cubic hermite (C1)" : "exact";
}

BoundaryFn parse_curve(const std::string& text) {
  const CallExpr call = parse_call(text);
  auto need = [&](std::size_t n) {
    if (call.args.size() != n) {
      throw ParseError(call.name + " expects " + std::to_string(n) + " argument(s)");
    }
  };
  if (call.name == "const") {
    need(1);
    return BoundaryFn::constant(call.args[0]);
  }
  if (call.name == "affine") {
    need(2);
    return BoundaryFn::affine(call.args[0], call.args[1]);
  }
  if (call.name == "sinusoid" || call.name == "sinusoidal") {
    need(3);
    return BoundaryFn::sinusoidal(call.args[0], call.args[1], call.args[2]);
  }
  throw ParseError("unknown curve family '" + call.name + "'");
}

double eval_pm(const BoundaryFn& z, Sign sign, double t) {
  return sign == Sign::plus ? t + z.value(t) : t - z.value(t);
}

MonotoneMap::MonotoneMap(BoundaryFn curve, Sign sign, double horizon, double tol)
    : curve_(std::move(curve)), sign_(sign), horizon_(horizon), tol_(tol) {
  range_lo_ = forward(0.0);
}

double MonotoneMap::inverse(double s) const {
  if (!std::isfinite(s)) throw DomainError("cannot invert non-finite value");
  if (s <= range_lo_) {
    if (s < range_lo_ - kEdgeSlack * std::max(1.0, std::fabs(s))) {
      throw RangeError("value " + num(s) + " lies below the range start " + num(range_lo_));
    }
    return 0.0;
  }
  double lo = 0.0;
  double step = 1.0;
  double hi = std::min(step, horizon_);
  while (forward(hi) < s) {
    if (hi >= horizon_) {
      if (s - forward(horizon_) <= kEdgeSlack * std::max(1.0, std::fabs(s))) return horizon_;
      throw HorizonExceeded("inverse of " + num(s) + " lies beyond horizon " + num(horizon_));
    }
    lo = hi;
    step *= 2.0;
    hi = std::min(lo + step, horizon_);
  }
  return solve_increasing([&](double t) { return forward(t) - s; }, lo, hi, tol_);
}

double invert_monotone(const MonotoneMap& map, double s) { return map.inverse(s); }

bool ValidationReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

double ValidationReport::derivative_bound() const {
  return std::max(alpha_derivative_bound, beta_derivative_bound);
}

std::string ValidationReport::failures() const {
  std::string out;
  for (const auto& c : checks) {
    if (!c.passed) out += (out.empty() ? "" : "; ") + c.name + ": " + c.detail;
  }
  return out;
}

ValidationReport validate(const BoundaryFn& alpha, const BoundaryFn& beta, double horizon) {
  ValidationReport r;
  r.alpha_interpolation = alpha.interpolation();
  r.beta_interpolation = beta.interpolation();
  if (!(horizon > 0.0) || !std::isfinite(horizon)) {
    r.checks.push_back({"horizon", false, "horizon must be positive and finite"});
    return r;
  }
  for (const auto* curve : {&alpha, &beta}) {
    const char* name = curve == &alpha ? "alpha" : "beta";
    const bool covers = curve->domain_end() >= horizon;
    r.checks.push_back({std::string(name) + " covers horizon", covers,
                        "samples end at " + num(curve->domain_end())});
  }
  if (!r.ok()) return r;

  const double a0 = alpha.value(0.0);
  const double b0 = beta.value(0.0);
  r.checks.push_back({"alpha(0) = 0", std::fabs(a0) <= 1e-12, "alpha(0) = " + num(a0)});
  r.checks.push_back({"beta(0) = 1", std::fabs(b0 - 1.0) <= 1e-12, "beta(0) = " + num(b0)});

  r.alpha_derivative_bound = alpha.derivative_sup(horizon);
  r.beta_derivative_bound = beta.derivative_sup(horizon);
  r.checks.push_back({"|alpha'| < 1", r.alpha_derivative_bound < 1.0,
                      "sup |alpha'| = " + num(r.alpha_derivative_bound)});
  r.checks.push_back({"|beta'| < 1", r.beta_derivative_bound < 1.0,
                      "sup |beta'| = " + num(r.beta_derivative_bound)});

  auto gap = [&](double t) { return beta.value(t) - alpha.value(t); };
  int best = 0;
  double best_gap = gap(0.0);
  for (int i = 1; i <= kGapSamples; ++i) {
    const double g = gap(horizon * i / kGapSamples);
    if (!std::isfinite(g)) {
      r.checks.push_back({"finite", false, "non-finite curve value"});
      return r;
    }
    if (g < best_gap) {
      best_gap = g;
      best = i;
    }
  }
  double lo = horizon * std::max(0, best - 1) / kGapSamples;
  double hi = horizon * std::min(kGapSamples, best + 1) / kGapSamples;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  for (int it = 0; it < 80; ++it) {
    if (gap(c) < gap(d)) {
      hi = d;
    } else {
      lo = c;
    }
    c = hi - inv_phi * (hi - lo);
    d = lo + inv_phi * (hi - lo);
  }
  const double t_ref = 0.5 * (lo + hi);
  r.min_gap = std::min(best_gap, gap(t_ref));
  r.min_gap_time = gap(t_ref) < best_gap ? t_ref : horizon * best / kGapSamples;
  r.checks.push_back({"alpha < beta", r.min_gap > 0.0,
                      "min gap " + num(r.min_gap) + " at t = " + num(r.min_gap_time)});
  return r;
}

CurvePair CurvePair::create(BoundaryFn alpha, BoundaryFn beta, double horizon, Tolerances tol) {
  ValidationReport report = validate(alpha, beta, horizon);
  if (!report.ok()) throw ValidationError("invalid curve pair: " + report.failures());
  return CurvePair(std::move(alpha), std::move(beta), horizon, tol, std::move(report));
}

CurvePair::CurvePair(BoundaryFn alpha, BoundaryFn beta, double horizon, Tolerances tol,
                     ValidationReport report)
    : alpha_(alpha),
      beta_(beta),
      horizon_(horizon),
      tol_(tol),
      report_(std::move(report)),
      alpha_plus_(alpha, Sign::plus, horizon, tol.inversion),
      alpha_minus_(alpha, Sign::minus, horizon, tol.inversion),
      beta_plus_(beta, Sign::plus, horizon, tol.inversion),
      beta_minus_(beta, Sign::minus, horizon, tol.inversion) {}

}  // namespace charwave
