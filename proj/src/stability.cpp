#include "charwave/stability.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <limits>
#include <sstream>

namespace charwave {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kSingular = 1e-14;
constexpr double kOverflowCap = 1e250;
constexpr double kLogFloor = -1e3;
constexpr double kRelTol = 1e-4;
constexpr double kAbsTol = 1e-5;
constexpr double kFitDrift = 1e-2;
constexpr double kUnsettledMargin = 1e-2;
constexpr double kNoDecayLevel = 0.5;
constexpr double kNoDecayDrift = -1e-6;

std::string num(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

// Slope of ln psi against phi^[n] between two iterate indices.
double slope(const DecayReport& r, std::size_t j, int a, int b) {
  return (r.ln_psi[b][j] - r.ln_psi[a][j]) / (r.phi_n[b][j] - r.phi_n[a][j]);
}

// Limit of ln psi_n / phi^[n], extrapolated from two trailing windows under
// the model slope = L + A / phi.
double extrapolated_rate(const DecayReport& r, std::size_t j, int m) {
  const int a = m / 2;
  const int b = (3 * m) / 4;
  const double e1 = slope(r, j, a, b);
  const double e2 = slope(r, j, b, m);
  const double c1 = 0.5 * (r.phi_n[a][j] + r.phi_n[b][j]);
  const double c2 = 0.5 * (r.phi_n[b][j] + r.phi_n[m][j]);
  return (c2 * e2 - c1 * e1) / (c2 - c1);
}

// Same limit with a 1 / phi^2 term and three windows. Only used to size the
// extrapolation error: both agree exactly when the slope is constant.
double extrapolated_rate_quadratic(const DecayReport& r, std::size_t j, int m) {
  const int cut[4] = {m / 4, m / 2, (3 * m) / 4, m};
  double e[3], u[3];
  for (int i = 0; i < 3; ++i) {
    e[i] = slope(r, j, cut[i], cut[i + 1]);
    u[i] = 2.0 / (r.phi_n[cut[i]][j] + r.phi_n[cut[i + 1]][j]);
  }
  double out = 0.0;
  for (int i = 0; i < 3; ++i) {
    double w = 1.0;
    for (int k = 0; k < 3; ++k)
      if (k != i) w *= u[k] / (u[k] - u[i]);
    out += w * e[i];
  }
  return out;
}

}  // namespace

FeedbackSpec::FeedbackSpec()
    : f_([](double) { return 0.0; }),
      reflection_([](double) { return 1.0; }),
      description_("const(0)") {}

FeedbackSpec FeedbackSpec::constant(double f) {
  if (std::fabs(1.0 + f) <= kSingular) throw FeedbackSingularity("constant feedback f = -1");
  FeedbackSpec out;
  const double refl = (1.0 - f) / (1.0 + f);
  out.f_ = [f](double) { return f; };
  out.reflection_ = [refl](double) { return refl; };
  out.description_ = "const(" + num(f) + ")";
  out.absorbing_ = f == 1.0;
  return out;
}

FeedbackSpec FeedbackSpec::expression(Func f) {
  FeedbackSpec out;
  out.description_ = f.describe();
  if (const auto* c = std::get_if<Func::Constant>(&f.repr())) out.absorbing_ = c->c == 1.0;
  out.f_ = [f](double t) { return f(t); };
  // Closed forms of F avoid the cancellation in 1 - f when f tends to 1.
  if (const auto* r = std::get_if<Func::Rational>(&f.repr())) {
    const Func::Rational q = *r;
    out.reflection_ = [q](double t) {
      const double den = (q.b0 + q.a0) + (q.b1 + q.a1) * t;
      if (std::fabs(den) <= kSingular * std::fmax(1.0, std::fabs(q.b0 + q.b1 * t))) {
        throw FeedbackSingularity("1 + f vanishes at t = " + num(t));
      }
      return ((q.b0 - q.a0) + (q.b1 - q.a1) * t) / den;
    };
    return out;
  }
  if (const auto* r = std::get_if<Func::SineRatio>(&f.repr())) {
    const Func::SineRatio q = *r;
    if (q.a == 0.0) throw FeedbackSingularity("sine_ratio with a = 0 gives f = -1");
    out.reflection_ = [q](double t) { return std::sin(q.k * std::numbers::pi * t) / q.a; };
    return out;
  }
  out.reflection_ = [f](double t) {
    const double v = f(t);
    if (std::fabs(1.0 + v) <= kSingular) {
      throw FeedbackSingularity("1 + f vanishes at t = " + num(t));
    }
    return (1.0 - v) / (1.0 + v);
  };
  return out;
}

FeedbackSpec FeedbackSpec::from_reflection(std::function<double(double)> reflection,
                                           std::string description) {
  FeedbackSpec out;
  out.f_ = [reflection](double t) {
    const double r = reflection(t);
    return (1.0 - r) / (1.0 + r);
  };
  out.reflection_ = std::move(reflection);
  out.description_ = std::move(description);
  return out;
}

double FeedbackSpec::f(double t) const { return f_(t); }

double FeedbackSpec::reflection(double t) const { return reflection_(t); }

void FeedbackSpec::check_regular(double horizon) const {
  constexpr int kSamples = 10000;
  double first = 0.0;
  for (int i = 0; i <= kSamples; ++i) {
    const double t = horizon * i / kSamples;
    const double w = 1.0 + f(t);
    if (!std::isfinite(w) || std::fabs(w) <= kSingular) {
      throw FeedbackSingularity("1 + f vanishes or is not finite near t = " + num(t));
    }
    if (i == 0) first = w;
    if ((w > 0.0) != (first > 0.0)) {
      throw FeedbackSingularity("1 + f changes sign before t = " + num(t));
    }
  }
}

BoundaryLaw FeedbackSpec::law() const {
  return {[self = *this](double t) { return self.reflection(t); },
          [](double) { return 0.0; }};
}

double DecayReport::psi(int n, std::size_t j) const { return std::exp(ln_psi[n][j]); }

std::string DecayVerdict::label() const {
  switch (kind) {
    case DecayKind::no_decay:
      return "no-decay";
    case DecayKind::decays:
      return "decays";
    case DecayKind::exponential:
      return "exponential(" + num(omega) + ")";
    case DecayKind::finite_time:
      return "finite-time";
    case DecayKind::fits_rate:
      return "fits-rate(" + rate_id + ")";
  }
  return "decays";
}

DecayReport psi_table(const ReflectionMaps& maps, const FeedbackSpec& feedback, int n_max,
                      int n_tau) {
  if (n_max < 1 || n_tau < 1) throw DomainError("psi table needs n_max >= 1 and n_tau >= 1");
  const IncreasingCheck inc = maps.check_increasing();
  if (!inc.ok) throw PreconditionError("reflection map fails the increasing condition: " + inc.detail);

  DecayReport r;
  r.increasing_ok = true;
  try {
    r.extinction_time = maps.min_control_time();
  } catch (const Error&) {
    r.extinction_time = std::numeric_limits<double>::quiet_NaN();
  }
  const auto& affine = maps.affine_phi();
  const auto& am = maps.curves().alpha_minus();
  const double phi0 = maps.phi_iterate(1, 0.0);
  r.tau.resize(static_cast<std::size_t>(n_tau));
  for (int j = 0; j < n_tau; ++j) r.tau[j] = phi0 * j / n_tau;

  auto next = [&](double s) { return affine ? affine->a * s + affine->b : maps.phi(s); };
  auto launch_time = [&](double s) {
    return affine ? s / (1.0 - affine->alpha_slope) : am.inverse(s);
  };

  std::vector<std::vector<double>> ln_cols(r.tau.size()), phi_cols(r.tau.size());
  int reached = n_max;
  for (std::size_t j = 0; j < r.tau.size(); ++j) {
    double s = r.tau[j];
    double acc = 0.0;
    for (int n = 0; n <= reached; ++n) {
      try {
        if (n > 0) s = next(s);
        if (!(s < kOverflowCap)) {
          reached = n - 1;
          r.diagnostics.push_back("iterates capped at n = " + std::to_string(reached) +
                                  " to avoid overflow");
          break;
        }
        if (acc != -kInf) {
          const double refl = std::fabs(feedback.reflection(launch_time(s)));
          acc = refl == 0.0 ? -kInf : acc + std::log(refl);
        }
      } catch (const HorizonExceeded&) {
        reached = n - 1;
        r.diagnostics.push_back("iterates truncated at n = " + std::to_string(reached) +
                                " by the horizon");
        break;
      }
      ln_cols[j].push_back(acc);
      phi_cols[j].push_back(s);
    }
  }
  if (reached < 1) throw HorizonExceeded("horizon admits no reflection iterates");
  r.n_max = reached;
  r.ln_psi.assign(static_cast<std::size_t>(reached) + 1, std::vector<double>(r.tau.size()));
  r.phi_n = r.ln_psi;
  for (std::size_t j = 0; j < r.tau.size(); ++j) {
    for (int n = 0; n <= reached; ++n) {
      r.ln_psi[n][j] = ln_cols[j][n];
      r.phi_n[n][j] = phi_cols[j][n];
    }
  }
  return r;
}

GrowthBound growth_bound(const DecayReport& r) {
  GrowthBound out;
  const int m = r.n_max;
  if (m < 8) {
    out.diagnostic = "too few iterates to estimate a rate";
    return out;
  }
  const int m_prev = (3 * m) / 4;
  double sup = -kInf;
  double spread = 0.0;  // extrapolation error at the supremum
  // Columns that have not settled only matter if they could reach the supremum.
  double unsettled_top = -kInf;
  std::size_t unsettled_at = 0;
  for (std::size_t j = 0; j < r.tau.size(); ++j) {
    const double last = r.ln_psi[m][j];
    if (last == -kInf || last / r.phi_n[m][j] < kLogFloor) continue;
    const double now = extrapolated_rate(r, j, m);
    const double before = extrapolated_rate(r, j, m_prev);
    const bool settled = std::isfinite(now) &&
                         std::fabs(now - before) <= std::max(kRelTol * std::fabs(now), kAbsTol);
    if (settled) {
      if (now > sup) {
        sup = now;
        spread = std::fabs(now - extrapolated_rate_quadratic(r, j, m));
      }
      continue;
    }
    const double top = std::isfinite(now) ? std::max(now, before) : kInf;
    if (top > unsettled_top) {
      unsettled_top = top;
      unsettled_at = j;
    }
  }
  if (unsettled_top > -kInf && unsettled_top >= sup - kUnsettledMargin) {
    out.status = GrowthBound::Status::undefined;
    out.diagnostic = "ln psi_n / phi^[n] has not stabilized at tau = " +
                     num(r.tau[unsettled_at]);
    return out;
  }
  if (sup == -kInf) {
    out.status = GrowthBound::Status::infinite;
    out.omega = kInf;
    out.diagnostic = "psi_n vanishes or collapses faster than any exponential";
    return out;
  }
  out.status = GrowthBound::Status::finite;
  // A rate inside the extrapolation error cannot be told apart from zero.
  out.omega = std::fabs(sup) < std::max(kAbsTol, spread) ? 0.0 : -sup;
  return out;
}

DecayVerdict classify_decay(const DecayReport& r, std::span<const RateCandidate> candidates) {
  DecayVerdict out;
  const int m = r.n_max;
  const int m_prev = (3 * m) / 4;
  const std::size_t nt = r.tau.size();

  if (std::all_of(r.ln_psi[0].begin(), r.ln_psi[0].end(), [](double v) { return v == -kInf; })) {
    out.kind = DecayKind::finite_time;
    out.extinction_time = r.extinction_time;
    out.detail = "reflection vanishes before the first return";
    return out;
  }
  for (std::size_t j = 0; j < nt; ++j) {
    const double last = r.ln_psi[m][j];
    if (std::exp(last) > kNoDecayLevel && last - r.ln_psi[m_prev][j] > kNoDecayDrift) {
      out.kind = DecayKind::no_decay;
      out.detail = "psi_n stays near " + num(std::exp(last)) + " at tau = " + num(r.tau[j]);
      return out;
    }
  }

  double best = kInf;
  for (const auto& cand : candidates) {
    double worst = 0.0;
    bool any = false;
    std::vector<double> constant(nt, 0.0);
    for (std::size_t j = 0; j < nt; ++j) {
      if (r.ln_psi[m][j] == -kInf) continue;
      const double d_now = r.ln_psi[m][j] - cand.g.log_abs(r.phi_n[m][j]);
      const double d_prev = r.ln_psi[m_prev][j] - cand.g.log_abs(r.phi_n[m_prev][j]);
      if (!std::isfinite(d_now) || !std::isfinite(d_prev)) {
        worst = kInf;
        break;
      }
      worst = std::max(worst, std::fabs(d_now - d_prev));
      constant[j] = std::exp(d_now);
      any = true;
    }
    if (any && worst <= kFitDrift && worst < best) {
      best = worst;
      out.kind = DecayKind::fits_rate;
      out.rate_id = cand.id;
      out.rate_constant = std::move(constant);
      out.detail = "ratio drift " + num(worst);
    }
  }
  if (out.kind == DecayKind::fits_rate) return out;

  const GrowthBound gb = growth_bound(r);
  out.omega = gb.omega;
  if (gb.status == GrowthBound::Status::finite && gb.omega > 0.0) {
    out.kind = DecayKind::exponential;
    return out;
  }
  out.kind = DecayKind::decays;
  out.detail = gb.status == GrowthBound::Status::undefined ? gb.diagnostic
               : gb.status == GrowthBound::Status::infinite
                   ? "faster than every exponential"
                   : "no exponential rate";
  if (gb.status == GrowthBound::Status::undefined) {
    out.omega = std::numeric_limits<double>::quiet_NaN();
  }
  return out;
}

FeedbackSpec design_feedback(std::shared_ptr<const ReflectionMaps> maps, Func g) {
  const std::string description = "designed(" + g.describe() + ")";
  // g may blow up at a point (log rates at 0) but must not vanish.
  const double span = maps->phi_iterate(1, 0.0);
  for (int i = 0; i <= 64; ++i) {
    const double s = span * i / 64.0;
    const double lg = g.log_abs(s);
    if (std::isnan(lg) || lg == -kInf)
      throw PreconditionError("rate g vanishes at " + num(s) + "; feedback undefined");
  }
  auto reflection = [maps, g](double t) {
    const double a = maps->curves().alpha_minus().forward(t);
    const double b = maps->phi_iterate(1, a);
    return std::exp(g.log_abs(b) - g.log_abs(a));
  };
  return FeedbackSpec::from_reflection(reflection, description);
}

}  // namespace charwave
