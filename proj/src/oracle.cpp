#include "charwave/oracle.hpp"

#include <cmath>

namespace charwave {

namespace {

constexpr std::size_t kMaxEvents = 100'000;

// Smallest s >= start with fn(s) >= 0 for an increasing fn, searching forward
// by doubling steps up to the horizon.
template <class Fn>
double forward_root(Fn&& fn, double start, double horizon, double tol) {
  double lo = start;
  double step = 1.0;
  double hi = std::min(start + step, horizon);
  while (fn(hi) < 0.0) {
    if (hi >= horizon) throw HorizonExceeded("characteristic leaves the horizon");
    lo = hi;
    step *= 2.0;
    hi = std::min(lo + step, horizon);
  }
  return solve_increasing(fn, lo, hi, tol);
}

}  // namespace

RayTrace trace(const CurvePair& curves, const RiemannData& data, const BoundaryLaw& law, double t,
               double x, Invariant invariant, double tol) {
  RayTrace out;
  out.t = t;
  out.x = x;
  out.invariant = invariant;
  double coef = 1.0;
  double acc = 0.0;
  const auto& alpha = curves.alpha();
  const auto& beta = curves.beta();
  while (true) {
    if (out.events.size() > kMaxEvents) {
      throw RunawayError("more than 100000 reflections while tracing");
    }
    if (invariant == Invariant::p) {
      const double foot = x - t;
      if (foot >= 0.0) {
        out.terminal_invariant = Invariant::p;
        out.terminal_coordinate = foot;
        out.value = acc + coef * data.p_tilde(foot);
        return out;
      }
      auto gap = [&](double s) { return x - t + s - alpha.value(s); };
      const double hit = gap(t) <= 0.0 ? t : solve_increasing(gap, 0.0, t, tol);
      const double f = law.reflection(hit);
      const double v = law.source(hit);
      out.events.push_back({hit, Side::alpha, -f, coef * v});
      acc += coef * v;
      coef *= -f;
      t = hit;
      x = alpha.value(hit);
      invariant = Invariant::q;
    } else {
      const double foot = x + t;
      if (foot <= 1.0) {
        out.terminal_invariant = Invariant::q;
        out.terminal_coordinate = foot;
        out.value = acc + coef * data.q_tilde(foot);
        return out;
      }
      auto gap = [&](double s) { return beta.value(s) - (x + t - s); };
      const double hit = gap(t) <= 0.0 ? t : solve_increasing(gap, 0.0, t, tol);
      out.events.push_back({hit, Side::beta, -1.0, 0.0});
      coef = -coef;
      t = hit;
      x = beta.value(hit);
      invariant = Invariant::p;
    }
  }
}

RayTrace trace(const WaveSystem& system, double t, double x, Invariant invariant) {
  return trace(system.curves(), system.data(), system.law(), t, x, invariant,
               system.curves().tolerances().inversion);
}

double main_characteristic_return_time(const CurvePair& curves, double tol) {
  const auto& alpha = curves.alpha();
  const auto& beta = curves.beta();
  const double h = curves.horizon();
  const double s1 = forward_root([&](double s) { return s - beta.value(s); }, 0.0, h, tol);
  const double c = s1 + beta.value(s1);
  return forward_root([&](double s) { return s + alpha.value(s) - c; }, s1, h, tol);
}

}  // namespace charwave
