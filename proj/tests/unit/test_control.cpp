#include <doctest.h>

#include "support.hpp"

using namespace cwtest;

namespace {

const InitialData kZero{Func::constant(0.0), Func::constant(0.0)};
const InitialData kUnitVelocity{Func::constant(0.0), Func::constant(1.0)};

// Maximum deviation of the state at T* from the target, measured with the ray tracer.
double target_miss(const std::shared_ptr<const ReflectionMaps>& m, const InitialData& d,
                   const TargetState& target, const ControlSignal& signal) {
  const WaveSystem sys = controlled_system(m, d, signal);
  const double T = m->min_control_time();
  const double a = m->curves().alpha().value(T);
  const double b = m->curves().beta().value(T);
  double worst = 0.0;
  for (int i = 1; i < 200; ++i) {
    const double x = a + (b - a) * i / 200.0;
    const double p = trace(sys, T, x, Invariant::p).value;
    const double q = trace(sys, T, x, Invariant::q).value;
    const double pT = target.k(x) - target.h.derivative(x);
    const double qT = target.k(x) + target.h.derivative(x);
    worst = std::max({worst, std::fabs(p - pT), std::fabs(q - qT)});
  }
  // Position through reconstruction, anchored at beta.
  const FieldSample s = sys.reconstruct(T, 1024);
  for (std::size_t i = 0; i < s.x.size(); ++i)
    worst = std::max(worst, std::fabs(s.y[i] - target.h(s.x[i])) * 1e-3);
  return worst;
}

}  // namespace

TEST_CASE("null control at the derivative level") {
  const auto c = cylinder();
  const ControlSignal v = null_control_v(c, sine_data());
  CHECK(v.breakpoints() == std::vector<double>{0.0, 1.0, 2.0});
  for (double t : {0.0, 0.3, 0.99, 1.0, 1.4, 1.99}) {
    CHECK(v.v(t) == doctest::Approx(kPi * std::cos(kPi * t)));
  }
  CHECK(v.v(2.0) == 0.0);
  CHECK(v.v(5.0) == 0.0);

  const ControlSignal zero = null_control_v(c, kZero);
  for (double t : {0.0, 0.5, 1.5}) CHECK(zero.v(t) == 0.0);

  const ControlSignal unit = null_control_v(c, kUnitVelocity);
  CHECK(unit.v(0.5) == 1.0);
  CHECK(unit.v(1.5) == -1.0);

  const auto short_h = make_maps(BoundaryFn::constant(0.0), BoundaryFn::constant(1.0), 1.5);
  CHECK_THROWS_AS(null_control_v(short_h, sine_data()), HorizonExceeded);
}

TEST_CASE("null control at the position level") {
  const auto c = cylinder();
  const ControlSignal u = null_control_u(c, sine_data());
  CHECK(u.level() == ControlLevel::u);
  // u' = v with u(0) = y0(0) gives sin(pi t) on both pieces.
  for (double t : {0.1, 0.5, 0.9, 1.2, 1.5, 1.9}) CHECK(u(t) == doctest::Approx(std::sin(kPi * t)).epsilon(1e-9));
  CHECK(std::fabs(u(2.0)) <= 1e-9);

  const ControlSignal zero = null_control_u(c, kZero);
  for (double t : {0.0, 0.7, 1.7}) CHECK(zero(t) == 0.0);

  const ControlSignal unit = null_control_u(c, kUnitVelocity);
  CHECK(unit(0.4) == doctest::Approx(0.4));
  CHECK(unit(1.25) == doctest::Approx(0.75));
  CHECK(unit(1.0) == doctest::Approx(1.0));
}

TEST_CASE("position level differentiates to the derivative level") {
  const auto m = make_maps(BoundaryFn::sinusoidal(0.2, 1.0, 0.0), BoundaryFn::affine(-0.1, 1.0), 6.0);
  const InitialData d{Func::poly({0.4, 0.3, -0.7}), Func::sine(1.0)};
  const ControlSignal u = null_control_u(m, d);
  const ControlSignal v = null_control_v(m, d);
  const double end = v.support_end();
  const double h = 1e-5;
  double worst = 0.0;
  for (int i = 1; i <= 1000; ++i) {
    const double t = end * i / 1001.0;
    bool near_break = false;
    for (double b : v.breakpoints()) near_break |= std::fabs(t - b) < 2 * h;
    if (near_break) continue;
    worst = std::max(worst, std::fabs((u(t + h) - u(t - h)) / (2 * h) - v.v(t)));
  }
  CHECK(worst <= 1e-6);
  CHECK(std::fabs(u(0.0) - d.y0(0.0)) <= 1e-10);
  // Continuity at the internal breakpoint.
  const double b1 = v.breakpoints()[1];
  CHECK(std::fabs(u(b1 - 1e-9) - u(b1)) <= 1e-7);
}

TEST_CASE("null control drives the state to rest") {
  const auto c = cylinder();
  const ControlSignal v = null_control_v(c, sine_data());
  const NullCheck chk = verify_null(c, sine_data(), v, 512);
  CHECK(chk.time == doctest::Approx(2.0));
  CHECK(chk.initial_energy == doctest::Approx(kPi * kPi / 2));
  CHECK(chk.terminal_energy <= 1e-9 * chk.initial_energy);
  CHECK(chk.max_abs_y <= 1e-9);

  CHECK(verify_null(c, kZero, null_control_v(c, kZero)).terminal_energy == 0.0);

  // Cut the control off before T*.
  const ControlSignal cut({0.0, 1.0, 1.5}, {[](double t) { return kPi * std::cos(kPi * t); },
                                           [](double t) { return kPi * std::cos(kPi * t); }},
                          ControlLevel::v, 0.0);
  const NullCheck trunc = verify_null(c, sine_data(), cut, 512);
  CHECK(trunc.terminal_energy > 0.01 * trunc.initial_energy);
}

TEST_CASE("null control on random scenarios") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int done = 0;
  while (done < 20) {
    const double ka = 0.5 * u(rng), kb = 0.5 * u(rng);
    BoundaryFn alpha = (done % 2 == 0) ? BoundaryFn::affine(ka, 0.0)
                                       : BoundaryFn::sinusoidal(0.4 * ka, 1.0 + u(rng), 0.0);
    BoundaryFn beta = (done % 3 == 0) ? BoundaryFn::affine(kb, 1.0)
                                      : BoundaryFn::sinusoidal(0.4 * kb, 1.0 + u(rng), 1.0);
    if (!validate(alpha, beta, 30.0).ok()) continue;
    const auto m = make_maps(alpha, beta, 30.0);
    const double c0 = u(rng);
    // y0(1) = 0 by construction
    const InitialData data{Func::poly({c0, 0.3, -(c0 + 0.3)}), Func::sine(0.5 + std::fabs(u(rng)))};
    const NullCheck chk = verify_null(m, data, null_control_v(m, data), 1024);
    CHECK(chk.terminal_energy <= 1e-8 * chk.initial_energy);
    ++done;
  }
}

TEST_CASE("control time cannot be shortened") {
  const auto c = cylinder();
  const InitialData d = sine_data();
  const ControlSignal v = null_control_v(c, d);
  const WaveSystem sys = controlled_system(c, d, v);
  const double e0 = sys.energy(0.0, 1024);
  for (double eps : {0.05, 0.1}) CHECK(sys.energy(2.0 - eps, 1024) >= 1e-4 * e0);

  const auto m = make_maps(BoundaryFn::affine(0.2, 0.0), BoundaryFn::affine(0.1, 1.0), 5.0);
  const WaveSystem sm = controlled_system(m, d, null_control_v(m, d));
  const double T = m->min_control_time();
  for (double eps : {0.05, 0.1}) CHECK(sm.energy(T - eps, 1024) >= 1e-4 * e0);
}

TEST_CASE("target control examples") {
  const auto c = cylinder();
  const TargetState rest{Func::constant(0.0), Func::constant(0.0)};
  const TargetControl tc = target_control_v(c, sine_data(), rest);
  const ControlSignal nc = null_control_v(c, sine_data());
  CHECK(tc.configuration == ControlConfiguration::coincident);
  for (int i = 0; i < 200; ++i) {
    const double t = 2.0 * i / 200.0;
    CHECK(tc.signal.v(t) == doctest::Approx(nc.v(t)).epsilon(1e-12));
  }

  // Zero data steered to y = 0, y_t = 1: p and q targets are both 1.
  const TargetState moving{Func::constant(0.0), Func::constant(1.0)};
  const TargetControl tm = target_control_v(c, kZero, moving);
  CHECK(tm.signal.v(0.5) == doctest::Approx(-1.0));
  CHECK(tm.signal.v(1.5) == doctest::Approx(1.0));
  CHECK(target_miss(c, kZero, moving, tm.signal) <= 1e-9);

  const auto m = make_maps(BoundaryFn::affine(0.2, 0.0), BoundaryFn::constant(1.0), 4.0);
  const TargetControl ta = target_control_v(m, sine_data(), rest);
  CHECK(ta.configuration == ControlConfiguration::coincident);
  CHECK(ta.signal.piece_count() == 2);
  CHECK(target_miss(m, sine_data(), rest, ta.signal) <= 1e-9);

  const TargetState bad{Func::constant(0.5), Func::constant(0.0)};
  CHECK_THROWS_AS(target_control_v(c, sine_data(), bad), PreconditionError);
}

TEST_CASE("target control in the three configurations") {
  const InitialData d{Func::poly({0.2, 0.5, -0.7}), Func::sine(1.0)};
  std::vector<ControlConfiguration> seen;
  for (double amp : {0.0, 0.2, -0.2}) {
    const auto m = make_maps(BoundaryFn::constant(0.0), BoundaryFn::sinusoidal(amp, 1.0, 1.0), 8.0);
    const double T = m->min_control_time();
    const double bT = m->curves().beta().value(T);
    const TargetState target{Func::affine(0.4, -0.4 * bT), Func::poly({0.3, 0.2})};
    const TargetControl tc = target_control_v(m, d, target);
    seen.push_back(tc.configuration);
    CHECK(configuration(*m) == tc.configuration);
    CHECK(tc.signal.support_end() == doctest::Approx(T));
    CHECK(target_miss(m, d, target, tc.signal) <= 1e-8);
    if (tc.configuration != ControlConfiguration::coincident) CHECK(tc.signal.piece_count() == 3);
  }
  CHECK(seen[0] == ControlConfiguration::coincident);
  CHECK(std::count(seen.begin(), seen.end(), ControlConfiguration::secondary_earlier) == 1);
  CHECK(std::count(seen.begin(), seen.end(), ControlConfiguration::secondary_later) == 1);
}

TEST_CASE("target control is continuous across the coincident configuration") {
  const InitialData d{Func::poly({0.2, 0.5, -0.7}), Func::sine(1.0)};
  const TargetState rest{Func::constant(0.0), Func::constant(0.0)};
  const auto c = cylinder();
  const ControlSignal base = target_control_v(c, d, rest).signal;
  for (double eps : {1e-7, -1e-7}) {
    const auto m = make_maps(BoundaryFn::constant(0.0), BoundaryFn::sinusoidal(eps, 1.0, 1.0), 8.0);
    const TargetControl tc = target_control_v(m, d, rest);
    CHECK(tc.configuration != ControlConfiguration::coincident);
    double worst = 0.0;
    for (int i = 0; i < 400; ++i) {
      const double t = 1.99 * (i + 0.5) / 400.0;
      if (std::fabs(t - 1.0) < 1e-5) continue;
      worst = std::max(worst, std::fabs(tc.signal.v(t) - base.v(t)));
    }
    CHECK(worst <= 1e-6);
  }
}
