#pragma once

#include <cmath>
#include <memory>
#include <numbers>
#include <random>

#include "charwave/control.hpp"
#include "charwave/maps.hpp"
#include "charwave/oracle.hpp"
#include "charwave/riemann.hpp"
#include "charwave/stability.hpp"

namespace cwtest {

using namespace charwave;

inline constexpr double kPi = std::numbers::pi;

inline std::shared_ptr<const ReflectionMaps> make_maps(BoundaryFn alpha, BoundaryFn beta,
                                                       double horizon) {
  return std::make_shared<const ReflectionMaps>(
      CurvePair::create(std::move(alpha), std::move(beta), horizon));
}

inline std::shared_ptr<const ReflectionMaps> cylinder(double horizon = 10.0) {
  return make_maps(BoundaryFn::constant(0.0), BoundaryFn::constant(1.0), horizon);
}

inline InitialData sine_data() { return {Func::sine(1.0), Func::constant(0.0)}; }

// Plain bisection on an increasing function, kept separate from the library solver.
template <class Fn>
double bisect(Fn&& f, double lo, double hi) {
  for (int i = 0; i < 200; ++i) {
    const double m = 0.5 * (lo + hi);
    (f(m) < 0.0 ? lo : hi) = m;
  }
  return 0.5 * (lo + hi);
}

// Random point of the domain below the horizon.
inline std::pair<double, double> random_point(const CurvePair& cv, std::mt19937_64& rng,
                                              double t_max) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double t = t_max * u(rng);
  const double a = cv.alpha().value(t);
  const double b = cv.beta().value(t);
  return {t, a + (b - a) * u(rng)};
}

}  // namespace cwtest
