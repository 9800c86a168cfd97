#pragma once

#include <vector>

#include "charwave/riemann.hpp"

namespace charwave {

enum class Invariant { p, q };
enum class Side { alpha, beta };

struct RayEvent {
  double time;
  Side side;
  double factor;  // multiplier applied to the continuing ray: -F at alpha, -1 at beta
  double source;  // contribution added to the traced value at this event
};

struct RayTrace {
  double t = 0.0;
  double x = 0.0;
  Invariant invariant = Invariant::p;
  std::vector<RayEvent> events;
  Invariant terminal_invariant = Invariant::p;
  double terminal_coordinate = 0.0;  // point of [0, 1] where the ray meets t = 0
  double value = 0.0;
};

// Follows the backward characteristic from (t, x) one reflection at a time,
// solving for each wall crossing directly on the curves.
RayTrace trace(const CurvePair& curves, const RiemannData& data, const BoundaryLaw& law, double t,
               double x, Invariant invariant, double tol = 1e-12);
RayTrace trace(const WaveSystem& system, double t, double x, Invariant invariant);

// First return to alpha of the forward ray leaving (0, 0) with slope +1.
double main_characteristic_return_time(const CurvePair& curves, double tol = 1e-12);

}  // namespace charwave
