#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "charwave/catalog.hpp"
#include "charwave/maps.hpp"

namespace charwave {

// Position y0 and velocity y1 on [0, 1], with y0(1) = 0.
struct InitialData {
  Func y0;
  Func y1;

  void validate() const;
};

// p~ = y1 - y0', q~ = y1 + y0' on [0, 1].
struct RiemannData {
  std::function<double(double)> p_tilde;
  std::function<double(double)> q_tilde;
};

RiemannData to_riemann(const InitialData& data);

// Boundary law (p + F q)(t, alpha(t)) = v(t); beta reflects with p + q = 0.
struct BoundaryLaw {
  std::function<double(double)> reflection;  // F
  std::function<double(double)> source;      // v

  static BoundaryLaw conservative();  // F = 1, v = 0
};

struct PQ {
  double p;
  double q;
};

struct FieldSample {
  double t = 0.0;
  std::vector<double> x;
  std::vector<double> p;
  std::vector<double> q;
  std::vector<double> y;
  std::vector<double> y_t;
};

// Closed-form evaluation of p = y_t - y_x and q = y_t + y_x by region.
class WaveSystem {
 public:
  WaveSystem(std::shared_ptr<const ReflectionMaps> maps, RiemannData data, BoundaryLaw law);

  PQ eval_pq(double t, double x) const;
  // Region formulas applied to a characteristic coordinate, bypassing lookup.
  double p_in_region(double s, int n) const;
  double q_in_region(double c, int n) const;

  // Uniform grid of n_grid + 1 points on [alpha(t), beta(t)]; y(beta(t)) = 0.
  FieldSample reconstruct(double t, int n_grid) const;
  // 1/2 int (p^2 + q^2) dx, Simpson on pieces between region interfaces.
  double energy(double t, int n_grid) const;
  // Extra s-coordinates where the source jumps, split during quadrature.
  void set_source_breaks(std::vector<double> times);

  const ReflectionMaps& maps() const { return *maps_; }
  std::shared_ptr<const ReflectionMaps> maps_ptr() const { return maps_; }
  const CurvePair& curves() const { return maps_->curves(); }
  const RiemannData& data() const { return data_; }
  const BoundaryLaw& law() const { return law_; }

 private:
  std::vector<double> interfaces(double t) const;

  std::shared_ptr<const ReflectionMaps> maps_;
  RiemannData data_;
  BoundaryLaw law_;
  std::vector<double> source_breaks_;
};

}  // namespace charwave
