#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "charwave/numerics.hpp"

namespace charwave {

struct Line {
  double slope;
  double intercept;
};

// A boundary curve t -> z(t) from the closed catalog: constant, affine,
// sinusoidal offset + amplitude sin(frequency t), or tabulated samples
// joined by a monotone cubic Hermite interpolant.
class BoundaryFn {
 public:
  struct Sinusoid {
    double amplitude, frequency, offset;
  };
  struct Tabulated {
    MonotoneCubic interp;
  };
  using Repr = std::variant<Line, Sinusoid, Tabulated>;

  static BoundaryFn constant(double c) { return BoundaryFn(Line{0.0, c}); }
  static BoundaryFn affine(double slope, double intercept) {
    return BoundaryFn(Line{slope, intercept});
  }
  static BoundaryFn sinusoidal(double amplitude, double frequency, double offset) {
    return BoundaryFn(Sinusoid{amplitude, frequency, offset});
  }
  static BoundaryFn tabulated(std::vector<double> ts, std::vector<double> zs) {
    return BoundaryFn(Tabulated{MonotoneCubic(std::move(ts), std::move(zs))});
  }

  double value(double t) const;
  double derivative(double t) const;
  std::optional<Line> as_line() const;
  // sup |z'| on [0, horizon]; exact for catalog families, sampled for tables.
  double derivative_sup(double horizon) const;
  // Last time at which the curve is defined.
  double domain_end() const;
  std::string describe() const;
  std::string interpolation() const;
  const Repr& repr() const { return repr_; }

 private:
  explicit BoundaryFn(Repr repr) : repr_(std::move(repr)) {}
  Repr repr_;
};

// Parses const(c), affine(slope, intercept) or sinusoid(amplitude, frequency, offset).
BoundaryFn parse_curve(const std::string& text);

enum class Sign { plus, minus };

// z+(t) = t + z(t), z-(t) = t - z(t).
double eval_pm(const BoundaryFn& z, Sign sign, double t);

// One of alpha+, alpha-, beta+, beta- restricted to [0, horizon].
class MonotoneMap {
 public:
  MonotoneMap(BoundaryFn curve, Sign sign, double horizon, double tol);

  double forward(double t) const { return eval_pm(curve_, sign_, t); }
  // Unique t in [0, horizon] with forward(t) = s.
  double inverse(double s) const;
  double range_lo() const { return range_lo_; }
  double horizon() const { return horizon_; }

 private:
  BoundaryFn curve_;
  Sign sign_;
  double horizon_;
  double tol_;
  double range_lo_;
};

double invert_monotone(const MonotoneMap& map, double s);

struct ValidationReport {
  struct Check {
    std::string name;
    bool passed;
    std::string detail;
  };
  std::vector<Check> checks;
  double alpha_derivative_bound = 0.0;
  double beta_derivative_bound = 0.0;
  double min_gap = 0.0;
  double min_gap_time = 0.0;
  std::string alpha_interpolation;
  std::string beta_interpolation;

  bool ok() const;
  double derivative_bound() const;
  std::string failures() const;
};

ValidationReport validate(const BoundaryFn& alpha, const BoundaryFn& beta, double horizon);

struct Tolerances {
  double inversion = 1e-12;
  double quadrature = 1e-10;
  double region_snap = 1e-12;
};

// Validated pair alpha < beta on [0, horizon] with |alpha'|, |beta'| < 1.
class CurvePair {
 public:
  // Throws ValidationError when the report fails.
  static CurvePair create(BoundaryFn alpha, BoundaryFn beta, double horizon,
                          Tolerances tol = {});

  const BoundaryFn& alpha() const { return alpha_; }
  const BoundaryFn& beta() const { return beta_; }
  double horizon() const { return horizon_; }
  const Tolerances& tolerances() const { return tol_; }
  const ValidationReport& report() const { return report_; }
  double derivative_bound() const { return report_.derivative_bound(); }

  const MonotoneMap& alpha_plus() const { return alpha_plus_; }
  const MonotoneMap& alpha_minus() const { return alpha_minus_; }
  const MonotoneMap& beta_plus() const { return beta_plus_; }
  const MonotoneMap& beta_minus() const { return beta_minus_; }

 private:
  CurvePair(BoundaryFn alpha, BoundaryFn beta, double horizon, Tolerances tol,
            ValidationReport report);

  BoundaryFn alpha_;
  BoundaryFn beta_;
  double horizon_;
  Tolerances tol_;
  ValidationReport report_;
  MonotoneMap alpha_plus_;
  MonotoneMap alpha_minus_;
  MonotoneMap beta_plus_;
  MonotoneMap beta_minus_;
};

}  // namespace charwave
