#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "charwave/numerics.hpp"

namespace charwave {

// Closed catalog of scalar functions used for initial data, targets,
// feedback laws and decay rates. Every member has an exact derivative
// except tables, whose derivative is a nodal finite difference.
class Func {
 public:
  struct Constant {
    double c;
  };
  struct Poly {
    std::vector<double> coeffs;  // c0 + c1 x + ...
  };
  struct Sine {
    double k;  // sin(k pi x)
  };
  struct SineRatio {
    double a, k;  // (a - sin k pi x) / (a + sin k pi x)
  };
  struct Rational {
    double a0, a1, b0, b1;  // (a0 + a1 x) / (b0 + b1 x)
  };
  struct ExpRate {
    double omega;  // exp(-omega x)
  };
  struct PowerRate {
    double s;  // (x + 1)^-s
  };
  struct LogRate {
    double s;  // log(x + 1)^-s
  };
  struct Table {
    MonotoneCubic interp;
    std::vector<double> nodal_slope;
  };
  using Repr =
      std::variant<Constant, Poly, Sine, SineRatio, Rational, ExpRate, PowerRate, LogRate, Table>;

  Func() : repr_(Constant{0.0}) {}
  explicit Func(Repr repr) : repr_(std::move(repr)) {}

  static Func constant(double c) { return Func(Constant{c}); }
  static Func affine(double slope, double intercept) { return Func(Poly{{intercept, slope}}); }
  static Func poly(std::vector<double> coeffs) { return Func(Poly{std::move(coeffs)}); }
  static Func sine(double k) { return Func(Sine{k}); }
  static Func sine_ratio(double a, double k) { return Func(SineRatio{a, k}); }
  static Func rational(double a0, double a1, double b0, double b1) {
    return Func(Rational{a0, a1, b0, b1});
  }
  static Func exp_rate(double omega) { return Func(ExpRate{omega}); }
  static Func power_rate(double s) { return Func(PowerRate{s}); }
  static Func log_rate(double s) { return Func(LogRate{s}); }
  static Func table(std::vector<double> xs, std::vector<double> ys);

  double operator()(double x) const;
  double derivative(double x) const;
  // log |f(x)|, evaluated without overflow for the rate families.
  double log_abs(double x) const;

  bool is_table() const { return std::holds_alternative<Table>(repr_); }
  const Repr& repr() const { return repr_; }
  std::string describe() const;

 private:
  Repr repr_;
};

// Parses "name(arg, ...)" from the catalog, or a bare number.
Func parse_func(std::string_view text);

// Splits "name(a, b)" into name and numeric arguments.
struct CallExpr {
  std::string name;
  std::vector<double> args;
};
CallExpr parse_call(std::string_view text);

}  // namespace charwave
