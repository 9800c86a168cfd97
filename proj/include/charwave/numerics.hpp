#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "charwave/errors.hpp"

namespace charwave {

// Root of a nondecreasing function on [lo, hi] with f(lo) <= 0 <= f(hi).
// Illinois false position; a bisection step is forced whenever an
// iteration fails to halve the bracket.
template <class Fn>
double solve_increasing(Fn&& f, double lo, double hi, double tol) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo > 0.0 || fhi < 0.0) {
    throw GeometryError("root is not bracketed on [" + std::to_string(lo) + ", " +
                        std::to_string(hi) + "]");
  }
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  int stale = 0;
  auto open = [&] { return hi - lo > tol * std::fmax(1.0, std::fabs(hi)); };
  for (int it = 0; it < 400 && open(); ++it) {
    const double width = hi - lo;
    double x = hi - fhi * (hi - lo) / (fhi - flo);
    if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);
    double fx = f(x);
    if (fx == 0.0) return x;
    if (fx < 0.0) {
      lo = x;
      flo = fx;
      if (stale == 1) fhi *= 0.5;
      stale = 1;
    } else {
      hi = x;
      fhi = fx;
      if (stale == -1) flo *= 0.5;
      stale = -1;
    }
    if (hi - lo > 0.5 * width) {
      const double m = 0.5 * (lo + hi);
      if (m <= lo || m >= hi) break;
      const double fm = f(m);
      if (fm == 0.0) return m;
      if (fm < 0.0) {
        lo = m;
        flo = fm;
      } else {
        hi = m;
        fhi = fm;
      }
      stale = 0;
    }
  }
  if (open() && 0.5 * (lo + hi) > lo && 0.5 * (lo + hi) < hi)
    throw ConvergenceError("root iteration did not converge");
  return std::fabs(flo) <= std::fabs(fhi) ? lo : hi;
}

// Adaptive Simpson quadrature with Richardson correction.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                        int max_depth = 48);

// Shape-preserving piecewise cubic Hermite interpolant (Fritsch-Carlson).
class MonotoneCubic {
 public:
  MonotoneCubic() = default;
  MonotoneCubic(std::vector<double> xs, std::vector<double> ys);

  double value(double x) const;
  double derivative(double x) const;
  double front() const { return xs_.front(); }
  double back() const { return xs_.back(); }
  const std::vector<double>& nodes() const { return xs_; }
  const std::vector<double>& values() const { return ys_; }

 private:
  std::size_t locate(double x) const;

  std::vector<double> xs_;
  std::vector<double> ys_;
  std::vector<double> slopes_;
};

// Piecewise-linear interpolation on sorted nodes, clamped at the ends.
double interp_linear(const std::vector<double>& xs, const std::vector<double>& ys, double x);

// Nodal derivative: central differences inside, second-order one-sided ends.
std::vector<double> nodal_derivative(const std::vector<double>& xs, const std::vector<double>& ys);

}  // namespace charwave
