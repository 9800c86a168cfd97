#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "charwave/curves.hpp"

namespace charwave {

enum class Family { p, q };

struct RegionId {
  Family family;
  int index;  // 0 means the characteristic reaches t = 0 without reflecting
  bool operator==(const RegionId&) const = default;
};

struct Interval {
  double lo;
  double hi;
};

// phi(s) = a s + b when both curves are lines that never meet.
struct AffinePhi {
  double a;
  double b;
  double alpha_slope;
};

struct IncreasingCheck {
  bool ok;
  std::string detail;
};

// Reflection maps of a curve pair and the characteristic regions they induce.
//   phi = a- (a+)^-1 b+ (b-)^-1  acts on s = t - x
//   xi  = b+ (b-)^-1 a- (a+)^-1  acts on c = t + x
class ReflectionMaps {
 public:
  explicit ReflectionMaps(CurvePair curves);

  const CurvePair& curves() const { return curves_; }
  double horizon() const { return curves_.horizon(); }

  double phi(double s) const;
  double phi_inverse(double s) const;
  double xi(double c) const;
  double xi_inverse(double c) const;
  // b+ (b-)^-1: carries an s-line reflecting at beta to its c-line.
  double beta_transfer(double s) const;
  // b- (b+)^-1: inverse of beta_transfer.
  double beta_transfer_inverse(double c) const;

  // phi^[n](tau); exact for non-converging affine pairs, otherwise horizon-limited.
  double phi_iterate(int n, double tau) const;
  double phi_inverse_iterate(int n, double s) const;
  double xi_inverse_iterate(int n, double c) const;

  // T* = (a+)^-1 b+ (b-)^-1 (0).
  double min_control_time() const;
  // T** = (b-)^-1 a- (a+)^-1 (1).
  double secondary_time() const;

  std::pair<RegionId, RegionId> classify(double t, double x) const;
  int p_region(double s) const;
  int q_region(double c) const;
  // Characteristic-coordinate interval of a region, from the cached breakpoints.
  Interval p_interval(int n) const;
  Interval q_interval(int n) const;

  std::span<const double> p_breakpoints() const { return p_breaks_; }
  std::span<const double> q_breakpoints() const { return q_breaks_; }
  // a1 = a- (a+)^-1 (1), the s-coordinate where the line x + t = 1 leaves alpha.
  double alpha_corner() const { return alpha_corner_; }
  // c1 = b+ (b-)^-1 (0), the c-coordinate where the line t = x leaves beta.
  double beta_corner() const { return beta_corner_; }

  const std::optional<AffinePhi>& affine_phi() const { return affine_; }
  IncreasingCheck check_increasing() const;
  const std::vector<std::string>& diagnostics() const { return diagnostics_; }

 private:
  void build_breakpoints();

  CurvePair curves_;
  double snap_;
  std::optional<AffinePhi> affine_;
  double alpha_corner_ = 0.0;
  double beta_corner_ = 0.0;
  std::vector<double> p_breaks_;
  std::vector<double> q_breaks_;
  std::vector<std::string> diagnostics_;
};

}  // namespace charwave
