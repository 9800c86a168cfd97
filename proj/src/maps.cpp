#include "charwave/maps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace charwave {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kMaxBreakpoints = 1'000'000;
constexpr int kIncreasingSamples = 256;

std::string num(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

ReflectionMaps::ReflectionMaps(CurvePair curves)
    : curves_(std::move(curves)), snap_(curves_.tolerances().region_snap) {
  const auto la = curves_.alpha().as_line();
  const auto lb = curves_.beta().as_line();
  if (la && lb && lb->slope >= la->slope) {
    const double r = la->slope;
    const double k = lb->slope;
    const double den = (1.0 - k) * (1.0 + r);
    affine_ = AffinePhi{(1.0 + k) * (1.0 - r) / den, 2.0 * (1.0 - r) / den, r};
  }
  build_breakpoints();
}

double ReflectionMaps::beta_transfer(double s) const {
  return curves_.beta_plus().forward(curves_.beta_minus().inverse(s));
}

double ReflectionMaps::beta_transfer_inverse(double c) const {
  return curves_.beta_minus().forward(curves_.beta_plus().inverse(c));
}

double ReflectionMaps::phi(double s) const {
  return curves_.alpha_minus().forward(curves_.alpha_plus().inverse(beta_transfer(s)));
}

double ReflectionMaps::phi_inverse(double s) const {
  return beta_transfer_inverse(
      curves_.alpha_plus().forward(curves_.alpha_minus().inverse(s)));
}

double ReflectionMaps::xi(double c) const {
  return beta_transfer(curves_.alpha_minus().forward(curves_.alpha_plus().inverse(c)));
}

double ReflectionMaps::xi_inverse(double c) const {
  return curves_.alpha_plus().forward(curves_.alpha_minus().inverse(beta_transfer_inverse(c)));
}

double ReflectionMaps::phi_iterate(int n, double tau) const {
  if (n < 0) throw DomainError("iterate count must be non-negative");
  double s = tau;
  if (affine_) {
    for (int i = 0; i < n; ++i) s = affine_->a * s + affine_->b;
    return s;
  }
  for (int i = 0; i < n; ++i) s = phi(s);
  return s;
}

double ReflectionMaps::phi_inverse_iterate(int n, double s) const {
  for (int i = 0; i < n; ++i) s = phi_inverse(s);
  return s;
}

double ReflectionMaps::xi_inverse_iterate(int n, double c) const {
  for (int i = 0; i < n; ++i) c = xi_inverse(c);
  return c;
}

double ReflectionMaps::min_control_time() const {
  return curves_.alpha_plus().inverse(beta_transfer(0.0));
}

double ReflectionMaps::secondary_time() const {
  return curves_.beta_minus().inverse(
      curves_.alpha_minus().forward(curves_.alpha_plus().inverse(1.0)));
}

void ReflectionMaps::build_breakpoints() {
  const double horizon = curves_.horizon();
  const double p_limit = curves_.alpha_minus().forward(horizon);
  const double q_limit = curves_.beta_plus().forward(horizon);

  auto guarded = [](auto&& fn) {
    try {
      return fn();
    } catch (const HorizonExceeded&) {
      return kInf;
    }
  };
  alpha_corner_ = guarded([&] {
    return curves_.alpha_minus().forward(curves_.alpha_plus().inverse(1.0));
  });
  beta_corner_ = guarded([&] { return beta_transfer(0.0); });

  auto extend = [&](std::vector<double>& out, double first, double second, double limit,
                    auto&& step, const char* label) {
    out = {first, second};
    while (out.back() <= limit && std::isfinite(out.back())) {
      if (out.size() >= kMaxBreakpoints) {
        diagnostics_.push_back(std::string(label) + " breakpoints truncated at cap");
        break;
      }
      const double prev = out[out.size() - 2];
      out.push_back(guarded([&] { return step(prev); }));
    }
    for (std::size_t i = 1; i < out.size(); ++i) {
      if (std::isfinite(out[i]) && out[i] - out[i - 1] <= snap_) {
        diagnostics_.push_back(std::string(label) + " region " + std::to_string(i) +
                               " has zero width at " + num(out[i]));
      }
    }
  };
  extend(p_breaks_, 0.0, alpha_corner_, p_limit, [this](double s) { return phi(s); }, "p");
  extend(q_breaks_, 1.0, beta_corner_, q_limit, [this](double c) { return xi(c); }, "q");
}

int ReflectionMaps::p_region(double s) const {
  return static_cast<int>(std::upper_bound(p_breaks_.begin(), p_breaks_.end(), s + snap_) -
                          p_breaks_.begin());
}

int ReflectionMaps::q_region(double c) const {
  return static_cast<int>(std::upper_bound(q_breaks_.begin(), q_breaks_.end(), c + snap_) -
                          q_breaks_.begin());
}

Interval ReflectionMaps::p_interval(int n) const {
  if (n <= 0) return {-kInf, p_breaks_.front()};
  const auto k = static_cast<std::size_t>(n);
  return {k - 1 < p_breaks_.size() ? p_breaks_[k - 1] : kInf,
          k < p_breaks_.size() ? p_breaks_[k] : kInf};
}

Interval ReflectionMaps::q_interval(int n) const {
  if (n <= 0) return {-kInf, q_breaks_.front()};
  const auto k = static_cast<std::size_t>(n);
  return {k - 1 < q_breaks_.size() ? q_breaks_[k - 1] : kInf,
          k < q_breaks_.size() ? q_breaks_[k] : kInf};
}

std::pair<RegionId, RegionId> ReflectionMaps::classify(double t, double x) const {
  const double h = curves_.horizon();
  if (!(t >= 0.0) || t > h) {
    throw DomainError("time " + num(t) + " outside [0, " + num(h) + "]");
  }
  const double slack = 1e-12 * std::max(1.0, std::fabs(x));
  if (x < curves_.alpha().value(t) - slack || x > curves_.beta().value(t) + slack) {
    throw DomainError("point (" + num(t) + ", " + num(x) + ") lies outside the domain");
  }
  return {RegionId{Family::p, p_region(t - x)}, RegionId{Family::q, q_region(t + x)}};
}

IncreasingCheck ReflectionMaps::check_increasing() const {
  if (affine_) {
    const double a = affine_->a;
    const double b = affine_->b;
    // phi(tau) - tau = (a - 1) tau + b on [0, b)
    const bool ok = b > 0.0 && (a >= 1.0 || a * b > 0.0);
    return {ok, "affine reflection map a = " + num(a) + ", b = " + num(b)};
  }
  for (std::size_t i = 1; i < p_breaks_.size(); ++i) {
    if (!(p_breaks_[i] > p_breaks_[i - 1])) {
      return {false, "breakpoint sequence stalls at index " + std::to_string(i)};
    }
  }
  double phi0 = 0.0;
  try {
    phi0 = phi(0.0);
  } catch (const HorizonExceeded&) {
    return {false, "phi(0) lies beyond the horizon"};
  }
  if (!(phi0 > 0.0)) return {false, "phi(0) = " + num(phi0) + " is not positive"};
  for (int j = 0; j < kIncreasingSamples; ++j) {
    const double tau = phi0 * j / kIncreasingSamples;
    double image = 0.0;
    try {
      image = phi(tau);
    } catch (const HorizonExceeded&) {
      break;
    }
    if (!(image > tau)) {
      return {false, "phi(" + num(tau) + ") = " + num(image) + " is not above its argument"};
    }
  }
  return {true, "phi(tau) > tau on [0, phi(0)) within the horizon"};
}

}  // namespace charwave
