#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "charwave/catalog.hpp"
#include "charwave/maps.hpp"
#include "charwave/riemann.hpp"

namespace charwave {

// Boundary feedback (1 - f) y_t(t, alpha) = (1 + f) y_x(t, alpha), i.e.
// p + F q = 0 with F = (1 - f) / (1 + f).
class FeedbackSpec {
 public:
  FeedbackSpec();  // f = 0: total reflection

  static FeedbackSpec constant(double f);
  static FeedbackSpec expression(Func f);
  // Supplies F directly; f is recovered as (1 - F) / (1 + F).
  static FeedbackSpec from_reflection(std::function<double(double)> reflection,
                                      std::string description);

  double f(double t) const;
  // Throws FeedbackSingularity where 1 + f vanishes.
  double reflection(double t) const;
  // Samples [0, horizon]; throws FeedbackSingularity if 1 + f changes sign or vanishes.
  void check_regular(double horizon) const;
  bool absorbing() const { return absorbing_; }
  const std::string& describe() const { return description_; }
  BoundaryLaw law() const;

 private:
  std::function<double(double)> f_;
  std::function<double(double)> reflection_;
  std::string description_;
  bool absorbing_ = false;
};

enum class DecayKind { no_decay, decays, exponential, finite_time, fits_rate };

struct GrowthBound {
  enum class Status { finite, infinite, undefined };
  Status status = Status::undefined;
  double omega = 0.0;
  std::string diagnostic;
};

struct DecayVerdict {
  DecayKind kind = DecayKind::decays;
  double omega = 0.0;
  double extinction_time = 0.0;
  std::string rate_id;
  std::vector<double> rate_constant;  // limit of psi_n / g(phi^[n]) per tau sample
  std::string detail;
  std::string label() const;
};

struct DecayReport {
  std::vector<double> tau;
  int n_max = 0;
  // ln_psi[n][j] = ln psi_n(tau_j); phi_n[n][j] = phi^[n](tau_j)
  std::vector<std::vector<double>> ln_psi;
  std::vector<std::vector<double>> phi_n;
  bool increasing_ok = false;
  double extinction_time = 0.0;
  std::vector<std::string> diagnostics;

  double psi(int n, std::size_t j) const;
};

struct RateCandidate {
  std::string id;
  Func g;
};

// psi_n(tau) = prod_{i=0..n} |F((a-)^-1 phi^[i](tau))| on 256 samples of [0, phi(0)).
DecayReport psi_table(const ReflectionMaps& maps, const FeedbackSpec& feedback, int n_max,
                      int n_tau = 256);
GrowthBound growth_bound(const DecayReport& report);
DecayVerdict classify_decay(const DecayReport& report, std::span<const RateCandidate> candidates);
// f_g(t) = (g(a-(t)) - g(phi(a-(t)))) / (g(a-(t)) + g(phi(a-(t)))).
FeedbackSpec design_feedback(std::shared_ptr<const ReflectionMaps> maps, Func g);

}  // namespace charwave
