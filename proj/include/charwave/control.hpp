#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "charwave/riemann.hpp"

namespace charwave {

enum class ControlLevel { u, v };

// Piecewise boundary control. Pieces are stored at the derivative level v;
// the position level u is u(0) plus the running integral of v.
class ControlSignal {
 public:
  using Piece = std::function<double(double)>;

  ControlSignal() = default;
  // breakpoints: 0 = b0 < b1 < ... < bk = support end; pieces.size() == k.
  ControlSignal(std::vector<double> breakpoints, std::vector<Piece> pieces, ControlLevel level,
                double u_at_zero, double quad_tol = 1e-10);

  double v(double t) const;
  double u(double t) const;
  // Value at the signal's own level.
  double operator()(double t) const { return level_ == ControlLevel::u ? u(t) : v(t); }

  ControlSignal with_level(ControlLevel level) const;
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  double support_end() const { return breakpoints_.empty() ? 0.0 : breakpoints_.back(); }
  std::size_t piece_count() const { return pieces_.size(); }
  ControlLevel level() const { return level_; }

 private:
  std::size_t piece_index(double t) const;

  std::vector<double> breakpoints_;
  std::vector<Piece> pieces_;
  ControlLevel level_ = ControlLevel::v;
  double u0_ = 0.0;
  double quad_tol_ = 1e-10;
  std::vector<double> u_at_break_;
};

// Desired state (y, y_t) = (h, k) at time T* on [alpha(T*), beta(T*)].
struct TargetState {
  Func h;
  Func k;
};

// Relative position of T** = (b-)^-1 a- (a+)^-1 (1) and T*.
enum class ControlConfiguration { coincident, secondary_earlier, secondary_later };

struct TargetControl {
  ControlSignal signal;
  ControlConfiguration configuration;
  std::vector<std::string> diagnostics;
};

ControlSignal null_control_v(std::shared_ptr<const ReflectionMaps> maps, const InitialData& data,
                             double quad_tol = 1e-10);
ControlSignal null_control_u(std::shared_ptr<const ReflectionMaps> maps, const InitialData& data,
                             double quad_tol = 1e-10);
TargetControl target_control_v(std::shared_ptr<const ReflectionMaps> maps,
                               const InitialData& data, const TargetState& target,
                               double quad_tol = 1e-10);
ControlConfiguration configuration(const ReflectionMaps& maps);

// Boundary law of the controlled problem: F = 1 at alpha with source v.
BoundaryLaw control_law(const ControlSignal& signal);
WaveSystem controlled_system(std::shared_ptr<const ReflectionMaps> maps, const InitialData& data,
                             const ControlSignal& signal);

struct NullCheck {
  double time;
  double initial_energy;
  double terminal_energy;
  double max_abs_y;
  double max_abs_y_t;
};

// Energy and field size at T* under the given control.
NullCheck verify_null(std::shared_ptr<const ReflectionMaps> maps, const InitialData& data,
                      const ControlSignal& signal, int n_grid = 512);

}  // namespace charwave
