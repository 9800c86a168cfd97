#include "charwave/control.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace charwave {

namespace {

constexpr double kCaseTolerance = 1e-10;

std::string num(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

ControlSignal::ControlSignal(std::vector<double> breakpoints, std::vector<Piece> pieces,
                             ControlLevel level, double u_at_zero, double quad_tol)
    : breakpoints_(std::move(breakpoints)),
      pieces_(std::move(pieces)),
      level_(level),
      u0_(u_at_zero),
      quad_tol_(quad_tol) {
  if (breakpoints_.size() != pieces_.size() + 1) {
    throw DomainError("control needs one more breakpoint than pieces");
  }
  if (breakpoints_.front() != 0.0) throw DomainError("control must start at t = 0");
  for (std::size_t i = 1; i < breakpoints_.size(); ++i) {
    if (!(breakpoints_[i] > breakpoints_[i - 1])) {
      throw DomainError("control breakpoints must be strictly increasing");
    }
  }
  u_at_break_.assign(breakpoints_.size(), u0_);
  for (std::size_t j = 0; j < pieces_.size(); ++j) {
    u_at_break_[j + 1] = u_at_break_[j] + adaptive_simpson(pieces_[j], breakpoints_[j],
                                                           breakpoints_[j + 1], quad_tol_);
  }
}

std::size_t ControlSignal::piece_index(double t) const {
  auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t);
  return static_cast<std::size_t>(it - breakpoints_.begin()) - 1;
}

double ControlSignal::v(double t) const {
  if (t < 0.0) throw DomainError("control evaluated at negative time " + num(t));
  if (pieces_.empty() || t >= support_end()) return 0.0;
  return pieces_[piece_index(t)](t);
}

double ControlSignal::u(double t) const {
  if (t < 0.0) throw DomainError("control evaluated at negative time " + num(t));
  if (pieces_.empty()) return u0_;
  if (t >= support_end()) return u_at_break_.back();
  const std::size_t j = piece_index(t);
  return u_at_break_[j] + adaptive_simpson(pieces_[j], breakpoints_[j], t, quad_tol_);
}

ControlSignal ControlSignal::with_level(ControlLevel level) const {
  ControlSignal out = *this;
  out.level_ = level;
  return out;
}

ControlSignal null_control_v(std::shared_ptr<const ReflectionMaps> maps, const InitialData& data,
                             double quad_tol) {
  const RiemannData r = to_riemann(data);
  const auto& cv = maps->curves();
  const double t_star = maps->min_control_time();
  const double t_corner = cv.alpha_plus().inverse(1.0);
  std::vector<ControlSignal::Piece> pieces{
      [r, maps](double t) { return r.q_tilde(maps->curves().alpha_plus().forward(t)); },
      [r, maps](double t) {
        const double c = maps->curves().alpha_plus().forward(t);
        return -r.p_tilde(-maps->beta_transfer_inverse(c));
      },
  };
  return ControlSignal({0.0, t_corner, t_star}, std::move(pieces), ControlLevel::v,
                       data.y0(0.0), quad_tol);
}

ControlSignal null_control_u(std::shared_ptr<const ReflectionMaps> maps, const InitialData& data,
                             double quad_tol) {
  return null_control_v(std::move(maps), data, quad_tol).with_level(ControlLevel::u);
}

ControlConfiguration configuration(const ReflectionMaps& maps) {
  const double gap = maps.secondary_time() - maps.min_control_time();
  if (std::fabs(gap) <= kCaseTolerance) return ControlConfiguration::coincident;
  return gap < 0.0 ? ControlConfiguration::secondary_earlier
                   : ControlConfiguration::secondary_later;
}

TargetControl target_control_v(std::shared_ptr<const ReflectionMaps> maps,
                               const InitialData& data, const TargetState& target,
                               double quad_tol) {
  const RiemannData r = to_riemann(data);
  const auto& cv = maps->curves();
  const double t_star = maps->min_control_time();
  const double end = target.h(cv.beta().value(t_star));
  if (std::fabs(end) > 1e-10) {
    throw PreconditionError("target h(beta(T*)) = " + num(end) + " but must vanish");
  }
  TargetControl out;
  out.configuration = configuration(*maps);

  // Lines leaving alpha before t_split reach T* as q after one beta reflection;
  // later ones reach T* directly as p.
  const double t_corner = cv.alpha_plus().inverse(1.0);
  double t_split = cv.alpha_minus().inverse(cv.beta_minus().forward(t_star));
  if (out.configuration == ControlConfiguration::coincident) t_split = t_corner;

  auto p_target = [target](double x) { return target.k(x) - target.h.derivative(x); };
  auto q_target = [target](double x) { return target.k(x) + target.h.derivative(x); };
  // q arriving at alpha at time t, before and after the corner line x + t = 1.
  auto q_wall_early = [r, maps](double t) {
    return r.q_tilde(maps->curves().alpha_plus().forward(t));
  };
  auto q_wall_late = [r, maps](double t) {
    return -r.p_tilde(-maps->beta_transfer_inverse(maps->curves().alpha_plus().forward(t)));
  };
  auto via_beta = [q_target, maps, t_star](double t) {
    const double s = maps->curves().alpha_minus().forward(t);
    return q_target(maps->beta_transfer(s) - t_star);
  };
  auto direct = [p_target, maps, t_star](double t) {
    return p_target(t_star - maps->curves().alpha_minus().forward(t));
  };

  std::vector<double> breaks{0.0};
  std::vector<ControlSignal::Piece> pieces;
  auto push = [&](double until, ControlSignal::Piece piece, const char* label) {
    if (until - breaks.back() <= kCaseTolerance) {
      out.diagnostics.push_back(std::string(label) + " piece is empty");
      return;
    }
    breaks.push_back(until);
    pieces.push_back(std::move(piece));
  };
  const double first = std::min(t_corner, t_split);
  const double second = std::max(t_corner, t_split);
  push(first, [=](double t) { return q_wall_early(t) - via_beta(t); }, "early reflected");
  if (t_split < t_corner) {
    push(second, [=](double t) { return direct(t) + q_wall_early(t); }, "early direct");
  } else if (t_split > t_corner) {
    push(second, [=](double t) { return q_wall_late(t) - via_beta(t); }, "late reflected");
  }
  push(t_star, [=](double t) { return direct(t) + q_wall_late(t); }, "late direct");
  out.signal = ControlSignal(std::move(breaks), std::move(pieces), ControlLevel::v, data.y0(0.0),
                             quad_tol);
  return out;
}

BoundaryLaw control_law(const ControlSignal& signal) {
  return {[](double) { return 1.0; }, [signal](double t) { return signal.v(t); }};
}

WaveSystem controlled_system(std::shared_ptr<const ReflectionMaps> maps, const InitialData& data,
                             const ControlSignal& signal) {
  WaveSystem system(std::move(maps), to_riemann(data), control_law(signal));
  system.set_source_breaks(signal.breakpoints());
  return system;
}

NullCheck verify_null(std::shared_ptr<const ReflectionMaps> maps, const InitialData& data,
                      const ControlSignal& signal, int n_grid) {
  const double t_star = maps->min_control_time();
  const WaveSystem system = controlled_system(maps, data, signal);
  NullCheck out{t_star, system.energy(0.0, n_grid), system.energy(t_star, n_grid), 0.0, 0.0};
  const FieldSample field = system.reconstruct(t_star, n_grid);
  for (std::size_t i = 0; i < field.x.size(); ++i) {
    out.max_abs_y = std::max(out.max_abs_y, std::fabs(field.y[i]));
    out.max_abs_y_t = std::max(out.max_abs_y_t, std::fabs(field.y_t[i]));
  }
  return out;
}

}  // namespace charwave
