#include "charwave/riemann.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace charwave {

namespace {

constexpr double kUnitSlack = 1e-8;

std::string num(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

// Clamps rounding noise at the ends of [0, 1]; anything further out is a bug.
double unit_arg(double x) {
  if (x < -kUnitSlack || x > 1.0 + kUnitSlack) {
    throw DomainError("initial-data argument " + num(x) + " outside [0, 1]");
  }
  return std::clamp(x, 0.0, 1.0);
}

}  // namespace

void InitialData::validate() const {
  const double end = y0(1.0);
  if (std::fabs(end) > 1e-10) {
    throw PreconditionError("y0(1) = " + num(end) + " but the fixed end requires 0");
  }
}

RiemannData to_riemann(const InitialData& data) {
  data.validate();
  RiemannData r;
  r.p_tilde = [y0 = data.y0, y1 = data.y1](double x) {
    x = unit_arg(x);
    return y1(x) - y0.derivative(x);
  };
  r.q_tilde = [y0 = data.y0, y1 = data.y1](double x) {
    x = unit_arg(x);
    return y1(x) + y0.derivative(x);
  };
  return r;
}

BoundaryLaw BoundaryLaw::conservative() {
  return {[](double) { return 1.0; }, [](double) { return 0.0; }};
}

WaveSystem::WaveSystem(std::shared_ptr<const ReflectionMaps> maps, RiemannData data,
                       BoundaryLaw law)
    : maps_(std::move(maps)), data_(std::move(data)), law_(std::move(law)) {}

void WaveSystem::set_source_breaks(std::vector<double> times) {
  source_breaks_ = std::move(times);
}

double WaveSystem::p_in_region(double s, int n) const {
  if (n <= 0) return data_.p_tilde(-s);
  const auto& am = curves().alpha_minus();
  const int m = (n - 1) / 2;
  double sum = 0.0;
  double prod = 1.0;
  double sk = s;
  for (int k = 0; k <= m; ++k) {
    const double tau = am.inverse(sk);
    sum += prod * law_.source(tau);
    prod *= law_.reflection(tau);
    if (k < m) sk = maps_->phi_inverse(sk);
  }
  if (prod == 0.0) return sum;
  if (n % 2 == 1) {
    const double c = curves().alpha_plus().forward(am.inverse(s));
    return sum - prod * data_.q_tilde(maps_->xi_inverse_iterate(m, c));
  }
  return sum + prod * data_.p_tilde(-maps_->phi_inverse(sk));
}

double WaveSystem::q_in_region(double c, int n) const {
  if (n <= 0) return data_.q_tilde(c);
  const bool odd = n % 2 == 1;
  const int m = odd ? (n - 1) / 2 : (n - 2) / 2;
  const int terms = odd ? m : m + 1;
  const auto& am = curves().alpha_minus();
  double sum = 0.0;
  double prod = 1.0;
  double sk = maps_->beta_transfer_inverse(c);
  for (int k = 0; k < terms; ++k) {
    const double tau = am.inverse(sk);
    sum += prod * law_.source(tau);
    prod *= law_.reflection(tau);
    if (odd || k + 1 < terms) sk = maps_->phi_inverse(sk);
  }
  if (prod == 0.0) return -sum;
  if (odd) return -sum - prod * data_.p_tilde(-sk);
  return -sum + prod * data_.q_tilde(maps_->xi_inverse_iterate(m + 1, c));
}

PQ WaveSystem::eval_pq(double t, double x) const {
  const auto [rp, rq] = maps_->classify(t, x);
  return {p_in_region(t - x, rp.index), q_in_region(t + x, rq.index)};
}

FieldSample WaveSystem::reconstruct(double t, int n_grid) const {
  if (n_grid < 16) throw DomainError("reconstruction grid needs at least 16 intervals");
  const double a = curves().alpha().value(t);
  const double b = curves().beta().value(t);
  const double h = (b - a) / n_grid;
  FieldSample out;
  out.t = t;
  const auto n = static_cast<std::size_t>(n_grid) + 1;
  out.x.resize(n);
  out.p.resize(n);
  out.q.resize(n);
  out.y.resize(n);
  out.y_t.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.x[i] = i + 1 == n ? b : a + h * static_cast<double>(i);
    const PQ v = eval_pq(t, out.x[i]);
    out.p[i] = v.p;
    out.q[i] = v.q;
    out.y_t[i] = 0.5 * (v.p + v.q);
  }
  // y_x = (q - p) / 2 integrated cell by cell from beta, with cells split at
  // region interfaces so each Simpson panel sees one smooth formula.
  const std::vector<double> cuts = interfaces(t);
  auto panel = [&](double lo, double hi) {
    const double len = hi - lo;
    if (len <= 0.0) return 0.0;
    const double xm = 0.5 * (lo + hi);
    const int rp = maps_->p_region(t - xm);
    const int rq = maps_->q_region(t + xm);
    auto g = [&](double x) { return 0.5 * (q_in_region(t + x, rq) - p_in_region(t - x, rp)); };
    const double nudge = 1e-9 * len;
    return len / 6.0 * (g(lo + nudge) + 4.0 * g(xm) + g(hi - nudge));
  };
  out.y[n - 1] = 0.0;
  auto cut = cuts.end();
  for (std::size_t i = n - 1; i-- > 0;) {
    const double lo = out.x[i];
    double hi = out.x[i + 1];
    double acc = 0.0;
    while (cut != cuts.begin() && *(cut - 1) >= hi) --cut;
    for (auto it = cut; it != cuts.begin() && *(it - 1) > lo;) {
      --it;
      acc += panel(*it, hi);
      hi = *it;
    }
    acc += panel(lo, hi);
    out.y[i] = out.y[i + 1] - acc;
  }
  return out;
}

std::vector<double> WaveSystem::interfaces(double t) const {
  const auto& cv = curves();
  const double a = cv.alpha().value(t);
  const double b = cv.beta().value(t);
  const double s_lo = cv.beta_minus().forward(t);
  const double s_hi = cv.alpha_minus().forward(t);
  const double c_lo = cv.alpha_plus().forward(t);
  const double c_hi = cv.beta_plus().forward(t);
  std::vector<double> xs{a, b};
  auto add_s = [&](double s) {
    if (s > s_lo && s < s_hi) xs.push_back(t - s);
  };
  auto add_c = [&](double c) {
    if (c > c_lo && c < c_hi) xs.push_back(c - t);
  };
  for (double s : maps_->p_breakpoints()) add_s(s);
  for (double c : maps_->q_breakpoints()) add_c(c);
  for (double tau : source_breaks_) {
    if (tau > t) continue;
    double s = cv.alpha_minus().forward(tau);
    while (s < s_hi) {
      add_s(s);
      try {
        add_c(maps_->beta_transfer(s));
        s = maps_->phi(s);
      } catch (const HorizonExceeded&) {
        break;
      }
    }
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end(),
                       [](double l, double r) { return r - l <= 1e-13; }),
           xs.end());
  return xs;
}

double WaveSystem::energy(double t, int n_grid) const {
  if (n_grid < 16) throw DomainError("energy grid needs at least 16 intervals");
  const std::vector<double> xs = interfaces(t);
  const double total = xs.back() - xs.front();
  double e = 0.0;
  for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
    const double lo = xs[k];
    const double hi = xs[k + 1];
    const double len = hi - lo;
    if (len <= 0.0) continue;
    const double xm = 0.5 * (lo + hi);
    const int rp = maps_->p_region(t - xm);
    const int rq = maps_->q_region(t + xm);
    auto density = [&](double x) {
      const double p = p_in_region(t - x, rp);
      const double q = q_in_region(t + x, rq);
      return 0.5 * (p * p + q * q);
    };
    int m = 2 * static_cast<int>(std::ceil(0.5 * n_grid * len / total));
    m = std::max(m, 2);
    const double h = len / m;
    // Endpoint samples sit just inside the piece so one-sided limits are used.
    const double nudge = 1e-9 * len;
    double acc = density(lo + nudge) + density(hi - nudge);
    for (int i = 1; i < m; ++i) acc += (i % 2 == 1 ? 4.0 : 2.0) * density(lo + h * i);
    e += acc * h / 3.0;
  }
  return e;
}

}  // namespace charwave
