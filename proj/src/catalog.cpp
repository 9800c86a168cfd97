#include "charwave/catalog.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

namespace charwave {

namespace {

template <class... Ts>
struct Overload : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overload(Ts...) -> Overload<Ts...>;

constexpr double kPi = std::numbers::pi;

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double parse_number(std::string_view s, std::string_view context) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError("bad number '" + std::string(s) + "' in '" + std::string(context) + "'");
  }
  return value;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

void expect_args(const CallExpr& call, std::size_t n) {
  if (call.args.size() != n) {
    throw ParseError(call.name + " expects " + std::to_string(n) + " argument(s), got " +
                     std::to_string(call.args.size()));
  }
}

}  // namespace

CallExpr parse_call(std::string_view text) {
  const std::string_view s = trim(text);
  CallExpr call;
  const auto open = s.find('(');
  if (open == std::string_view::npos) {
    call.name = std::string(s);
    return call;
  }
  if (s.back() != ')') throw ParseError("missing ')' in '" + std::string(s) + "'");
  call.name = std::string(trim(s.substr(0, open)));
  std::string_view body = trim(s.substr(open + 1, s.size() - open - 2));
  while (!body.empty()) {
    const auto comma = body.find(',');
    call.args.push_back(parse_number(body.substr(0, comma), s));
    if (comma == std::string_view::npos) break;
    body.remove_prefix(comma + 1);
  }
  return call;
}

Func parse_func(std::string_view text) {
  const std::string_view s = trim(text);
  if (s.empty()) throw ParseError("empty function expression");
  if (std::isdigit(static_cast<unsigned char>(s.front())) || s.front() == '-' ||
      s.front() == '+' || s.front() == '.') {
    return Func::constant(parse_number(s, s));
  }
  const CallExpr call = parse_call(s);
  const std::string& n = call.name;
  if (n == "zero") {
    expect_args(call, 0);
    return Func::constant(0.0);
  }
  if (n == "const") {
    expect_args(call, 1);
    return Func::constant(call.args[0]);
  }
  if (n == "affine") {
    expect_args(call, 2);
    return Func::affine(call.args[0], call.args[1]);
  }
  if (n == "poly") {
    if (call.args.empty()) throw ParseError("poly expects at least one coefficient");
    return Func::poly(call.args);
  }
  if (n == "sine") {
    expect_args(call, 1);
    return Func::sine(call.args[0]);
  }
  if (n == "sine_ratio") {
    expect_args(call, 2);
    return Func::sine_ratio(call.args[0], call.args[1]);
  }
  if (n == "rational") {
    expect_args(call, 4);
    return Func::rational(call.args[0], call.args[1], call.args[2], call.args[3]);
  }
  if (n == "tanh_rate" || n == "exp_rate") {
    expect_args(call, 1);
    return Func::exp_rate(call.args[0]);
  }
  if (n == "power_rate") {
    expect_args(call, 1);
    return Func::power_rate(call.args[0]);
  }
  if (n == "log_rate") {
    expect_args(call, 1);
    return Func::log_rate(call.args[0]);
  }
  throw ParseError("unknown function '" + n + "'");
}

Func Func::table(std::vector<double> xs, std::vector<double> ys) {
  MonotoneCubic interp(xs, ys);
  return Func(Table{std::move(interp), nodal_derivative(xs, ys)});
}

double Func::operator()(double x) const {
  return std::visit(
      Overload{
          [](const Constant& f) { return f.c; },
          [x](const Poly& f) {
            double acc = 0.0;
            for (auto it = f.coeffs.rbegin(); it != f.coeffs.rend(); ++it) acc = acc * x + *it;
            return acc;
          },
          [x](const Sine& f) { return std::sin(f.k * kPi * x); },
          [x](const SineRatio& f) {
            const double s = std::sin(f.k * kPi * x);
            return (f.a - s) / (f.a + s);
          },
          [x](const Rational& f) { return (f.a0 + f.a1 * x) / (f.b0 + f.b1 * x); },
          [x](const ExpRate& f) { return std::exp(-f.omega * x); },
          [x](const PowerRate& f) { return std::pow(x + 1.0, -f.s); },
          [x](const LogRate& f) { return std::pow(std::log1p(x), -f.s); },
          [x](const Table& f) { return f.interp.value(x); },
      },
      repr_);
}

double Func::derivative(double x) const {
  return std::visit(
      Overload{
          [](const Constant&) { return 0.0; },
          [x](const Poly& f) {
            double acc = 0.0;
            for (std::size_t i = f.coeffs.size(); i-- > 1;) acc = acc * x + double(i) * f.coeffs[i];
            return acc;
          },
          [x](const Sine& f) { return f.k * kPi * std::cos(f.k * kPi * x); },
          [x](const SineRatio& f) {
            const double s = std::sin(f.k * kPi * x);
            const double ds = f.k * kPi * std::cos(f.k * kPi * x);
            return -2.0 * f.a * ds / ((f.a + s) * (f.a + s));
          },
          [x](const Rational& f) {
            const double num = f.a0 + f.a1 * x;
            const double den = f.b0 + f.b1 * x;
            return (f.a1 * den - num * f.b1) / (den * den);
          },
          [x](const ExpRate& f) { return -f.omega * std::exp(-f.omega * x); },
          [x](const PowerRate& f) { return -f.s * std::pow(x + 1.0, -f.s - 1.0); },
          [x](const LogRate& f) {
            const double l = std::log1p(x);
            return -f.s * std::pow(l, -f.s - 1.0) / (x + 1.0);
          },
          [x](const Table& f) {
            return interp_linear(f.interp.nodes(), f.nodal_slope, x);
          },
      },
      repr_);
}

double Func::log_abs(double x) const {
  return std::visit(Overload{
                        [x](const ExpRate& f) { return -f.omega * x; },
                        [x](const PowerRate& f) { return -f.s * std::log1p(x); },
                        [x](const LogRate& f) { return -f.s * std::log(std::log1p(x)); },
                        [this, x](const auto&) { return std::log(std::fabs((*this)(x))); },
                    },
                    repr_);
}

std::string Func::describe() const {
  return std::visit(
      Overload{
          [](const Constant& f) { return "const(" + fmt(f.c) + ")"; },
          [](const Poly& f) {
            std::string s = "poly(";
            for (std::size_t i = 0; i < f.coeffs.size(); ++i) {
              s += (i ? ", " : "") + fmt(f.coeffs[i]);
            }
            return s + ")";
          },
          [](const Sine& f) { return "sine(" + fmt(f.k) + ")"; },
          [](const SineRatio& f) { return "sine_ratio(" + fmt(f.a) + ", " + fmt(f.k) + ")"; },
          [](const Rational& f) {
            return "rational(" + fmt(f.a0) + ", " + fmt(f.a1) + ", " + fmt(f.b0) + ", " +
                   fmt(f.b1) + ")";
          },
          [](const ExpRate& f) { return "tanh_rate(" + fmt(f.omega) + ")"; },
          [](const PowerRate& f) { return "power_rate(" + fmt(f.s) + ")"; },
          [](const LogRate& f) { return "log_rate(" + fmt(f.s) + ")"; },
          [](const Table& f) {
            return "table(" + std::to_string(f.interp.nodes().size()) + " samples)";
          },
      },
      repr_);
}

}  // namespace charwave
