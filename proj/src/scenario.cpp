#include "charwave/scenario.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace charwave {

namespace {

using json = nlohmann::json;

[[noreturn]] void field_error(const std::string& field, const std::string& what) {
  throw ParseError("field '" + field + "': " + what);
}

void reject_unknown(const json& obj, const std::string& where,
                    std::initializer_list<const char*> allowed) {
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, _] : obj.items()) {
    if (!ok.count(key)) field_error(where.empty() ? key : where + "." + key, "unknown key");
  }
}

const json& require(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) field_error(where + "." + key, "missing");
  return obj.at(key);
}

std::vector<double> numbers(const json& j, const std::string& field) {
  if (!j.is_array()) field_error(field, "expected an array of numbers");
  std::vector<double> out;
  for (const auto& v : j) {
    if (!v.is_number()) field_error(field, "expected an array of numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

// Guards catalog parsing so diagnostics name the offending field.
template <class Fn>
auto in_field(const std::string& field, Fn&& fn) {
  try {
    return fn();
  } catch (const ParseError& e) {
    field_error(field, e.what());
  } catch (const DomainError& e) {
    field_error(field, e.what());
  }
}

BoundaryFn curve_from(const json& j, const std::string& field) {
  return in_field(field, [&] {
    if (j.is_string()) return parse_curve(j.get<std::string>());
    if (j.is_number()) return BoundaryFn::constant(j.get<double>());
    if (j.is_object()) {
      const json& tab = j.contains("table") ? j.at("table") : j;
      return BoundaryFn::tabulated(numbers(require(tab, "t", field), field + ".t"),
                                   numbers(require(tab, "z", field), field + ".z"));
    }
    field_error(field, "expected a catalog expression or a table");
  });
}

Func func_from(const json& j, const std::string& field) {
  return in_field(field, [&] {
    if (j.is_string()) return parse_func(j.get<std::string>());
    if (j.is_number()) return Func::constant(j.get<double>());
    if (j.is_object()) {
      const json& tab = j.contains("table") ? j.at("table") : j;
      return Func::table(numbers(require(tab, "x", field), field + ".x"),
                         numbers(require(tab, "y", field), field + ".y"));
    }
    field_error(field, "expected a catalog expression or a table");
  });
}

double number_from(const json& j, const std::string& field) {
  if (!j.is_number()) field_error(field, "expected a number");
  return j.get<double>();
}

int count_from(const json& j, const std::string& field) {
  if (!j.is_number_integer()) field_error(field, "expected an integer");
  return j.get<int>();
}

std::string mode_from(const json& obj, const std::string& field) {
  if (!obj.contains("mode")) return "none";
  if (!obj.at("mode").is_string()) field_error(field + ".mode", "expected a string");
  return obj.at("mode").get<std::string>();
}

Scenario build(const json& doc) {
  if (!doc.is_object()) throw ParseError("scenario must be an object");
  reject_unknown(doc, "",
                 {"curves", "initial", "feedback", "control", "horizon", "tolerances", "grid"});
  Scenario sc;

  if (doc.contains("tolerances")) {
    const json& tol = doc.at("tolerances");
    reject_unknown(tol, "tolerances", {"inversion", "quadrature", "region_snap"});
    if (tol.contains("inversion")) {
      sc.tolerances.inversion = number_from(tol.at("inversion"), "tolerances.inversion");
    }
    if (tol.contains("quadrature")) {
      sc.tolerances.quadrature = number_from(tol.at("quadrature"), "tolerances.quadrature");
    }
    if (tol.contains("region_snap")) {
      sc.tolerances.region_snap = number_from(tol.at("region_snap"), "tolerances.region_snap");
    }
  }
  if (doc.contains("grid")) {
    const json& grid = doc.at("grid");
    reject_unknown(grid, "grid", {"n_x", "n_t"});
    if (grid.contains("n_x")) sc.n_x = count_from(grid.at("n_x"), "grid.n_x");
    if (grid.contains("n_t")) sc.n_t = count_from(grid.at("n_t"), "grid.n_t");
  }
  if (sc.n_x < 16) field_error("grid.n_x", "must be at least 16");
  if (sc.n_t < 1) field_error("grid.n_t", "must be at least 1");

  if (!doc.contains("horizon")) field_error("horizon", "missing");
  const double horizon = number_from(doc.at("horizon"), "horizon");
  if (!(horizon > 0.0)) field_error("horizon", "must be positive");

  if (!doc.contains("curves")) field_error("curves", "missing");
  const json& curves = doc.at("curves");
  reject_unknown(curves, "curves", {"alpha", "beta"});
  BoundaryFn alpha = curve_from(require(curves, "alpha", "curves"), "curves.alpha");
  BoundaryFn beta = curve_from(require(curves, "beta", "curves"), "curves.beta");

  if (!doc.contains("initial")) field_error("initial", "missing");
  const json& init = doc.at("initial");
  reject_unknown(init, "initial", {"y0", "y1"});
  sc.initial.y0 = func_from(require(init, "y0", "initial"), "initial.y0");
  sc.initial.y1 = func_from(require(init, "y1", "initial"), "initial.y1");

  if (doc.contains("feedback")) {
    const json& fb = doc.at("feedback");
    reject_unknown(fb, "feedback", {"mode", "f", "rate"});
    const std::string mode = mode_from(fb, "feedback");
    auto& cfg = sc.feedback_config;
    if (mode == "none") {
      cfg.mode = FeedbackConfig::Mode::none;
    } else if (mode == "constant") {
      cfg.mode = FeedbackConfig::Mode::constant;
      cfg.value = number_from(require(fb, "f", "feedback"), "feedback.f");
    } else if (mode == "expression") {
      cfg.mode = FeedbackConfig::Mode::expression;
      cfg.expression = func_from(require(fb, "f", "feedback"), "feedback.f");
    } else if (mode == "designed") {
      cfg.mode = FeedbackConfig::Mode::designed;
      cfg.rate = func_from(require(fb, "rate", "feedback"), "feedback.rate");
    } else {
      field_error("feedback.mode", "expected none, constant, expression or designed");
    }
  }
  if (doc.contains("control")) {
    const json& ctl = doc.at("control");
    reject_unknown(ctl, "control", {"mode", "h", "k"});
    const std::string mode = mode_from(ctl, "control");
    auto& cfg = sc.control_config;
    if (mode == "none") {
      cfg.mode = ControlConfig::Mode::none;
    } else if (mode == "null") {
      cfg.mode = ControlConfig::Mode::null;
    } else if (mode == "target") {
      cfg.mode = ControlConfig::Mode::target;
      cfg.target.h = func_from(require(ctl, "h", "control"), "control.h");
      cfg.target.k = func_from(require(ctl, "k", "control"), "control.k");
    } else {
      field_error("control.mode", "expected none, null or target");
    }
  }
  if (sc.feedback_config.mode != FeedbackConfig::Mode::none &&
      sc.control_config.mode != ControlConfig::Mode::none) {
    throw ValidationError("feedback and control cannot both be active");
  }

  sc.maps = std::make_shared<const ReflectionMaps>(
      CurvePair::create(std::move(alpha), std::move(beta), horizon, sc.tolerances));
  sc.initial.validate();

  switch (sc.feedback_config.mode) {
    case FeedbackConfig::Mode::none:
      break;
    case FeedbackConfig::Mode::constant:
      sc.feedback = FeedbackSpec::constant(sc.feedback_config.value);
      break;
    case FeedbackConfig::Mode::expression:
      sc.feedback = FeedbackSpec::expression(sc.feedback_config.expression);
      break;
    case FeedbackConfig::Mode::designed:
      sc.feedback = design_feedback(sc.maps, sc.feedback_config.rate);
      break;
  }
  sc.feedback.check_regular(horizon);
  return sc;
}

}  // namespace

std::optional<ControlSignal> Scenario::control() const {
  switch (control_config.mode) {
    case ControlConfig::Mode::none:
      return std::nullopt;
    case ControlConfig::Mode::null:
      return null_control_v(maps, initial, tolerances.quadrature);
    case ControlConfig::Mode::target:
      return target_control_v(maps, initial, control_config.target, tolerances.quadrature).signal;
  }
  return std::nullopt;
}

WaveSystem Scenario::system() const {
  if (auto signal = control()) return controlled_system(maps, initial, *signal);
  return WaveSystem(maps, to_riemann(initial), feedback.law());
}

Scenario parse_scenario_text(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed scenario: ") + e.what());
  }
  return build(doc);
}

Scenario parse_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open scenario file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario_text(buf.str());
}

}  // namespace charwave
