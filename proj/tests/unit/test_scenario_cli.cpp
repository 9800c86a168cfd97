#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "charwave/cli.hpp"
#include "charwave/csv.hpp"
#include "charwave/scenario.hpp"
#include "support.hpp"

using namespace cwtest;
namespace fs = std::filesystem;

namespace {

fs::path write_temp(const std::string& name, const std::string& body) {
  const fs::path dir = fs::temp_directory_path() / "charwave_unit";
  fs::create_directories(dir);
  const fs::path p = dir / name;
  std::ofstream(p) << body;
  return p;
}

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "charwave");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string summary(const std::string& text, const std::string& key) {
  std::istringstream in(text);
  std::string line;
  for (const std::string prefix : {"# " + key + "=", key + "="}) {
    in.clear();
    in.seekg(0);
    while (std::getline(in, line))
      if (line.rfind(prefix, 0) == 0) return line.substr(prefix.size());
  }
  return {};
}

const char* kCylinder = R"js({
  "curves": {"alpha": "const(0)", "beta": "const(1)"},
  "initial": {"y0": "sine(1)", "y1": "zero"},
  "control": {"mode": "null"},
  "horizon": 10
})js";

}  // namespace

TEST_CASE("scenario parsing") {
  const Scenario sc = parse_scenario_text(kCylinder);
  CHECK(sc.horizon() == 10.0);
  CHECK(sc.control_config.mode == ControlConfig::Mode::null);
  CHECK(sc.feedback_config.mode == FeedbackConfig::Mode::none);
  CHECK(sc.n_x == 512);
  REQUIRE(sc.control().has_value());
  CHECK(sc.control()->v(0.5) == doctest::Approx(0.0).epsilon(1e-12).scale(1.0));

  const Scenario tab = parse_scenario_text(R"js({
    "curves": {"alpha": "const(0)", "beta": {"t": [0, 1, 2, 3, 4, 5], "z": [1, 1.1, 1.15, 1.2, 1.3, 1.35]}},
    "initial": {"y0": {"x": [0, 0.5, 1], "y": [0.2, 0.1, 0]}, "y1": "poly(1, -1)"},
    "feedback": {"mode": "expression", "f": "sine_ratio(2, 1)"},
    "horizon": 5, "grid": {"n_x": 64, "n_t": 5}, "tolerances": {"inversion": 1e-13}
  })js");
  CHECK(tab.n_x == 64);
  CHECK(tab.tolerances.inversion == 1e-13);
  CHECK(tab.maps->curves().beta().value(2.0) == doctest::Approx(1.15));
  CHECK(tab.feedback.reflection(0.5) == doctest::Approx(0.5));

  CHECK_THROWS_AS(parse_scenario_text("{"), ParseError);
  CHECK_THROWS_AS(parse_scenario_text(R"js({"curves": {"alpha": "const(0)", "beta": "const(1)"},
      "initial": {"y0": "zero", "y1": "zero"}, "horizon": 4, "colour": 1})js"),
                  ParseError);
  CHECK_THROWS_AS(parse_scenario_text(R"js({"curves": {"alpha": "const(0)", "beta": "const(1)"},
      "initial": {"y0": "zero", "y1": "zero"}, "horizon": 4,
      "feedback": {"mode": "constant", "f": 0.5}, "control": {"mode": "null"}})js"),
                  ValidationError);
  CHECK_THROWS_AS(parse_scenario_text(R"js({"curves": {"alpha": "const(0)", "beta": "affine(1.2, 1)"},
      "initial": {"y0": "zero", "y1": "zero"}, "horizon": 4})js"),
                  ValidationError);
  CHECK_THROWS_AS(parse_scenario_text(R"js({"curves": {"alpha": "const(0)", "beta": "const(1)"},
      "initial": {"y0": "zero", "y1": "zero"}, "horizon": 4,
      "feedback": {"mode": "constant", "f": -1}})js"),
                  FeedbackSingularity);
  try {
    parse_scenario_text(R"js({"curves": {"alpha": "const(0)", "beta": "const(1)"},
        "initial": {"y0": "zero", "y1": 3}, "horizon": "long"})js");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("horizon") != std::string::npos);
  }
}

TEST_CASE("real formatting round-trips") {
  for (double v : {0.1, 1.0 / 3.0, 2.0, -1e-300, 6.02214076e23}) {
    CHECK(std::stod(format_real(v)) == v);
  }
  CHECK(format_real(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(format_real(std::numeric_limits<double>::quiet_NaN()) == "nan");
}

TEST_CASE("check subcommand") {
  const fs::path p = write_temp("cyl.json", kCylinder);
  const Run r = run({"check", p.string()});
  CHECK(r.code == kExitOk);
  CHECK(summary(r.out, "valid") == "true");
  CHECK(std::stod(summary(r.out, "T*")) == doctest::Approx(2.0));
  CHECK(std::stod(summary(r.out, "T**")) == doctest::Approx(2.0));
  CHECK(summary(r.out, "configuration") == "coincident");

  const fs::path bad = write_temp("steep.json", R"js({"curves": {"alpha": "const(0)", "beta": "affine(1.2, 1)"},
      "initial": {"y0": "zero", "y1": "zero"}, "horizon": 4})js");
  const Run rb = run({"check", bad.string()});
  CHECK(rb.code == kExitValidation);
  CHECK(summary(rb.out, "valid") == "false");
  CHECK(rb.out.find("|beta'| < 1") != std::string::npos);
}

TEST_CASE("exit codes") {
  const fs::path singular = write_temp("singular.json", R"js({"curves": {"alpha": "const(0)", "beta": "const(1)"},
      "initial": {"y0": "sine(1)", "y1": "zero"}, "horizon": 4,
      "feedback": {"mode": "constant", "f": -1}})js");
  CHECK(run({"solve", singular.string()}).code == kExitValidation);

  const fs::path short_h = write_temp("short.json", R"js({"curves": {"alpha": "const(0)", "beta": "const(1)"},
      "initial": {"y0": "sine(1)", "y1": "zero"}, "horizon": 1.5, "control": {"mode": "null"}})js");
  CHECK(run({"control", short_h.string()}).code == kExitHorizon);

  const fs::path longrun = write_temp("long.json", R"js({"curves": {"alpha": "const(0)", "beta": "const(1)"},
      "initial": {"y0": "sine(1)", "y1": "zero"}, "horizon": 250000})js");
  CHECK(run({"trace", longrun.string(), "--point", "220000,0.5"}).code == kExitConvergence);

  CHECK(run({"solve", "/nonexistent/scenario.json"}).code == kExitValidation);
  CHECK(run({"frobnicate"}).code != kExitOk);
}

TEST_CASE("solve output is deterministic and consistent") {
  const fs::path p = write_temp("cyl2.json", kCylinder);
  const Run a = run({"solve", p.string(), "--nt", "3", "--nx", "32"});
  const Run b = run({"solve", p.string(), "--nt", "3", "--nx", "32"});
  REQUIRE(a.code == kExitOk);
  CHECK(a.out == b.out);
  CHECK(a.out.rfind("t,x,p,q,y,y_t\n", 0) == 0);
  const fs::path file = fs::temp_directory_path() / "charwave_unit" / "solve.csv";
  CHECK(run({"solve", p.string(), "--nt", "3", "--nx", "32", "--out", file.string()}).code == kExitOk);
  std::ifstream in(file);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == a.out);
}

TEST_CASE("control, stability, trace and regions subcommands") {
  const fs::path p = write_temp("cyl3.json", kCylinder);
  const Run c = run({"control", p.string(), "--nt", "11", "--nx", "256"});
  REQUIRE(c.code == kExitOk);
  CHECK(std::stod(summary(c.out, "relative_energy")) <= 1e-8);
  CHECK(summary(c.out, "mode") == "null");

  const fs::path s = write_temp("sinfb.json", R"js({"curves": {"alpha": "const(0)", "beta": "const(1)"},
      "initial": {"y0": "sine(1)", "y1": "zero"}, "horizon": 5000,
      "feedback": {"mode": "expression", "f": "sine_ratio(2, 1)"}})js");
  const Run st = run({"stability", s.string(), "--nmax", "400"});
  REQUIRE(st.code == kExitOk);
  CHECK(summary(st.out, "classification").rfind("exponential", 0) == 0);
  CHECK(std::stod(summary(st.out, "omega")) == doctest::Approx(std::log(2.0) / 2).epsilon(0.01));

  const Run tr = run({"trace", p.string(), "--point", "2.1,0.5", "--invariant", "p"});
  REQUIRE(tr.code == kExitOk);
  CHECK(std::stod(summary(tr.out, "value")) ==
        doctest::Approx(std::stod(summary(tr.out, "closed_form"))).epsilon(1e-12));
  const Run seeded1 = run({"trace", p.string(), "--seed", "9"});
  const Run seeded2 = run({"trace", p.string(), "--seed", "9"});
  CHECK(seeded1.out == seeded2.out);

  const Run rg = run({"regions", p.string()});
  REQUIRE(rg.code == kExitOk);
  CHECK(rg.out.rfind("family,index,t,x\n", 0) == 0);
}
