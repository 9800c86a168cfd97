#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "charwave/control.hpp"
#include "charwave/stability.hpp"

namespace charwave {

struct FeedbackConfig {
  enum class Mode { none, constant, expression, designed };
  Mode mode = Mode::none;
  double value = 0.0;
  Func expression;
  Func rate;
};

struct ControlConfig {
  enum class Mode { none, null, target };
  Mode mode = ControlConfig::Mode::none;
  TargetState target;
};

struct Scenario {
  std::shared_ptr<const ReflectionMaps> maps;
  InitialData initial;
  FeedbackConfig feedback_config;
  ControlConfig control_config;
  FeedbackSpec feedback;  // f = 0 when no feedback is configured
  Tolerances tolerances;
  int n_x = 512;
  int n_t = 101;

  double horizon() const { return maps->horizon(); }
  // Control signal for the configured mode, if any.
  std::optional<ControlSignal> control() const;
  // Problem with F from the feedback and v from the control (or 0).
  WaveSystem system() const;
};

Scenario parse_scenario(const std::filesystem::path& path);
Scenario parse_scenario_text(std::string_view text);

}  // namespace charwave
