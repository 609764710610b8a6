#pragma once

/// @file catalog.hpp
/// Built-in verification scenarios spanning the estimate regimes: flat and
/// curved charts, static and moving metrics, Killing and non-Killing
/// fluxes, and viscous regularization.

#include <string>
#include <vector>

#include "mclaw/config.hpp"

namespace mclaw {

struct ScenarioInfo {
  std::string name;
  std::string description;
};

const std::vector<ScenarioInfo>& scenario_catalog();

bool is_scenario(const std::string& name);

/// Ready-to-run configuration for a catalog entry. Throws ConfigError on
/// unknown names; the message lists the catalog.
RunConfig scenario_config(const std::string& name);

}  // namespace mclaw
