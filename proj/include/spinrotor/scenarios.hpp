// Built-in verification scenarios.
#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "spinrotor/oracle.hpp"

namespace spinrotor {

struct ScenarioOptions {
  std::uint64_t seed = 42;
  int sectors = 5;     // random-multisector only
  int m_range = 6;     // random-multisector draws m from [-m_range, m_range]
};

// fig1b-m2, fig1b-m4, fig1b-m8, g-zero, single-sector, random-multisector.
const std::vector<std::string>& scenario_names();

// `base` supplies I, Delta and g; g-zero overrides g with 0. Throws
// std::invalid_argument for an unknown name.
oracle::Scenario make_scenario(std::string_view name, const ModelParams& base,
                               const ScenarioOptions& options = {});

// Random normalized superposition over `sectors` distinct m with random spinors.
SuperposedState random_state(std::uint64_t seed, int sectors, int m_range);

}  // namespace spinrotor
