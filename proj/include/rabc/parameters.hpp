#pragma once

#include "rabc/model.hpp"

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace rabc {

// Flat key=value view of a ScenarioConfig. Keys are the names accepted by
// config files, the manifest and the sweep axis:
//
//   participants winners rounds threshold risk_alpha ewma_alpha ewma_beta
//   penalty_gamma prior_variance observation_variance cost_mean cost_stddev
//   recruitment_rate initial_roi_epsilon participation_fee tullock_exponent
//   tolerance_min tolerance_max rejoin_patience clamp_monotone
//   freeze_dropped_trackers mpi_population mechanism seed runs

bool is_parameter(std::string_view key);

// Parses `value` into the field named by `key`. Throws ConfigError on an
// unknown key or a malformed value. Range checks are left to validate().
void set_parameter(ScenarioConfig &config, std::string_view key, std::string_view value);

// Numeric parameters only; used by sweeps. Integer-valued fields reject
// non-integral values.
void set_numeric_parameter(ScenarioConfig &config, std::string_view key, double value);
bool is_numeric_parameter(std::string_view key);

// Every parameter in registry order, values rendered so that set_parameter
// reproduces the config exactly.
std::vector<std::pair<std::string, std::string>> to_key_values(ScenarioConfig const &config);

// Round-tripping rendering of a double: "%.15g" when exact, else "%.17g".
std::string format_exact(double value);

}  // namespace rabc
