// config.hpp — line-oriented `key = value` run configuration.
#pragma once

#include <string>
#include <vector>

#include "cascade/params.hpp"
#include "cascade/simulation.hpp"

namespace cascade {

enum class RunMode { Simulate, Verify, Sweep };

struct RunConfig {
    ModelParams params;
    RunMode mode = RunMode::Simulate;
    Engine engine = Engine::Analytic;
    std::string output = "out.csv";
    std::string sweep_key;
    std::vector<double> sweep_values;
    std::vector<std::string> sweep_tokens; // sweep_values as written (file suffixes)
};

// Parses `key = value` lines ('#' starts a comment). Keys are the ModelParams
// field names plus mode/engine/output/sweep_key/sweep_values. Unknown keys,
// malformed lines, and invariant violations throw std::invalid_argument with
// the line number. Missing keys take the documented defaults.
RunConfig parse_config(const std::string& text);

// Assigns one ModelParams field by its config-key name (used by sweeps).
// Throws std::invalid_argument for unknown names or invalid values.
void set_param(ModelParams& p, const std::string& key, double value);

bool is_param_key(const std::string& key);

} // namespace cascade
