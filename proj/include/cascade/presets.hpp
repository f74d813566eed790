// presets.hpp — the 36 figure-panel parameter sets ("2a".."7f"), lambda = 1.
#pragma once

#include <string>
#include <vector>

#include "cascade/params.hpp"

namespace cascade {

// Throws std::invalid_argument for an unknown id.
ModelParams load_preset(const std::string& id);

const std::vector<std::string>& preset_ids();

} // namespace cascade
