#include "cascade/presets.hpp"

#include <cmath>
#include <stdexcept>

namespace cascade {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct PresetRow {
    const char* id;
    double mu, Delta, chi, gamma;
};

// All panels share nbar1 = nbar2 = 10 and lambda1 = lambda2 = 1; each row
// varies one control (mu, Delta, chi) with and without damping.
const PresetRow kPresets[] = {
    // population-inversion rows: modulation sweep
    {"2a", 0.0, 0.0, 0.0, 0.0},
    {"2b", 0.0, 0.0, 0.0, 0.0005},
    {"2c", 3.0 * kPi, 0.0, 0.0, 0.0},
    {"2d", 3.0 * kPi, 0.0, 0.0, 0.0005},
    {"2e", 10.0 * kPi, 0.0, 0.0, 0.0},
    {"2f", 10.0 * kPi, 0.0, 0.0, 0.0005},
    // detuning sweep
    {"3a", 0.0, 7.0, 0.0, 0.0},
    {"3b", 0.0, 7.0, 0.0, 0.0005},
    {"3c", 0.0, 17.0, 0.0, 0.0},
    {"3d", 0.0, 17.0, 0.0, 0.0005},
    {"3e", 0.0, 25.0, 0.0, 0.0},
    {"3f", 0.0, 25.0, 0.0, 0.0005},
    // Kerr sweep
    {"4a", 0.0, 0.0, 0.01, 0.0},
    {"4b", 0.0, 0.0, 0.01, 0.0004},
    {"4c", 0.0, 0.0, 0.2, 0.0},
    {"4d", 0.0, 0.0, 0.2, 0.0004},
    {"4e", 0.0, 0.0, 0.5, 0.0},
    {"4f", 0.0, 0.0, 0.5, 0.0004},
    // concurrence rows: modulation sweep
    {"5a", 0.0, 0.0, 0.0, 0.0},
    {"5b", 0.0, 0.0, 0.0, 0.001},
    {"5c", 5.0 * kPi, 0.0, 0.0, 0.0},
    {"5d", 5.0 * kPi, 0.0, 0.0, 0.001},
    {"5e", 10.0 * kPi, 0.0, 0.0, 0.0},
    {"5f", 10.0 * kPi, 0.0, 0.0, 0.001},
    // detuning sweep
    {"6a", 0.0, 10.0, 0.0, 0.0},
    {"6b", 0.0, 10.0, 0.0, 0.001},
    {"6c", 0.0, 15.0, 0.0, 0.0},
    {"6d", 0.0, 15.0, 0.0, 0.001},
    {"6e", 0.0, 25.0, 0.0, 0.0},
    {"6f", 0.0, 25.0, 0.0, 0.001},
    // Kerr sweep
    {"7a", 0.0, 0.0, 0.01, 0.0},
    {"7b", 0.0, 0.0, 0.01, 0.001},
    {"7c", 0.0, 0.0, 0.1, 0.0},
    {"7d", 0.0, 0.0, 0.1, 0.001},
    {"7e", 0.0, 0.0, 0.5, 0.0},
    {"7f", 0.0, 0.0, 0.5, 0.001},
};

} // namespace

ModelParams load_preset(const std::string& id) {
    for (const PresetRow& row : kPresets) {
        if (id == row.id) {
            ModelParams p;
            p.lambda1 = p.lambda2 = 1.0;
            p.mu = row.mu;
            p.Delta1 = p.Delta2 = row.Delta;
            p.chi1 = p.chi2 = row.chi;
            p.gamma1 = p.gamma2 = row.gamma;
            p.nbar1 = p.nbar2 = 10.0;
            return p;
        }
    }
    throw std::invalid_argument("unknown preset id '" + id + "'");
}

const std::vector<std::string>& preset_ids() {
    static const std::vector<std::string> ids = [] {
        std::vector<std::string> v;
        for (const PresetRow& row : kPresets) v.emplace_back(row.id);
        return v;
    }();
    return ids;
}

} // namespace cascade
