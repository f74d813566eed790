#include "cascade/config.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace cascade {

namespace {

struct FieldEntry {
    const char* name;
    double ModelParams::*real_field;
    int ModelParams::*int_field;
};

const FieldEntry kFields[] = {
    {"lambda1", &ModelParams::lambda1, nullptr},
    {"lambda2", &ModelParams::lambda2, nullptr},
    {"mu", &ModelParams::mu, nullptr},
    {"Delta1", &ModelParams::Delta1, nullptr},
    {"Delta2", &ModelParams::Delta2, nullptr},
    {"chi1", &ModelParams::chi1, nullptr},
    {"chi2", &ModelParams::chi2, nullptr},
    {"gamma1", &ModelParams::gamma1, nullptr},
    {"gamma2", &ModelParams::gamma2, nullptr},
    {"nbar1", &ModelParams::nbar1, nullptr},
    {"nbar2", &ModelParams::nbar2, nullptr},
    {"nmax1", nullptr, &ModelParams::nmax1},
    {"nmax2", nullptr, &ModelParams::nmax2},
    {"tau_max", &ModelParams::tau_max, nullptr},
    {"tau_step", &ModelParams::tau_step, nullptr},
};

const FieldEntry* find_field(const std::string& key) {
    for (const FieldEntry& f : kFields) {
        if (key == f.name) return &f;
    }
    return nullptr;
}

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

double parse_number(const std::string& value, int line_no) {
    char* end = nullptr;
    const double x = std::strtod(value.c_str(), &end);
    if (end == value.c_str() || *end != '\0' || !std::isfinite(x)) {
        throw std::invalid_argument("line " + std::to_string(line_no) +
                                    ": expected a number, got '" + value + "'");
    }
    return x;
}

} // namespace

bool is_param_key(const std::string& key) { return find_field(key) != nullptr; }

void set_param(ModelParams& p, const std::string& key, double value) {
    const FieldEntry* f = find_field(key);
    if (f == nullptr) {
        throw std::invalid_argument("'" + key + "' does not name a model parameter");
    }
    if (f->int_field != nullptr) {
        const int n = static_cast<int>(std::lround(value));
        if (std::abs(value - n) > 1e-9) {
            throw std::invalid_argument("'" + key + "' must be an integer");
        }
        p.*(f->int_field) = n;
    } else {
        p.*(f->real_field) = value;
    }
}

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("line " + std::to_string(line_no) +
                                        ": expected 'key = value', got '" + line + "'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) {
            throw std::invalid_argument("line " + std::to_string(line_no) +
                                        ": expected 'key = value', got '" + line + "'");
        }

        if (is_param_key(key)) {
            try {
                set_param(cfg.params, key, parse_number(value, line_no));
            } catch (const std::invalid_argument& e) {
                throw std::invalid_argument("line " + std::to_string(line_no) + ": " + e.what());
            }
        } else if (key == "mode") {
            if (value == "simulate") cfg.mode = RunMode::Simulate;
            else if (value == "verify") cfg.mode = RunMode::Verify;
            else if (value == "sweep") cfg.mode = RunMode::Sweep;
            else throw std::invalid_argument("line " + std::to_string(line_no) +
                                             ": mode must be simulate, verify, or sweep");
        } else if (key == "engine") {
            if (value == "analytic") cfg.engine = Engine::Analytic;
            else if (value == "numeric") cfg.engine = Engine::Numeric;
            else if (value == "both") cfg.engine = Engine::Both;
            else throw std::invalid_argument("line " + std::to_string(line_no) +
                                             ": engine must be analytic, numeric, or both");
        } else if (key == "output") {
            cfg.output = value;
        } else if (key == "sweep_key") {
            if (!is_param_key(value)) {
                throw std::invalid_argument("line " + std::to_string(line_no) + ": sweep_key '" +
                                            value + "' does not name a model parameter");
            }
            cfg.sweep_key = value;
        } else if (key == "sweep_values") {
            std::istringstream vs(value);
            std::string tok;
            while (std::getline(vs, tok, ',')) {
                tok = trim(tok);
                if (tok.empty()) continue;
                cfg.sweep_values.push_back(parse_number(tok, line_no));
                cfg.sweep_tokens.push_back(tok);
            }
        } else {
            throw std::invalid_argument("line " + std::to_string(line_no) + ": unknown key '" +
                                        key + "'");
        }
    }

    try {
        cfg.params.validate();
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(std::string("invalid configuration: ") + e.what());
    }
    if (cfg.mode == RunMode::Sweep) {
        if (cfg.sweep_key.empty()) throw std::invalid_argument("sweep mode requires sweep_key");
        if (cfg.sweep_values.empty()) {
            throw std::invalid_argument("sweep mode requires non-empty sweep_values");
        }
    }
    return cfg;
}

} // namespace cascade
