// cascade — exact dynamics of a three-level cascade atom coupled to a two-mode
// field: population inversion and concurrence time series as CSV.
#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "cascade/config.hpp"
#include "cascade/csv.hpp"
#include "cascade/kernels/kernels.hpp"
#include "cascade/numeric.hpp"
#include "cascade/presets.hpp"
#include "cascade/simulation.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitGateFailure = 2;

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void log_params(const cascade::ModelParams& p) {
    std::fprintf(stderr,
                 "# params: lambda=(%g,%g) mu=%g Delta=(%g,%g) chi=(%g,%g) gamma=(%g,%g) "
                 "nbar=(%g,%g) nmax=(%d,%d) tau_max=%g tau_step=%g\n",
                 p.lambda1, p.lambda2, p.mu, p.Delta1, p.Delta2, p.chi1, p.chi2, p.gamma1,
                 p.gamma2, p.nbar1, p.nbar2, p.resolved_nmax1(), p.resolved_nmax2(), p.tau_max,
                 p.tau_step);
}

const char* engine_name(cascade::Engine e) {
    switch (e) {
        case cascade::Engine::Analytic: return "analytic";
        case cascade::Engine::Numeric: return "numeric";
        case cascade::Engine::Both: return "both";
    }
    return "?";
}

int run_one(const cascade::ModelParams& params, cascade::Engine engine, int threads,
            double oracle_dt, const std::string& out_path) {
    log_params(params);
    std::fprintf(stderr, "# engine=%s kernel=%s threads=%d\n", engine_name(engine),
                 cascade::kernels::active().name, threads);

    const cascade::ObservableSeries series =
        cascade::simulate_series(params, engine, threads, oracle_dt);
    const cascade::RunDiagnostics& d = series.diag;
    std::fprintf(stderr, "# blocks: %d total, %d skipped (weight), %d numeric-fallback\n",
                 d.blocks_total, d.blocks_skipped, d.blocks_degenerate);
    std::fprintf(stderr,
                 "# gates: vieta=%.3g closed_form_dev=%.3g concurrence_gap=%.3g "
                 "min_rho_eig=%.3g norm_drift=%.3g norm_step_increase=%.3g\n",
                 d.max_vieta, d.max_closed_form_dev, d.max_concurrence_gap,
                 d.min_rho_eigenvalue, d.max_norm_drift, d.max_norm_step_increase);
    if (d.cross_validate_max >= 0.0) {
        std::fprintf(stderr, "# cross-validation (tau<=10): max |G_analytic - G_rk4| = %.3g\n",
                     d.cross_validate_max);
    }

    cascade::write_csv_file(out_path, series);
    std::fprintf(stderr, "# wrote %s (%zu rows)\n", out_path.c_str(), series.samples.size());

    if (!d.gates_passed) {
        std::fprintf(stderr, "# GATE FAILURE: %s\n", d.failure.c_str());
        return kExitGateFailure;
    }
    return 0;
}

int run_verify(const std::vector<std::string>& ids, double dt, double tau_max) {
    bool all_ok = true;
    for (const std::string& id : ids) {
        cascade::ModelParams p = cascade::load_preset(id);
        p.tau_max = tau_max;
        p.validate();
        const cascade::TimeGrid grid = cascade::make_grid(p);
        const cascade::CrossValidateReport rep = cascade::cross_validate(p, grid, dt);
        for (const auto& e : rep.entries) {
            std::fprintf(stderr, "# preset %s block (%d,%d)%s: max dev %.3g\n", id.c_str(),
                         e.block.n1, e.block.n2, e.degenerate ? " [numeric-fallback]" : "",
                         e.max_dev);
        }
        const bool ok = rep.max_dev < 1e-6;
        all_ok = all_ok && ok;
        std::printf("%s  preset %s: max |G_analytic - G_rk4| = %.3g (dt=%g, tau<=%g)\n",
                    ok ? "PASS" : "FAIL", id.c_str(), rep.max_dev, dt, tau_max);
    }
    return all_ok ? 0 : kExitGateFailure;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"three-level cascade atom + two-mode field simulator"};
    app.require_subcommand(1);
    app.fallthrough(); // global options may appear after the subcommand

    int threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
    std::string kernel = "auto";
    app.add_option("--threads", threads, "worker count (output is identical for any value)");
    app.add_option("--kernel", kernel, "kernel variant: auto, scalar, avx2")
        ->check(CLI::IsMember({"auto", "scalar", "avx2"}));

    auto* sim = app.add_subcommand("simulate", "run one configuration and write CSV");
    std::string sim_config;
    std::string sim_out;
    std::string sim_engine;
    sim->add_option("--config", sim_config, "configuration file")->required();
    sim->add_option("--out", sim_out, "output CSV path (default: config output key)");
    sim->add_option("--engine", sim_engine, "analytic, numeric, or both")
        ->check(CLI::IsMember({"analytic", "numeric", "both"}));

    auto* fig = app.add_subcommand("figure", "run one figure preset (2a..7f)");
    std::string fig_id;
    std::string fig_out;
    fig->add_option("id", fig_id, "preset id, e.g. 2a")->required();
    fig->add_option("--out", fig_out, "output CSV path (default figure_<id>.csv)");

    auto* ver = app.add_subcommand("verify", "cross-validate analytic vs RK4 on sampled blocks");
    std::string ver_preset;
    double ver_dt = 1e-3;
    ver->add_option("--preset", ver_preset, "single preset id (default: the six-regime set)");
    ver->add_option("--dt", ver_dt, "oracle step in scaled time")->check(CLI::PositiveNumber);

    auto* swp = app.add_subcommand("sweep", "run one configuration per sweep value");
    std::string swp_config;
    std::string swp_key;
    std::string swp_values;
    std::string swp_out;
    swp->add_option("--config", swp_config, "configuration file")->required();
    swp->add_option("--key", swp_key, "parameter to sweep (overrides config sweep_key)");
    swp->add_option("--values", swp_values, "comma-separated values (overrides config)");
    swp->add_option("--out", swp_out, "output CSV stem");

    CLI11_PARSE(app, argc, argv);

    if (!cascade::kernels::select(kernel)) {
        std::fprintf(stderr, "kernel variant '%s' is not available on this CPU\n", kernel.c_str());
        return kExitUsage;
    }

    try {
        if (sim->parsed()) {
            cascade::RunConfig cfg = cascade::parse_config(read_file(sim_config));
            if (sim_engine == "analytic") cfg.engine = cascade::Engine::Analytic;
            else if (sim_engine == "numeric") cfg.engine = cascade::Engine::Numeric;
            else if (sim_engine == "both") cfg.engine = cascade::Engine::Both;
            const std::string out = sim_out.empty() ? cfg.output : sim_out;
            return run_one(cfg.params, cfg.engine, threads, 1e-3, out);
        }
        if (fig->parsed()) {
            const cascade::ModelParams p = cascade::load_preset(fig_id);
            p.validate();
            const std::string out = fig_out.empty() ? "figure_" + fig_id + ".csv" : fig_out;
            return run_one(p, cascade::Engine::Analytic, threads, 1e-3, out);
        }
        if (ver->parsed()) {
            std::vector<std::string> ids;
            if (!ver_preset.empty()) {
                ids.push_back(ver_preset);
            } else {
                ids = {"2a", "2c", "3a", "4a", "2b", "7f"}; // mu, Delta, chi, gamma regimes
            }
            return run_verify(ids, ver_dt, 10.0);
        }
        if (swp->parsed()) {
            cascade::RunConfig cfg = cascade::parse_config(read_file(swp_config));
            if (!swp_key.empty()) {
                if (!cascade::is_param_key(swp_key)) {
                    std::fprintf(stderr, "--key '%s' does not name a model parameter\n",
                                 swp_key.c_str());
                    return kExitUsage;
                }
                cfg.sweep_key = swp_key;
            }
            if (!swp_values.empty()) {
                cfg.sweep_values.clear();
                cfg.sweep_tokens.clear();
                std::istringstream vs(swp_values);
                std::string tok;
                while (std::getline(vs, tok, ',')) {
                    if (tok.empty()) continue;
                    cfg.sweep_values.push_back(std::stod(tok));
                    cfg.sweep_tokens.push_back(tok);
                }
            }
            if (cfg.sweep_key.empty() || cfg.sweep_values.empty()) {
                std::fprintf(stderr, "sweep requires --key and --values (or config entries)\n");
                return kExitUsage;
            }
            std::string stem = swp_out.empty() ? cfg.output : swp_out;
            if (stem.size() > 4 && stem.substr(stem.size() - 4) == ".csv") {
                stem.erase(stem.size() - 4);
            }
            int status = 0;
            for (size_t i = 0; i < cfg.sweep_values.size(); ++i) {
                cascade::ModelParams p = cfg.params;
                cascade::set_param(p, cfg.sweep_key, cfg.sweep_values[i]);
                p.validate();
                const std::string out = stem + "_" + cfg.sweep_key + "_" + cfg.sweep_tokens[i] +
                                        ".csv";
                const int rc = run_one(p, cfg.engine, threads, 1e-3, out);
                if (rc != 0) status = rc;
            }
            return status;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    }
    return kExitUsage;
}
