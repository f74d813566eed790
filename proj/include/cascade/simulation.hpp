// simulation.hpp — full-run orchestration: block propagation (either engine),
// deterministic block reduction, per-time observables, and runtime sanity gates.
#pragma once

#include <string>
#include <vector>

#include "cascade/observables.hpp"
#include "cascade/params.hpp"

namespace cascade {

enum class Engine { Analytic, Numeric, Both };

struct RunDiagnostics {
    int blocks_total = 0;
    int blocks_skipped = 0;     // below the weight cutoff
    int blocks_degenerate = 0;  // delegated to the numeric propagator
    double max_vieta = 0.0;     // max root residual relative to 1e-9*(1+max|h|)
    double max_closed_form_dev = 0.0;
    double max_concurrence_gap = 0.0; // max |C_trace - C_pairsum| over the grid
    double min_rho_eigenvalue = 0.0;
    double max_norm_step_increase = 0.0; // gamma > 0 runs; should stay <= 1e-10
    double max_norm_drift = 0.0;         // gamma == 0 runs; |Tr rho - Tr rho(0)|
    double cross_validate_max = -1.0;    // engine=Both only
    bool gates_passed = true;
    std::string failure;
};

struct ObservableSeries {
    std::vector<ObservableSample> samples;
    RunDiagnostics diag;
};

// Propagates every block of the truncated lattice over the grid derived from
// the params and reduces to per-time observables. Worker count affects only
// wall time, never the result.
ObservableSeries simulate_series(const ModelParams& p, Engine engine, int threads,
                                 double oracle_dt = 1e-3);

} // namespace cascade
