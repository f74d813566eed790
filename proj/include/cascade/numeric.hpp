// numeric.hpp — fixed-step RK4 oracle for the per-block coupled amplitude ODEs;
// ground truth for the analytic propagator and fallback for degenerate blocks.
#pragma once

#include <vector>

#include "cascade/coefficients.hpp"
#include "cascade/params.hpp"
#include "cascade/types.hpp"

namespace cascade {

// dG/dt = -i * M(t) * G, with M the block matrix: diagonal (abar1, abar2, abar3),
// off-diagonals v1 e^{+i delta1 t} (row 1), v1 e^{-i delta1 t} and v2 e^{-i delta2 t}
// (row 2), v2 e^{+i delta2 t} (row 3).
AmplitudeTriple rhs(const BlockCoefficients& c, double t, const AmplitudeTriple& g);

// Classical RK4 at fixed step, emitting one sample per grid point.
// dt_tau is the step in scaled time and must not exceed grid.tau_step; the
// actual step divides tau_step exactly so grid points are hit exactly.
// Internally the exactly-equivalent phase-factored form of the system is
// stepped (the known diagonal phases e^{-i abar t} are split off), which keeps
// the fixed-step error budget on the slow couplings only.
void integrate_block(const BlockCoefficients& c, double q, const TimeGrid& grid,
                     double dt_tau, BlockSeries& out);

// Endpoint change when the step is halved; the simulation front end runs this
// once on a probe block and aborts when it exceeds 1e-8.
double rk4_halving_gap(const BlockCoefficients& c, double q, const TimeGrid& grid,
                       double dt_tau);

struct CrossValidateEntry {
    BlockIndex block;
    double max_dev = 0.0;     // max |G_analytic - G_rk4| over rows and grid points
    bool degenerate = false;  // analytic side fell back to the oracle
};

struct CrossValidateReport {
    std::vector<CrossValidateEntry> entries;
    double max_dev = 0.0;
};

// Runs both propagators on the deterministic block sample (vacuum, one per
// single-mode peak, (nbar1, nbar2), the highest-weight block, plus any
// degenerate-flagged blocks) and reports per-block max deviations.
CrossValidateReport cross_validate(const ModelParams& p, const TimeGrid& grid, double dt_tau);

} // namespace cascade
