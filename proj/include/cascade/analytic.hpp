// analytic.hpp — closed-form block propagator: eigenfrequencies from the
// characteristic cubic, initial-condition coefficients from a 3x3 linear
// solve, amplitude evaluation via the dispatched series kernel.
#pragma once

#include <array>

#include "cascade/coefficients.hpp"
#include "cascade/cubic.hpp"
#include "cascade/kernels/kernels.hpp"
#include "cascade/params.hpp"
#include "cascade/types.hpp"

namespace cascade {

struct BlockSolution {
    BlockIndex block{};
    double q = 0.0;             // initial weight q_{n1} q_{n2}
    BlockCoefficients coeffs{};
    CubicRoots roots{};
    std::array<cplx, 3> b{};    // linear-system coefficients (source of truth)
    std::array<double, 3> vieta{}; // root residuals, checked by the runtime gate

    // Max relative deviation of the residue-form closed expression from
    // the linear-system solution; reported, never fatal.
    double closed_form_dev = 0.0;
};

// Solves the 3x3 system imposed by G1(0) = q, G2(0) = 0, G3(0) = 0 on the
// exponential ansatz. closed_form_dev (optional out) receives the deviation
// of the closed-form expression. Throws std::runtime_error on a singular
// system (impossible for distinct roots; indicates a coefficient bug).
std::array<cplx, 3> solve_initial_coefficients(const BlockCoefficients& c,
                                               const CubicRoots& roots, double q,
                                               double* closed_form_dev = nullptr);

// Full per-block closed-form solve. Requires non-degenerate roots.
BlockSolution solve_block(const ModelParams& p, BlockIndex block, double q);

// Kernel-ready representation of the block's three amplitude rows.
kernels::BlockWave make_wave(const BlockSolution& sol);

// Amplitudes at one (unscaled) time, t >= 0.
AmplitudeTriple amplitudes_at(const BlockSolution& sol, double t);

// Fills the series via the dispatched kernel. Blocks whose phase arguments
// leave the vector-math accuracy envelope (|xi_re * t| beyond ~1e6) are
// evaluated with the scalar reference kernel instead.
void evaluate_series(const BlockSolution& sol, const TimeGrid& grid, BlockSeries& out);

enum class BlockDispatch {
    Analytic,        // closed form, series kernel
    NumericFallback, // degenerate roots: RK4 at oracle_dt
    ZeroWeight,      // |q| below the 1e-14 cutoff: all-zero series
};

// Weight cutoff below which a block is skipped entirely.
inline constexpr double kWeightCutoff = 1e-14;

// One amplitude sample per grid point; degenerate-root blocks are delegated
// to the numeric propagator at step oracle_dt.
BlockDispatch propagate_block(const ModelParams& p, BlockIndex block, const TimeGrid& grid,
                              BlockSeries& out, double oracle_dt = 1e-3);

} // namespace cascade
