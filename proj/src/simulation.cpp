#include "cascade/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "cascade/analytic.hpp"
#include "cascade/coherent.hpp"
#include "cascade/kernels/kernels.hpp"
#include "cascade/numeric.hpp"
#include "cascade/parallel.hpp"

namespace cascade {

namespace {

struct BlockOutcome {
    BlockSeries series;          // empty when skipped
    BlockDispatch dispatch = BlockDispatch::ZeroWeight;
    double vieta_ratio = 0.0;    // max residual / (1 + max|h|)
    double closed_form_dev = 0.0;
};

struct Accumulators {
    std::vector<double> p11, p22, p33;
    std::vector<double> c12re, c12im, c13re, c13im, c23re, c23im;

    explicit Accumulators(int n)
        : p11(n, 0.0), p22(n, 0.0), p33(n, 0.0),
          c12re(n, 0.0), c12im(n, 0.0), c13re(n, 0.0), c13im(n, 0.0),
          c23re(n, 0.0), c23im(n, 0.0) {}
};

BlockOutcome produce_block_impl(const ModelParams& p, BlockIndex block, double q,
                                const TimeGrid& grid, Engine engine, double oracle_dt);

// engine failures surface with the block index attached
BlockOutcome produce_block(const ModelParams& p, BlockIndex block, double q,
                           const TimeGrid& grid, Engine engine, double oracle_dt) {
    try {
        return produce_block_impl(p, block, q, grid, engine, oracle_dt);
    } catch (const std::exception& e) {
        throw std::runtime_error("block (" + std::to_string(block.n1) + "," +
                                 std::to_string(block.n2) + "): " + e.what());
    }
}

BlockOutcome produce_block_impl(const ModelParams& p, BlockIndex block, double q,
                                const TimeGrid& grid, Engine engine, double oracle_dt) {
    BlockOutcome out;
    if (std::abs(q) < kWeightCutoff) {
        out.dispatch = BlockDispatch::ZeroWeight;
        return out;
    }
    const BlockCoefficients c = block_coefficients(p, block);
    const CubicRoots roots = solve_cubic(c.h1, c.h2, c.h3);
    {
        const auto res = vieta_residuals(roots, c.h1, c.h2, c.h3);
        const double scale =
            1.0 + std::max({std::abs(c.h1), std::abs(c.h2), std::abs(c.h3)});
        out.vieta_ratio = std::max({res[0], res[1], res[2]}) / scale;
    }

    if (engine == Engine::Numeric || roots.degenerate) {
        integrate_block(c, q, grid, std::min(oracle_dt, grid.tau_step), out.series);
        out.dispatch = roots.degenerate ? BlockDispatch::NumericFallback : BlockDispatch::Analytic;
        return out;
    }

    BlockSolution sol;
    sol.block = block;
    sol.q = q;
    sol.coeffs = c;
    sol.roots = roots;
    sol.b = solve_initial_coefficients(c, roots, q, &sol.closed_form_dev);
    out.closed_form_dev = sol.closed_form_dev;

    evaluate_series(sol, grid, out.series);
    out.dispatch = BlockDispatch::Analytic;
    return out;
}

// One block's contribution to the per-time sums. `row` is the block's own row,
// `prev` the row below it (n1 - 1). Call order is lexicographic in (n1, n2).
void accumulate_block(const kernels::Dispatch& k, int n, int n2, int nmax2,
                      const std::vector<BlockOutcome>& row,
                      const std::vector<BlockOutcome>& prev, bool has_prev,
                      Accumulators& acc) {
    const BlockSeries& cur = row[n2].series;
    if (!cur.empty()) {
        k.accumulate_abs2(cur.re1.data(), cur.im1.data(), n, acc.p11.data());
        k.accumulate_abs2(cur.re2.data(), cur.im2.data(), n, acc.p22.data());
        k.accumulate_abs2(cur.re3.data(), cur.im3.data(), n, acc.p33.data());
    }
    if (n2 + 1 <= nmax2 && !cur.empty() && !row[n2 + 1].series.empty()) {
        const BlockSeries& up = row[n2 + 1].series;
        k.accumulate_conj_product(up.re2.data(), up.im2.data(), cur.re3.data(), cur.im3.data(),
                                  n, acc.c23re.data(), acc.c23im.data());
    }
    if (has_prev && !cur.empty()) {
        if (!prev[n2].series.empty()) {
            const BlockSeries& below = prev[n2].series;
            k.accumulate_conj_product(cur.re1.data(), cur.im1.data(), below.re2.data(),
                                      below.im2.data(), n, acc.c12re.data(), acc.c12im.data());
        }
        if (n2 >= 1 && !prev[n2 - 1].series.empty()) {
            const BlockSeries& diag = prev[n2 - 1].series;
            k.accumulate_conj_product(cur.re1.data(), cur.im1.data(), diag.re3.data(),
                                      diag.im3.data(), n, acc.c13re.data(), acc.c13im.data());
        }
    }
}

} // namespace

ObservableSeries simulate_series(const ModelParams& p, Engine engine, int threads,
                                 double oracle_dt) {
    const TimeGrid grid = make_grid(p);
    const int nmax1 = p.resolved_nmax1();
    const int nmax2 = p.resolved_nmax2();
    const auto w1 = coherent_weight_table(std::sqrt(p.nbar1), nmax1);
    const auto w2 = coherent_weight_table(std::sqrt(p.nbar2), nmax2);

    ObservableSeries result;
    RunDiagnostics& diag = result.diag;
    diag.blocks_total = (nmax1 + 1) * (nmax2 + 1);

    if (engine == Engine::Both) {
        // cross-validation leg on tau <= 10, then the analytic run proper
        ModelParams capped = p;
        capped.tau_max = std::min(p.tau_max, 10.0);
        const CrossValidateReport rep = cross_validate(capped, make_grid(capped), oracle_dt);
        result = simulate_series(p, Engine::Analytic, threads, oracle_dt);
        result.diag.cross_validate_max = rep.max_dev;
        return result;
    }

    if (engine == Engine::Numeric) {
        // step-size convergence self-check on the highest-weight block
        int b1 = 0, b2 = 0;
        double best = -1.0;
        for (int n1 = 0; n1 <= nmax1; ++n1) {
            for (int n2 = 0; n2 <= nmax2; ++n2) {
                const double q = std::abs(w1[n1] * w2[n2]);
                if (q > best) { best = q; b1 = n1; b2 = n2; }
            }
        }
        const BlockCoefficients probe = block_coefficients(p, {b1, b2});
        const double dt = std::min(oracle_dt, grid.tau_step);
        const double gap = rk4_halving_gap(probe, w1[b1] * w2[b2], grid, dt);
        if (gap >= 1e-8) {
            throw std::runtime_error("numeric engine: step-size convergence check failed on probe block (" +
                                     std::to_string(b1) + "," + std::to_string(b2) + "): halving dt=" +
                                     std::to_string(dt) + " moves the endpoint by " + std::to_string(gap));
        }
    }

    Accumulators acc(grid.n);
    const kernels::Dispatch& kern = kernels::active();

    std::vector<BlockOutcome> row(nmax2 + 1), prev;
    for (int n1 = 0; n1 <= nmax1; ++n1) {
        parallel_for(nmax2 + 1, threads, [&](int n2) {
            row[n2] = produce_block(p, {n1, n2}, w1[n1] * w2[n2], grid, engine, oracle_dt);
        });
        for (int n2 = 0; n2 <= nmax2; ++n2) {
            const BlockOutcome& o = row[n2];
            if (o.dispatch == BlockDispatch::ZeroWeight) {
                ++diag.blocks_skipped;
            } else {
                if (o.dispatch == BlockDispatch::NumericFallback) ++diag.blocks_degenerate;
                diag.max_vieta = std::max(diag.max_vieta, o.vieta_ratio);
                diag.max_closed_form_dev = std::max(diag.max_closed_form_dev, o.closed_form_dev);
            }
            accumulate_block(kern, grid.n, n2, nmax2, row, prev, n1 > 0, acc);
        }
        std::swap(prev, row);
        if (static_cast<int>(row.size()) != nmax2 + 1) row.resize(nmax2 + 1);
    }

    if (diag.max_vieta > 1e-9) {
        diag.gates_passed = false;
        diag.failure = "cubic root residual gate: max Vieta ratio " +
                       std::to_string(diag.max_vieta) + " exceeds 1e-9";
    }

    // reduce accumulators to samples + runtime gates
    const bool damped = p.gamma1 > 0.0 || p.gamma2 > 0.0;
    result.samples.resize(grid.n);
    diag.min_rho_eigenvalue = 1.0;
    double norm0 = 0.0;
    double prev_norm = 0.0;
    for (int k = 0; k < grid.n; ++k) {
        ReducedDensityMatrix rho;
        rho.t = grid.t(k);
        rho.rho11 = acc.p11[k];
        rho.rho22 = acc.p22[k];
        rho.rho33 = acc.p33[k];
        rho.rho12 = cplx{acc.c12re[k], acc.c12im[k]};
        rho.rho13 = cplx{acc.c13re[k], acc.c13im[k]};
        rho.rho23 = cplx{acc.c23re[k], acc.c23im[k]};

        ObservableSample& s = result.samples[k];
        s.tau = grid.tau(k);
        s.rho11 = rho.rho11;
        s.rho22 = rho.rho22;
        s.rho33 = rho.rho33;
        s.rho12 = rho.rho12;
        s.rho13 = rho.rho13;
        s.rho23 = rho.rho23;
        s.norm = rho.trace();
        s.W = population_inversion(rho);
        try {
            s.C = concurrence(rho);
        } catch (const std::exception& e) {
            diag.gates_passed = false;
            if (diag.failure.empty()) {
                diag.failure = std::string(e.what()) + " at tau=" + std::to_string(s.tau);
            }
            s.C = concurrence_pair_sum(rho);
        }
        diag.max_concurrence_gap =
            std::max(diag.max_concurrence_gap, std::abs(s.C - concurrence_pair_sum(rho)));

        const double min_eig = min_eigenvalue(rho);
        diag.min_rho_eigenvalue = std::min(diag.min_rho_eigenvalue, min_eig);
        if (min_eig < -1e-10 && diag.failure.empty()) {
            diag.gates_passed = false;
            diag.failure = "density matrix eigenvalue " + std::to_string(min_eig) +
                           " below -1e-10 at tau=" + std::to_string(s.tau);
        }

        if (k == 0) {
            norm0 = s.norm;
        } else if (damped) {
            diag.max_norm_step_increase =
                std::max(diag.max_norm_step_increase, s.norm - prev_norm);
        }
        if (!damped) {
            diag.max_norm_drift = std::max(diag.max_norm_drift, std::abs(s.norm - norm0));
        }
        prev_norm = s.norm;
    }
    if (damped && diag.max_norm_step_increase > 1e-10 && diag.failure.empty()) {
        diag.gates_passed = false;
        diag.failure = "norm gate: damped trace increased by " +
                       std::to_string(diag.max_norm_step_increase) + " in one step";
    }
    if (!damped && diag.max_norm_drift > 1e-8 && diag.failure.empty()) {
        diag.gates_passed = false;
        diag.failure = "norm gate: undamped trace drifted by " +
                       std::to_string(diag.max_norm_drift);
    }
    return result;
}

} // namespace cascade
