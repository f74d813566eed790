#include "cascade/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cascade/analytic.hpp"
#include "cascade/coherent.hpp"

namespace cascade {

AmplitudeTriple rhs(const BlockCoefficients& c, double t, const AmplitudeTriple& g) {
    const cplx ph1 = std::exp(I * (c.delta1 * t));
    const cplx ph2 = std::exp(I * (c.delta2 * t));
    const cplx m12 = c.v1 * ph1;
    const cplx m21 = c.v1 * std::conj(ph1);
    const cplx m23 = c.v2 * std::conj(ph2);
    const cplx m32 = c.v2 * ph2;
    return {-I * (c.abar1 * g.g1 + m12 * g.g2),
            -I * (m21 * g.g1 + c.abar2 * g.g2 + m23 * g.g3),
            -I * (m32 * g.g2 + c.abar3 * g.g3)};
}

namespace {

// Phase-factored form: G_k = e^{-i abar_k t} * y_k, which leaves
//   i y' = V~(t) y,  V~_{jk} = V_jk * e^{i (abar_j - abar_k) t}
// with a zero diagonal. Exact change of variables; RK4 then only has to
// resolve the coupling scale and the slow phase mismatches.
struct FactoredSystem {
    cplx s12, s21, s23, s32; // exponent slopes of the off-diagonal phases
    double v1, v2;
    cplx a1, a2, a3;

    explicit FactoredSystem(const BlockCoefficients& c)
        : v1(c.v1), v2(c.v2), a1(c.abar1), a2(c.abar2), a3(c.abar3) {
        s12 = I * (c.delta1 + c.abar1 - c.abar2);
        s21 = I * (c.abar2 - c.abar1 - c.delta1);
        s23 = I * (c.abar2 - c.abar3 - c.delta2);
        s32 = I * (c.abar3 - c.abar2 + c.delta2);
    }

    void deriv(double t, const cplx y[3], cplx dy[3]) const {
        const cplx w12 = v1 * std::exp(s12 * t);
        const cplx w21 = v1 * std::exp(s21 * t);
        const cplx w23 = v2 * std::exp(s23 * t);
        const cplx w32 = v2 * std::exp(s32 * t);
        dy[0] = -I * (w12 * y[1]);
        dy[1] = -I * (w21 * y[0] + w23 * y[2]);
        dy[2] = -I * (w32 * y[1]);
    }

    AmplitudeTriple emit(double t, const cplx y[3]) const {
        return {std::exp(-I * a1 * t) * y[0],
                std::exp(-I * a2 * t) * y[1],
                std::exp(-I * a3 * t) * y[2]};
    }
};

void rk4_step(const FactoredSystem& sys, double t, double h, cplx y[3]) {
    cplx k1[3], k2[3], k3[3], k4[3], tmp[3];
    sys.deriv(t, y, k1);
    for (int i = 0; i < 3; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
    sys.deriv(t + 0.5 * h, tmp, k2);
    for (int i = 0; i < 3; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
    sys.deriv(t + 0.5 * h, tmp, k3);
    for (int i = 0; i < 3; ++i) tmp[i] = y[i] + h * k3[i];
    sys.deriv(t + h, tmp, k4);
    for (int i = 0; i < 3; ++i) {
        y[i] += (h / 6.0) * (k1[i] + 2.0 * (k2[i] + k3[i]) + k4[i]);
    }
}

} // namespace

void integrate_block(const BlockCoefficients& c, double q, const TimeGrid& grid,
                     double dt_tau, BlockSeries& out) {
    if (dt_tau <= 0.0) throw std::invalid_argument("integrate_block: dt must be positive");
    if (dt_tau > grid.tau_step + 1e-15) {
        throw std::invalid_argument("integrate_block: dt must not exceed the grid spacing");
    }
    const int substeps = std::max(1, static_cast<int>(std::ceil(grid.tau_step / dt_tau - 1e-9)));
    const double h = grid.tau_step / substeps / grid.time_scale;

    out.resize(grid.n);
    const FactoredSystem sys(c);
    cplx y[3] = {cplx{q, 0.0}, cplx{0.0, 0.0}, cplx{0.0, 0.0}};
    out.set(0, sys.emit(0.0, y));
    for (int k = 1; k < grid.n; ++k) {
        const double t_base = grid.t(k - 1);
        for (int s = 0; s < substeps; ++s) {
            rk4_step(sys, t_base + s * h, h, y);
        }
        out.set(k, sys.emit(grid.t(k), y));
    }
}

double rk4_halving_gap(const BlockCoefficients& c, double q, const TimeGrid& grid,
                       double dt_tau) {
    BlockSeries full, half;
    integrate_block(c, q, grid, dt_tau, full);
    integrate_block(c, q, grid, 0.5 * dt_tau, half);
    const int last = grid.n - 1;
    const AmplitudeTriple a = full.at(last);
    const AmplitudeTriple b = half.at(last);
    return std::max({std::abs(a.g1 - b.g1), std::abs(a.g2 - b.g2), std::abs(a.g3 - b.g3)});
}

CrossValidateReport cross_validate(const ModelParams& p, const TimeGrid& grid, double dt_tau) {
    const int nmax1 = p.resolved_nmax1();
    const int nmax2 = p.resolved_nmax2();
    const auto w1 = coherent_weight_table(std::sqrt(p.nbar1), nmax1);
    const auto w2 = coherent_weight_table(std::sqrt(p.nbar2), nmax2);

    // deterministic sample: vacuum, the two single-mode peaks, (nbar, nbar),
    // and the highest-weight block
    std::vector<BlockIndex> sample;
    auto add = [&](int n1, int n2) {
        n1 = std::clamp(n1, 0, nmax1);
        n2 = std::clamp(n2, 0, nmax2);
        for (const auto& b : sample) {
            if (b.n1 == n1 && b.n2 == n2) return;
        }
        sample.push_back({n1, n2});
    };
    add(0, 0);
    add(static_cast<int>(std::lround(p.nbar1)), 0);
    add(0, static_cast<int>(std::lround(p.nbar2)));
    add(static_cast<int>(std::lround(p.nbar1)), static_cast<int>(std::lround(p.nbar2)));
    {
        int best1 = 0, best2 = 0;
        double best = -1.0;
        for (int n1 = 0; n1 <= nmax1; ++n1) {
            for (int n2 = 0; n2 <= nmax2; ++n2) {
                const double q = std::abs(w1[n1] * w2[n2]);
                if (q > best) { best = q; best1 = n1; best2 = n2; }
            }
        }
        add(best1, best2);
    }
    // plus any degenerate-flagged blocks (capped; they exercise the fallback)
    int degenerate_added = 0;
    for (int n1 = 0; n1 <= nmax1 && degenerate_added < 4; ++n1) {
        for (int n2 = 0; n2 <= nmax2 && degenerate_added < 4; ++n2) {
            const BlockCoefficients c = block_coefficients(p, {n1, n2});
            if (solve_cubic(c.h1, c.h2, c.h3).degenerate) {
                add(n1, n2);
                ++degenerate_added;
            }
        }
    }

    CrossValidateReport report;
    for (const BlockIndex b : sample) {
        const double q = w1[b.n1] * w2[b.n2];
        BlockSeries analytic, numeric;
        const BlockDispatch used = propagate_block(p, b, grid, analytic, dt_tau);
        const BlockCoefficients c = block_coefficients(p, b);
        integrate_block(c, q, grid, dt_tau, numeric);
        double dev = 0.0;
        for (int k = 0; k < grid.n; ++k) {
            const AmplitudeTriple x = analytic.at(k);
            const AmplitudeTriple y = numeric.at(k);
            dev = std::max({dev, std::abs(x.g1 - y.g1), std::abs(x.g2 - y.g2),
                            std::abs(x.g3 - y.g3)});
        }
        report.entries.push_back({b, dev, used == BlockDispatch::NumericFallback});
        report.max_dev = std::max(report.max_dev, dev);
    }
    return report;
}

} // namespace cascade
