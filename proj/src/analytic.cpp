#include "cascade/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "cascade/coherent.hpp"
#include "cascade/numeric.hpp"

namespace cascade {

namespace {

// Row factors of the exponential ansatz, obtained by substituting
// G1 = sum_j B_j e^{i xi_j t} back into the coupled equations:
//   G2 row factor: -(xi_j + abar1) / v1
//   G3 row factor: ((xi_j + abar1)(xi_j + Gamma2) - v1^2) / (v1 v2)
cplx row2_factor(const BlockCoefficients& c, const cplx& xi) {
    return -(xi + c.abar1) / c.v1;
}

cplx row3_factor(const BlockCoefficients& c, const cplx& xi) {
    return ((xi + c.abar1) * (xi + c.Gamma2) - c.v1 * c.v1) / (c.v1 * c.v2);
}

// 3x3 complex solve with partial pivoting.
std::array<cplx, 3> solve3(cplx a[3][4]) {
    for (int col = 0; col < 3; ++col) {
        int pivot = col;
        double best = std::abs(a[col][col]);
        for (int r = col + 1; r < 3; ++r) {
            const double m = std::abs(a[r][col]);
            if (m > best) { best = m; pivot = r; }
        }
        if (best < 1e-300) throw std::runtime_error("initial-coefficient system is singular");
        if (pivot != col) {
            for (int k = col; k < 4; ++k) std::swap(a[pivot][k], a[col][k]);
        }
        for (int r = col + 1; r < 3; ++r) {
            const cplx f = a[r][col] / a[col][col];
            for (int k = col; k < 4; ++k) a[r][k] -= f * a[col][k];
        }
    }
    std::array<cplx, 3> x{};
    for (int r = 2; r >= 0; --r) {
        cplx s = a[r][3];
        for (int k = r + 1; k < 3; ++k) s -= a[r][k] * x[k];
        x[r] = s / a[r][r];
    }
    return x;
}

// Residue-form coefficients built from the Gamma auxiliaries over the
// root-difference products; retained as a logged cross-check against the
// linear-system solution. The two routes coincide exactly when abar1 = 0;
// otherwise the deviation is reported through closed_form_dev.
std::array<cplx, 3> closed_form_coefficients(const BlockCoefficients& c,
                                             const CubicRoots& roots, double q) {
    std::array<cplx, 3> b{};
    for (int j = 0; j < 3; ++j) {
        const int k = (j + 1) % 3;
        const int l = (j + 2) % 3;
        const cplx num = (c.Gamma3 + roots.xi[k] + roots.xi[l]) * c.abar1 +
                         roots.xi[k] * roots.xi[l] - c.Gamma4;
        const cplx den = (roots.xi[j] - roots.xi[k]) * (roots.xi[j] - roots.xi[l]);
        b[j] = num * q / den;
    }
    return b;
}

} // namespace

std::array<cplx, 3> solve_initial_coefficients(const BlockCoefficients& c,
                                               const CubicRoots& roots, double q,
                                               double* closed_form_dev) {
    cplx a[3][4];
    for (int j = 0; j < 3; ++j) {
        a[0][j] = cplx{1.0, 0.0};
        a[1][j] = roots.xi[j] + c.abar1;
        a[2][j] = (roots.xi[j] + c.abar1) * (roots.xi[j] + c.Gamma2) - c.v1 * c.v1;
    }
    a[0][3] = cplx{q, 0.0};
    a[1][3] = cplx{0.0, 0.0};
    a[2][3] = cplx{0.0, 0.0};
    const std::array<cplx, 3> b = solve3(a);

    if (closed_form_dev != nullptr) {
        *closed_form_dev = 0.0;
        if (q != 0.0) {
            const auto alt = closed_form_coefficients(c, roots, q);
            double scale = 0.0;
            for (int j = 0; j < 3; ++j) scale = std::max(scale, std::abs(b[j]));
            if (scale > 0.0) {
                double dev = 0.0;
                for (int j = 0; j < 3; ++j) dev = std::max(dev, std::abs(alt[j] - b[j]));
                *closed_form_dev = dev / scale;
            }
        }
    }
    return b;
}

BlockSolution solve_block(const ModelParams& p, BlockIndex block, double q) {
    BlockSolution sol;
    sol.block = block;
    sol.q = q;
    sol.coeffs = block_coefficients(p, block);
    sol.roots = solve_cubic(sol.coeffs.h1, sol.coeffs.h2, sol.coeffs.h3);
    sol.vieta = vieta_residuals(sol.roots, sol.coeffs.h1, sol.coeffs.h2, sol.coeffs.h3);
    if (sol.roots.degenerate) {
        throw std::runtime_error("solve_block: degenerate roots in block (" +
                                 std::to_string(block.n1) + "," + std::to_string(block.n2) +
                                 "); use the numeric propagator");
    }
    sol.b = solve_initial_coefficients(sol.coeffs, sol.roots, q, &sol.closed_form_dev);
    return sol;
}

kernels::BlockWave make_wave(const BlockSolution& sol) {
    const BlockCoefficients& c = sol.coeffs;
    kernels::BlockWave w{};
    for (int j = 0; j < 3; ++j) {
        w.xi_re[j] = sol.roots.xi[j].real();
        w.xi_im[j] = sol.roots.xi[j].imag();
        const cplx c1 = sol.b[j];
        const cplx c2 = sol.b[j] * row2_factor(c, sol.roots.xi[j]);
        const cplx c3 = sol.b[j] * row3_factor(c, sol.roots.xi[j]);
        w.c_re[0][j] = c1.real(); w.c_im[0][j] = c1.imag();
        w.c_re[1][j] = c2.real(); w.c_im[1][j] = c2.imag();
        w.c_re[2][j] = c3.real(); w.c_im[2][j] = c3.imag();
    }
    w.phase[0] = 0.0;
    w.phase[1] = -c.delta1;
    w.phase[2] = c.delta2 - c.delta1;
    return w;
}

AmplitudeTriple amplitudes_at(const BlockSolution& sol, double t) {
    const BlockCoefficients& c = sol.coeffs;
    AmplitudeTriple out{};
    for (int j = 0; j < 3; ++j) {
        const cplx e = std::exp(I * sol.roots.xi[j] * t);
        out.g1 += sol.b[j] * e;
        out.g2 += sol.b[j] * row2_factor(c, sol.roots.xi[j]) * e;
        out.g3 += sol.b[j] * row3_factor(c, sol.roots.xi[j]) * e;
    }
    out.g2 *= std::exp(-I * (c.delta1 * t));
    out.g3 *= std::exp(I * ((c.delta2 - c.delta1) * t));
    return out;
}

void evaluate_series(const BlockSolution& sol, const TimeGrid& grid, BlockSeries& out) {
    out.resize(grid.n);
    const kernels::BlockWave w = make_wave(sol);
    const kernels::SeriesOut dst{out.re1.data(), out.im1.data(), out.re2.data(),
                                 out.im2.data(), out.re3.data(), out.im3.data()};
    double max_phase = 0.0;
    const double t_end = grid.n > 1 ? grid.t(grid.n - 1) : 0.0;
    for (int j = 0; j < 3; ++j) {
        max_phase = std::max(max_phase, std::abs(w.xi_re[j]) * t_end);
    }
    for (int r = 1; r < 3; ++r) {
        max_phase = std::max(max_phase, std::abs(w.phase[r]) * t_end);
    }
    const kernels::Dispatch& kern =
        max_phase < 1e6 ? kernels::active() : kernels::scalar();
    kern.amplitude_series(w, 0.0, grid.tau_step / grid.time_scale, grid.n, dst);
}

BlockDispatch propagate_block(const ModelParams& p, BlockIndex block, const TimeGrid& grid,
                              BlockSeries& out, double oracle_dt) {
    const double q = coherent_weight(std::sqrt(p.nbar1), block.n1) *
                     coherent_weight(std::sqrt(p.nbar2), block.n2);
    if (std::abs(q) < kWeightCutoff) {
        out.assign_zero(grid.n);
        return BlockDispatch::ZeroWeight;
    }

    const BlockCoefficients c = block_coefficients(p, block);
    const CubicRoots roots = solve_cubic(c.h1, c.h2, c.h3);
    if (roots.degenerate) {
        integrate_block(c, q, grid, std::min(oracle_dt, grid.tau_step), out);
        return BlockDispatch::NumericFallback;
    }

    BlockSolution sol;
    sol.block = block;
    sol.q = q;
    sol.coeffs = c;
    sol.roots = roots;
    sol.vieta = vieta_residuals(roots, c.h1, c.h2, c.h3);
    sol.b = solve_initial_coefficients(c, roots, q, &sol.closed_form_dev);

    evaluate_series(sol, grid, out);
    return BlockDispatch::Analytic;
}

} // namespace cascade
