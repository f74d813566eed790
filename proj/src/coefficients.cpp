#include "cascade/coefficients.hpp"

#include <cmath>

namespace cascade {

std::pair<double, double> derive_slow_detunings(const ModelParams& p) {
    return {p.Delta1 - p.mu, p.Delta2 - p.mu};
}

BlockCoefficients block_coefficients(const ModelParams& p, BlockIndex block) {
    const double n1 = block.n1;
    const double n2 = block.n2;

    BlockCoefficients c;
    c.abar1 = cplx{p.chi1 * n1 * (n1 - 1.0) + p.chi2 * n2 * (n2 - 1.0),
                   -0.5 * p.gamma1 * n1};
    c.abar2 = cplx{p.chi1 * n1 * (n1 + 1.0) + p.chi2 * n2 * (n2 - 1.0),
                   -0.5 * (p.gamma1 * (n1 + 1.0) + p.gamma2 * n2)};
    c.abar3 = cplx{p.chi1 * n1 * (n1 + 1.0) + p.chi2 * n2 * (n2 + 1.0),
                   -0.5 * p.gamma2 * (n2 + 1.0)};
    c.v1 = 0.5 * p.lambda1 * std::sqrt(n1 + 1.0);
    c.v2 = 0.5 * p.lambda2 * std::sqrt(n2 + 1.0);
    const auto [d1, d2] = derive_slow_detunings(p);
    c.delta1 = d1;
    c.delta2 = d2;

    c.Gamma1 = cplx{d2 - d1, 0.0};
    c.Gamma2 = c.abar2 - d1;
    c.Gamma3 = c.abar2; // = delta1 + Gamma2 identically
    c.Gamma4 = c.abar1 * c.Gamma2 - c.v1 * c.v1;

    // Expanded characteristic cubic; the co-rotating-frame diagonal is
    // (abar1, Gamma2, abar3 + Gamma1) and the couplings are v1, v2.
    const cplx e1 = c.abar1;
    const cplx e2 = c.Gamma2;
    const cplx e3 = c.abar3 + c.Gamma1;
    const double w1 = c.v1 * c.v1;
    const double w2 = c.v2 * c.v2;
    c.h1 = e1 + e2 + e3;
    c.h2 = e1 * e2 + e1 * e3 + e2 * e3 - w1 - w2;
    c.h3 = e1 * e2 * e3 - w1 * e3 - w2 * e1;
    return c;
}

} // namespace cascade
