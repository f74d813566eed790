// coefficients.hpp — per-block constants: complex diagonal energies, couplings,
// slow detunings, auxiliary Gamma coefficients, and the characteristic cubic.
#pragma once

#include <utility>

#include "cascade/params.hpp"
#include "cascade/types.hpp"

namespace cascade {

// Everything the propagators need about one Fock block. All members derive
// from ModelParams + BlockIndex; the build is pure and bit-reproducible.
//
// Diagonal energies: real part is the Kerr shift chi1*m1*(m1-1) + chi2*m2*(m2-1)
// of each basis state; imaginary part is the phase-damping term evaluated on the
// same state, always <= 0:
//   abar1: |1, n1,   n2  >   Im = -(gamma1*n1)/2
//   abar2: |2, n1+1, n2  >   Im = -(gamma1*(n1+1) + gamma2*n2)/2
//   abar3: |3, n1+1, n2+1>   Im = -(gamma2*(n2+1))/2
struct BlockCoefficients {
    cplx abar1, abar2, abar3; // complex diagonal energies
    double v1 = 0.0;          // (lambda1/2)*sqrt(n1+1)
    double v2 = 0.0;          // (lambda2/2)*sqrt(n2+1)
    double delta1 = 0.0;      // Delta1 - mu
    double delta2 = 0.0;      // Delta2 - mu

    // Auxiliary coefficients. Gamma3 = delta1 + Gamma2 equals abar2 identically.
    cplx Gamma1, Gamma2, Gamma3, Gamma4;

    // Characteristic cubic xi^3 + h1*xi^2 + h2*xi + h3 = 0 of the block dynamics,
    // expanded from (xi+abar1)(xi+Gamma2)(xi+abar3+Gamma1)
    //               - v1^2*(xi+abar3+Gamma1) - v2^2*(xi+abar1).
    cplx h1, h2, h3;

    bool real_coefficients() const {
        return h1.imag() == 0.0 && h2.imag() == 0.0 && h3.imag() == 0.0;
    }
};

// delta_i = Delta_i - mu
std::pair<double, double> derive_slow_detunings(const ModelParams& p);

BlockCoefficients block_coefficients(const ModelParams& p, BlockIndex block);

} // namespace cascade
