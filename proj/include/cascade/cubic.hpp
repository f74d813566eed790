// cubic.hpp — eigenfrequency solver for xi^3 + h1*xi^2 + h2*xi + h3 = 0
#pragma once

#include <array>
#include <optional>

#include "cascade/types.hpp"

namespace cascade {

// Three roots, ordered ascending by real part (ties by imaginary part).
// degenerate is set when min_{j<k} |xi_j - xi_k| < 1e-6 * (1 + max|xi|).
struct CubicRoots {
    std::array<cplx, 3> xi{};
    bool degenerate = false;
};

// Trigonometric three-real-root form. Returns nullopt when the discriminant
// indicates a complex conjugate pair (beyond a 1e-12 boundary clamp), in which
// case the caller falls through to solve_cubic_complex.
std::optional<CubicRoots> solve_cubic_real(double h1, double h2, double h3);

// General depressed-cubic Cardano in complex arithmetic, each root polished
// by up to 5 Newton iterations. Always returns three roots.
CubicRoots solve_cubic_complex(cplx h1, cplx h2, cplx h3);

// Dispatch: real coefficients take the trigonometric branch when applicable.
CubicRoots solve_cubic(cplx h1, cplx h2, cplx h3);

// Absolute defects of the three Vieta identities:
//   |xi1+xi2+xi3 + h1|, |xi1 xi2 + xi1 xi3 + xi2 xi3 - h2|, |xi1 xi2 xi3 + h3|
std::array<double, 3> vieta_residuals(const CubicRoots& roots, cplx h1, cplx h2, cplx h3);

} // namespace cascade
