#include "cascade/observables.hpp"
#include <cstdio>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace cascade {

cplx ReducedDensityMatrix::element(int i, int j) const {
    switch (i * 3 + j) {
        case 0: return cplx{rho11, 0.0};
        case 1: return rho12;
        case 2: return rho13;
        case 3: return std::conj(rho12);
        case 4: return cplx{rho22, 0.0};
        case 5: return rho23;
        case 6: return std::conj(rho13);
        case 7: return std::conj(rho23);
        case 8: return cplx{rho33, 0.0};
    }
    throw std::out_of_range("element: index out of range");
}

ReducedDensityMatrix reduced_density_matrix(const AmplitudeLattice& lat, double t) {
    ReducedDensityMatrix rho;
    rho.t = t;
    for (int n1 = 0; n1 <= lat.nmax1; ++n1) {
        for (int n2 = 0; n2 <= lat.nmax2; ++n2) {
            const AmplitudeTriple& g = lat.at(n1, n2);
            rho.rho11 += std::norm(g.g1);
            rho.rho22 += std::norm(g.g2);
            rho.rho33 += std::norm(g.g3);
            if (n2 + 1 <= lat.nmax2) {
                rho.rho23 += lat.at(n1, n2 + 1).g2 * std::conj(g.g3);
            }
            if (n1 >= 1) {
                rho.rho12 += g.g1 * std::conj(lat.at(n1 - 1, n2).g2);
                if (n2 >= 1) {
                    rho.rho13 += g.g1 * std::conj(lat.at(n1 - 1, n2 - 1).g3);
                }
            }
        }
    }
    return rho;
}

double population_inversion(const ReducedDensityMatrix& rho) {
    return rho.rho11 - rho.rho33;
}

double concurrence_pair_sum(const ReducedDensityMatrix& rho) {
    const double pairs = 2.0 * (rho.rho11 * rho.rho22 - std::norm(rho.rho12)) +
                         2.0 * (rho.rho11 * rho.rho33 - std::norm(rho.rho13)) +
                         2.0 * (rho.rho22 * rho.rho33 - std::norm(rho.rho23));
    return std::sqrt(2.0 * std::max(0.0, pairs));
}

double concurrence(const ReducedDensityMatrix& rho) {
    const double n = rho.trace();
    const double tr2 = rho.rho11 * rho.rho11 + rho.rho22 * rho.rho22 + rho.rho33 * rho.rho33 +
                       2.0 * (std::norm(rho.rho12) + std::norm(rho.rho13) + std::norm(rho.rho23));
    double radicand = 2.0 * (n * n - tr2);
    if (radicand < 0.0) {
        if (radicand < -1e-12) {
            throw std::runtime_error("concurrence: radicand " + std::to_string(radicand) +
                                     " below rounding tolerance");
        }
        radicand = 0.0;
    }
    const double c = std::sqrt(radicand);
    const double c_pairs = concurrence_pair_sum(rho);
    // The identity check runs on both C and C^2: near C = 0 the square root
    // amplifies rounding-scale radicand differences, so agreement of the
    // radicands is the meaningful statement there.
    if (std::abs(c - c_pairs) > 1e-10 && std::abs(c * c - c_pairs * c_pairs) > 1e-13) {
        char msg[128];
        std::snprintf(msg, sizeof(msg),
                      "concurrence: trace form %.17g and pair-sum form %.17g disagree", c, c_pairs);
        throw std::runtime_error(msg);
    }
    return c;
}

double total_norm(const AmplitudeLattice& lat) {
    double s = 0.0;
    for (int n1 = 0; n1 <= lat.nmax1; ++n1) {
        for (int n2 = 0; n2 <= lat.nmax2; ++n2) {
            const AmplitudeTriple& g = lat.at(n1, n2);
            s += std::norm(g.g1) + std::norm(g.g2) + std::norm(g.g3);
        }
    }
    return s;
}

double min_eigenvalue(const ReducedDensityMatrix& rho) {
    // Cyclic complex Jacobi on the 3x3 Hermitian matrix. Backward stable, so
    // near-degenerate eigenvalues keep absolute accuracy ~eps*||rho|| (the
    // characteristic-polynomial route loses half the digits at double roots,
    // which a pure state has at zero).
    cplx a[3][3] = {{cplx{rho.rho11, 0.0}, rho.rho12, rho.rho13},
                    {std::conj(rho.rho12), cplx{rho.rho22, 0.0}, rho.rho23},
                    {std::conj(rho.rho13), std::conj(rho.rho23), cplx{rho.rho33, 0.0}}};
    const double scale = std::abs(rho.rho11) + std::abs(rho.rho22) + std::abs(rho.rho33) +
                         2.0 * (std::abs(rho.rho12) + std::abs(rho.rho13) + std::abs(rho.rho23));
    for (int sweep = 0; sweep < 30; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < 2; ++p) {
            for (int q = p + 1; q < 3; ++q) off += std::abs(a[p][q]);
        }
        if (off <= 1e-300 || off < 1e-17 * (1.0 + scale)) break;
        for (int p = 0; p < 2; ++p) {
            for (int q = p + 1; q < 3; ++q) {
                const double mag = std::abs(a[p][q]);
                if (mag == 0.0) continue;
                const cplx phase = a[p][q] / mag;
                const double tau = (a[q][q].real() - a[p][p].real()) / (2.0 * mag);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double co = 1.0 / std::sqrt(1.0 + t * t);
                const double si = t * co;
                // columns: v_p' = co*v_p - si*conj(phase)*v_q ; v_q' = si*phase*v_p + co*v_q
                for (int r = 0; r < 3; ++r) {
                    const cplx xp = a[r][p];
                    const cplx xq = a[r][q];
                    a[r][p] = co * xp - si * std::conj(phase) * xq;
                    a[r][q] = si * phase * xp + co * xq;
                }
                for (int r = 0; r < 3; ++r) {
                    const cplx xp = a[p][r];
                    const cplx xq = a[q][r];
                    a[p][r] = co * xp - si * phase * xq;
                    a[q][r] = si * std::conj(phase) * xp + co * xq;
                }
                a[p][q] = cplx{0.0, 0.0};
                a[q][p] = cplx{0.0, 0.0};
            }
        }
    }
    return std::min({a[0][0].real(), a[1][1].real(), a[2][2].real()});
}

} // namespace cascade
