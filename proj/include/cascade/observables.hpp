// observables.hpp — reduced atomic density matrix, population inversion,
// concurrence, norm. The partial trace over the two-mode field pairs
// amplitudes whose field labels coincide; the level-dependent photon shifts
// of the block basis make the coherence pairings cross neighbouring blocks:
//   rho12: G1(n1+1, n2)   with G2 of block (n1, n2)
//   rho13: G1(n1+1, n2+1) with G3 of block (n1, n2)
//   rho23: G2 of block (n1, n2+1) with G3 of block (n1, n2)
// Populations are shift-independent sums of |G|^2. All block sums run in
// fixed lexicographic (n1, n2) order for bit-reproducibility.
#pragma once

#include <vector>

#include "cascade/types.hpp"

namespace cascade {

// Hermitian by construction: only the upper triangle is accumulated and the
// lower triangle mirrors it.
struct ReducedDensityMatrix {
    double t = 0.0;
    double rho11 = 0.0, rho22 = 0.0, rho33 = 0.0;
    cplx rho12{}, rho13{}, rho23{};

    double trace() const { return rho11 + rho22 + rho33; }
    cplx element(int i, int j) const;
};

struct ObservableSample {
    double tau = 0.0;
    double W = 0.0;   // rho11 - rho33
    double C = 0.0;   // concurrence
    double rho11 = 0.0, rho22 = 0.0, rho33 = 0.0;
    cplx rho12{}, rho13{}, rho23{};
    double norm = 0.0; // total state norm = Tr rho
};

// All block amplitudes at one grid time, lexicographic (n1 major, n2 minor).
struct AmplitudeLattice {
    int nmax1 = 0;
    int nmax2 = 0;
    std::vector<AmplitudeTriple> a; // size (nmax1+1)*(nmax2+1)

    AmplitudeLattice() = default;
    AmplitudeLattice(int m1, int m2) : nmax1(m1), nmax2(m2), a((m1 + 1) * (m2 + 1)) {}
    AmplitudeTriple& at(int n1, int n2) { return a[n1 * (nmax2 + 1) + n2]; }
    const AmplitudeTriple& at(int n1, int n2) const { return a[n1 * (nmax2 + 1) + n2]; }
};

ReducedDensityMatrix reduced_density_matrix(const AmplitudeLattice& lattice, double t);

double population_inversion(const ReducedDensityMatrix& rho);

// sqrt(2 * max(0, (Tr rho)^2 - Tr(rho^2))). Verifies the pair-sum form
// 2*sum_{i<j}(rho_ii rho_jj - |rho_ij|^2) agrees to 1e-10 and that tiny
// negative radicands stay above -1e-12; larger violations throw (pipeline bug).
double concurrence(const ReducedDensityMatrix& rho);

// The pair-sum route on its own (identity partner of the trace form).
double concurrence_pair_sum(const ReducedDensityMatrix& rho);

double total_norm(const AmplitudeLattice& lattice);

// Smallest eigenvalue of the Hermitian 3x3 matrix (PSD gate).
double min_eigenvalue(const ReducedDensityMatrix& rho);

} // namespace cascade
