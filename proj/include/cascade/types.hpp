// types.hpp — shared domain types for the cascade three-level atom / two-mode field model
#pragma once

#include <complex>
#include <vector>

namespace cascade {

using cplx = std::complex<double>;

inline constexpr cplx I{0.0, 1.0};

// Photon occupation labels of one invariant block family
//   |1, n1, n2>,  |2, n1+1, n2>,  |3, n1+1, n2+1>
struct BlockIndex {
    int n1 = 0;
    int n2 = 0;
};

// The three complex probability amplitudes of one block at one time
struct AmplitudeTriple {
    cplx g1{};
    cplx g2{};
    cplx g3{};
};

// Per-block amplitude time series, stored as separate real/imag arrays
// (layout shared with the SIMD kernels).
struct BlockSeries {
    std::vector<double> re1, im1;
    std::vector<double> re2, im2;
    std::vector<double> re3, im3;

    void assign_zero(int n) {
        re1.assign(n, 0.0); im1.assign(n, 0.0);
        re2.assign(n, 0.0); im2.assign(n, 0.0);
        re3.assign(n, 0.0); im3.assign(n, 0.0);
    }
    void resize(int n) {
        re1.resize(n); im1.resize(n);
        re2.resize(n); im2.resize(n);
        re3.resize(n); im3.resize(n);
    }
    bool empty() const { return re1.empty(); }
    int size() const { return static_cast<int>(re1.size()); }

    AmplitudeTriple at(int k) const {
        return {cplx{re1[k], im1[k]}, cplx{re2[k], im2[k]}, cplx{re3[k], im3[k]}};
    }
    void set(int k, const AmplitudeTriple& a) {
        re1[k] = a.g1.real(); im1[k] = a.g1.imag();
        re2[k] = a.g2.real(); im2[k] = a.g2.imag();
        re3[k] = a.g3.real(); im3[k] = a.g3.imag();
    }
};

} // namespace cascade
