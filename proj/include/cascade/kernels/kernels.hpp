// kernels.hpp — data-parallel inner loops with scalar reference and AVX2
// variants, selected at runtime. The scalar versions are the reference
// semantics; the accumulation kernels are bit-identical across variants
// (same per-element operation order), the amplitude-series kernel agrees
// within floating-point tolerance (vector sin/cos/exp vs libm).
#pragma once

#include <string_view>

namespace cascade::kernels {

// One block's closed-form wave: three complex eigenfrequencies xi_j shared by
// all rows, a 3x3 complex coefficient matrix, and one extra real phase per row:
//   G_r(t) = e^{i*phase[r]*t} * sum_j ( c[r][j] * e^{i*xi_j*t} )
struct BlockWave {
    double xi_re[3];
    double xi_im[3];
    double c_re[3][3];
    double c_im[3][3];
    double phase[3];
};

// Destination arrays for the three rows (each length n).
struct SeriesOut {
    double* re1; double* im1;
    double* re2; double* im2;
    double* re3; double* im3;
};

using AmplitudeSeriesFn = void (*)(const BlockWave&, double t0, double dt, int n, const SeriesOut&);
// acc[k] += re[k]^2 + im[k]^2
using AccumulateAbs2Fn = void (*)(const double* re, const double* im, int n, double* acc);
// (acc_re + i*acc_im)[k] += (a * conj(b))[k]
using AccumulateConjProductFn = void (*)(const double* a_re, const double* a_im,
                                         const double* b_re, const double* b_im,
                                         int n, double* acc_re, double* acc_im);

struct Dispatch {
    const char* name;
    AmplitudeSeriesFn amplitude_series;
    AccumulateAbs2Fn accumulate_abs2;
    AccumulateConjProductFn accumulate_conj_product;
};

const Dispatch& scalar();

// null when this build/CPU has no AVX2 path
const Dispatch* avx2();

// Currently selected variant (best available unless overridden).
const Dispatch& active();

// "scalar", "avx2", or "auto"; returns false when the variant is unavailable.
bool select(std::string_view name);

// AVX2 vector-math test hooks (pass-through to the vectorized sin/cos/exp);
// only callable when avx2() != nullptr. x, s, c, e are arrays of length 4.
void avx2_sincos4(const double* x, double* s, double* c);
void avx2_exp4(const double* x, double* e);

} // namespace cascade::kernels
