// Scalar reference kernels. These define the semantics the SIMD variants
// are tested against.
#include "cascade/kernels/kernels.hpp"

#include <cmath>

namespace cascade::kernels {

namespace {

void amplitude_series_scalar(const BlockWave& w, double t0, double dt, int n, const SeriesOut& out) {
    double* const re[3] = {out.re1, out.re2, out.re3};
    double* const im[3] = {out.im1, out.im2, out.im3};
    for (int k = 0; k < n; ++k) {
        const double t = t0 + k * dt;
        double e_re[3], e_im[3];
        for (int j = 0; j < 3; ++j) {
            const double mag = std::exp(-w.xi_im[j] * t);
            const double ang = w.xi_re[j] * t;
            e_re[j] = mag * std::cos(ang);
            e_im[j] = mag * std::sin(ang);
        }
        for (int r = 0; r < 3; ++r) {
            double s_re = 0.0, s_im = 0.0;
            for (int j = 0; j < 3; ++j) {
                s_re += w.c_re[r][j] * e_re[j] - w.c_im[r][j] * e_im[j];
                s_im += w.c_re[r][j] * e_im[j] + w.c_im[r][j] * e_re[j];
            }
            if (w.phase[r] != 0.0) {
                const double pc = std::cos(w.phase[r] * t);
                const double ps = std::sin(w.phase[r] * t);
                const double rr = s_re * pc - s_im * ps;
                const double ri = s_re * ps + s_im * pc;
                s_re = rr;
                s_im = ri;
            }
            re[r][k] = s_re;
            im[r][k] = s_im;
        }
    }
}

void accumulate_abs2_scalar(const double* re, const double* im, int n, double* acc) {
    for (int k = 0; k < n; ++k) {
        acc[k] += re[k] * re[k] + im[k] * im[k];
    }
}

void accumulate_conj_product_scalar(const double* a_re, const double* a_im,
                                    const double* b_re, const double* b_im,
                                    int n, double* acc_re, double* acc_im) {
    for (int k = 0; k < n; ++k) {
        acc_re[k] += a_re[k] * b_re[k] + a_im[k] * b_im[k];
        acc_im[k] += a_im[k] * b_re[k] - a_re[k] * b_im[k];
    }
}

} // namespace

const Dispatch& scalar() {
    static const Dispatch d{"scalar", &amplitude_series_scalar, &accumulate_abs2_scalar,
                            &accumulate_conj_product_scalar};
    return d;
}

} // namespace cascade::kernels
