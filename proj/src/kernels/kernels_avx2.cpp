// AVX2 kernel variants. The vector sin/cos/exp below use the classic
// fdlibm reduction + minimax kernels; absolute error stays below ~1e-15
// for |x| up to ~1e6, which the equivalence tests pin against libm.
#include "cascade/kernels/kernels.hpp"

#if defined(__x86_64__) || defined(__i386__)

#include <immintrin.h>

#include <cmath>

namespace cascade::kernels {

namespace {

// --------------------------- vector math ------------------------------------

const __m256d kSignMask = _mm256_set1_pd(-0.0);

// exp: x = k*ln2 + r, e^x = 2^k * e^r with e^r from a degree-5 rational kernel
const double kInvLn2 = 1.44269504088896338700e+00;
const double kLn2Hi = 6.93147180369123816490e-01;
const double kLn2Lo = 1.90821492927058770002e-10;
const double kExpP1 = 1.66666666666666019037e-01;
const double kExpP2 = -2.77777777770155933842e-03;
const double kExpP3 = 6.61375632143793436117e-05;
const double kExpP4 = -1.65339022054652515390e-06;
const double kExpP5 = 4.13813679705723846039e-08;

__m256d exp4(__m256d x) {
    x = _mm256_min_pd(_mm256_max_pd(x, _mm256_set1_pd(-708.0)), _mm256_set1_pd(708.0));
    const __m256d fk = _mm256_round_pd(_mm256_mul_pd(x, _mm256_set1_pd(kInvLn2)),
                                       _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    const __m256d hi = _mm256_sub_pd(x, _mm256_mul_pd(fk, _mm256_set1_pd(kLn2Hi)));
    const __m256d lo = _mm256_mul_pd(fk, _mm256_set1_pd(kLn2Lo));
    const __m256d r = _mm256_sub_pd(hi, lo);
    const __m256d t = _mm256_mul_pd(r, r);

    __m256d p = _mm256_set1_pd(kExpP5);
    p = _mm256_add_pd(_mm256_mul_pd(p, t), _mm256_set1_pd(kExpP4));
    p = _mm256_add_pd(_mm256_mul_pd(p, t), _mm256_set1_pd(kExpP3));
    p = _mm256_add_pd(_mm256_mul_pd(p, t), _mm256_set1_pd(kExpP2));
    p = _mm256_add_pd(_mm256_mul_pd(p, t), _mm256_set1_pd(kExpP1));
    const __m256d c = _mm256_sub_pd(r, _mm256_mul_pd(t, p));

    const __m256d rc = _mm256_div_pd(_mm256_mul_pd(r, c),
                                     _mm256_sub_pd(_mm256_set1_pd(2.0), c));
    const __m256d y = _mm256_sub_pd(_mm256_set1_pd(1.0), _mm256_sub_pd(_mm256_sub_pd(lo, rc), hi));

    // scale by 2^k via the exponent field
    const __m128i k32 = _mm256_cvtpd_epi32(fk);
    const __m256i k64 = _mm256_cvtepi32_epi64(k32);
    const __m256i bits = _mm256_slli_epi64(_mm256_add_epi64(k64, _mm256_set1_epi64x(1023)), 52);
    return _mm256_mul_pd(y, _mm256_castsi256_pd(bits));
}

// sin/cos: fdlibm medium-range reduction (x - j*pi/2 with a two-part pi/2)
// plus the standard polynomial kernels on |y| <= pi/4.
const double kTwoOverPi = 6.36619772367581382433e-01;
const double kPio2_1 = 1.57079632673412561417e+00;
const double kPio2_1t = 6.07710050650619224932e-11;
const double kSin1 = -1.66666666666666324348e-01;
const double kSin2 = 8.33333333332248946124e-03;
const double kSin3 = -1.98412698298579493134e-04;
const double kSin4 = 2.75573137070700676789e-06;
const double kSin5 = -2.50507602534068634195e-08;
const double kSin6 = 1.58969099521155010221e-10;
const double kCos1 = 4.16666666666666019037e-02;
const double kCos2 = -1.38888888888741095749e-03;
const double kCos3 = 2.48015872894767294178e-05;
const double kCos4 = -2.75573143513906633035e-07;
const double kCos5 = 2.08757232129817482790e-09;
const double kCos6 = -1.13596475577881948265e-11;

void sincos4(__m256d x, __m256d& s_out, __m256d& c_out) {
    const __m256d fj = _mm256_round_pd(_mm256_mul_pd(x, _mm256_set1_pd(kTwoOverPi)),
                                       _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    const __m256d r1 = _mm256_sub_pd(x, _mm256_mul_pd(fj, _mm256_set1_pd(kPio2_1)));
    const __m256d y = _mm256_sub_pd(r1, _mm256_mul_pd(fj, _mm256_set1_pd(kPio2_1t)));

    const __m256d z = _mm256_mul_pd(y, y);

    __m256d rs = _mm256_set1_pd(kSin6);
    rs = _mm256_add_pd(_mm256_mul_pd(rs, z), _mm256_set1_pd(kSin5));
    rs = _mm256_add_pd(_mm256_mul_pd(rs, z), _mm256_set1_pd(kSin4));
    rs = _mm256_add_pd(_mm256_mul_pd(rs, z), _mm256_set1_pd(kSin3));
    rs = _mm256_add_pd(_mm256_mul_pd(rs, z), _mm256_set1_pd(kSin2));
    const __m256d v = _mm256_mul_pd(z, y);
    const __m256d ks = _mm256_add_pd(y, _mm256_mul_pd(v, _mm256_add_pd(_mm256_set1_pd(kSin1),
                                                                       _mm256_mul_pd(z, rs))));

    __m256d rc = _mm256_set1_pd(kCos6);
    rc = _mm256_add_pd(_mm256_mul_pd(rc, z), _mm256_set1_pd(kCos5));
    rc = _mm256_add_pd(_mm256_mul_pd(rc, z), _mm256_set1_pd(kCos4));
    rc = _mm256_add_pd(_mm256_mul_pd(rc, z), _mm256_set1_pd(kCos3));
    rc = _mm256_add_pd(_mm256_mul_pd(rc, z), _mm256_set1_pd(kCos2));
    rc = _mm256_add_pd(_mm256_mul_pd(rc, z), _mm256_set1_pd(kCos1));
    rc = _mm256_mul_pd(z, rc);
    const __m256d hz = _mm256_mul_pd(_mm256_set1_pd(0.5), z);
    const __m256d w = _mm256_sub_pd(_mm256_set1_pd(1.0), hz);
    const __m256d kc = _mm256_add_pd(
        w, _mm256_add_pd(_mm256_sub_pd(_mm256_sub_pd(_mm256_set1_pd(1.0), hz), w),
                         _mm256_mul_pd(z, rc)));

    // quadrant fixup: j mod 4 selects the (sin, cos) pair and signs
    const __m128i j32 = _mm256_cvtpd_epi32(fj);
    const __m256i j64 = _mm256_cvtepi32_epi64(j32);
    const __m256i one = _mm256_set1_epi64x(1);
    const __m256i two = _mm256_set1_epi64x(2);
    const __m256d swap = _mm256_castsi256_pd(
        _mm256_cmpeq_epi64(_mm256_and_si256(j64, one), one));
    const __m256d neg_s = _mm256_castsi256_pd(
        _mm256_cmpeq_epi64(_mm256_and_si256(j64, two), two));
    const __m256d neg_c = _mm256_castsi256_pd(
        _mm256_cmpeq_epi64(_mm256_and_si256(_mm256_add_epi64(j64, one), two), two));

    __m256d s = _mm256_blendv_pd(ks, kc, swap);
    __m256d c = _mm256_blendv_pd(kc, ks, swap);
    s = _mm256_xor_pd(s, _mm256_and_pd(neg_s, kSignMask));
    c = _mm256_xor_pd(c, _mm256_and_pd(neg_c, kSignMask));
    s_out = s;
    c_out = c;
}

// --------------------------- kernels ----------------------------------------

void amplitude_series_avx2(const BlockWave& w, double t0, double dt, int n, const SeriesOut& out) {
    double* const re[3] = {out.re1, out.re2, out.re3};
    double* const im[3] = {out.im1, out.im2, out.im3};
    const __m256d vt0 = _mm256_set1_pd(t0);
    const __m256d vdt = _mm256_set1_pd(dt);
    const __m256d lane = _mm256_setr_pd(0.0, 1.0, 2.0, 3.0);

    const int n4 = n & ~3;
    for (int k = 0; k < n4; k += 4) {
        const __m256d idx = _mm256_add_pd(_mm256_set1_pd(static_cast<double>(k)), lane);
        const __m256d t = _mm256_add_pd(vt0, _mm256_mul_pd(idx, vdt));

        __m256d e_re[3], e_im[3];
        for (int j = 0; j < 3; ++j) {
            const __m256d mag = exp4(_mm256_mul_pd(_mm256_set1_pd(-w.xi_im[j]), t));
            __m256d s, c;
            sincos4(_mm256_mul_pd(_mm256_set1_pd(w.xi_re[j]), t), s, c);
            e_re[j] = _mm256_mul_pd(mag, c);
            e_im[j] = _mm256_mul_pd(mag, s);
        }
        for (int r = 0; r < 3; ++r) {
            __m256d s_re = _mm256_setzero_pd();
            __m256d s_im = _mm256_setzero_pd();
            for (int j = 0; j < 3; ++j) {
                const __m256d cr = _mm256_set1_pd(w.c_re[r][j]);
                const __m256d ci = _mm256_set1_pd(w.c_im[r][j]);
                s_re = _mm256_add_pd(s_re, _mm256_sub_pd(_mm256_mul_pd(cr, e_re[j]),
                                                         _mm256_mul_pd(ci, e_im[j])));
                s_im = _mm256_add_pd(s_im, _mm256_add_pd(_mm256_mul_pd(cr, e_im[j]),
                                                         _mm256_mul_pd(ci, e_re[j])));
            }
            if (w.phase[r] != 0.0) {
                __m256d ps, pc;
                sincos4(_mm256_mul_pd(_mm256_set1_pd(w.phase[r]), t), ps, pc);
                const __m256d rr = _mm256_sub_pd(_mm256_mul_pd(s_re, pc), _mm256_mul_pd(s_im, ps));
                const __m256d ri = _mm256_add_pd(_mm256_mul_pd(s_re, ps), _mm256_mul_pd(s_im, pc));
                s_re = rr;
                s_im = ri;
            }
            _mm256_storeu_pd(re[r] + k, s_re);
            _mm256_storeu_pd(im[r] + k, s_im);
        }
    }

    // tail: same arithmetic as the scalar reference
    for (int k = n4; k < n; ++k) {
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

// The accumulation kernels keep the per-element operation order of the scalar
// reference (mul, mul, add, add; no FMA), so their results are bit-identical.
void accumulate_abs2_avx2(const double* re, const double* im, int n, double* acc) {
    const int n4 = n & ~3;
    for (int k = 0; k < n4; k += 4) {
        const __m256d r = _mm256_loadu_pd(re + k);
        const __m256d i = _mm256_loadu_pd(im + k);
        const __m256d a = _mm256_loadu_pd(acc + k);
        const __m256d p = _mm256_add_pd(_mm256_mul_pd(r, r), _mm256_mul_pd(i, i));
        _mm256_storeu_pd(acc + k, _mm256_add_pd(a, p));
    }
    for (int k = n4; k < n; ++k) {
        acc[k] += re[k] * re[k] + im[k] * im[k];
    }
}

void accumulate_conj_product_avx2(const double* a_re, const double* a_im,
                                  const double* b_re, const double* b_im,
                                  int n, double* acc_re, double* acc_im) {
    const int n4 = n & ~3;
    for (int k = 0; k < n4; k += 4) {
        const __m256d ar = _mm256_loadu_pd(a_re + k);
        const __m256d ai = _mm256_loadu_pd(a_im + k);
        const __m256d br = _mm256_loadu_pd(b_re + k);
        const __m256d bi = _mm256_loadu_pd(b_im + k);
        const __m256d pr = _mm256_add_pd(_mm256_mul_pd(ar, br), _mm256_mul_pd(ai, bi));
        const __m256d pi = _mm256_sub_pd(_mm256_mul_pd(ai, br), _mm256_mul_pd(ar, bi));
        _mm256_storeu_pd(acc_re + k, _mm256_add_pd(_mm256_loadu_pd(acc_re + k), pr));
        _mm256_storeu_pd(acc_im + k, _mm256_add_pd(_mm256_loadu_pd(acc_im + k), pi));
    }
    for (int k = n4; k < n; ++k) {
        acc_re[k] += a_re[k] * b_re[k] + a_im[k] * b_im[k];
        acc_im[k] += a_im[k] * b_re[k] - a_re[k] * b_im[k];
    }
}

} // namespace

const Dispatch* avx2() {
    static const bool available = __builtin_cpu_supports("avx2");
    static const Dispatch d{"avx2", &amplitude_series_avx2, &accumulate_abs2_avx2,
                            &accumulate_conj_product_avx2};
    return available ? &d : nullptr;
}

void avx2_sincos4(const double* x, double* s, double* c) {
    __m256d vs, vc;
    sincos4(_mm256_loadu_pd(x), vs, vc);
    _mm256_storeu_pd(s, vs);
    _mm256_storeu_pd(c, vc);
}

void avx2_exp4(const double* x, double* e) {
    _mm256_storeu_pd(e, exp4(_mm256_loadu_pd(x)));
}

} // namespace cascade::kernels

#else // non-x86: scalar only

namespace cascade::kernels {
const Dispatch* avx2() { return nullptr; }
void avx2_sincos4(const double*, double*, double*) {}
void avx2_exp4(const double*, double*) {}
} // namespace cascade::kernels

#endif
