#include "cascade/cubic.hpp"

#include <algorithm>
#include <cmath>

namespace cascade {

namespace {

constexpr double kDegenerateTol = 1e-6;

void sort_and_flag(CubicRoots& r) {
    std::sort(r.xi.begin(), r.xi.end(), [](const cplx& a, const cplx& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    double max_mag = 0.0;
    for (const auto& x : r.xi) max_mag = std::max(max_mag, std::abs(x));
    double min_gap = std::abs(r.xi[1] - r.xi[0]);
    min_gap = std::min(min_gap, std::abs(r.xi[2] - r.xi[1]));
    min_gap = std::min(min_gap, std::abs(r.xi[2] - r.xi[0]));
    r.degenerate = min_gap < kDegenerateTol * (1.0 + max_mag);
}

double polish_real(double x, double h1, double h2, double h3) {
    double best = x;
    double best_f = std::abs(((x + h1) * x + h2) * x + h3);
    for (int it = 0; it < 5; ++it) {
        const double f = ((x + h1) * x + h2) * x + h3;
        const double fp = (3.0 * x + 2.0 * h1) * x + h2;
        if (fp == 0.0) break;
        x -= f / fp;
        const double fx = std::abs(((x + h1) * x + h2) * x + h3);
        if (fx < best_f) { best_f = fx; best = x; }
        if (fx == 0.0) break;
    }
    return best;
}

cplx polish_complex(cplx x, cplx h1, cplx h2, cplx h3) {
    cplx best = x;
    double best_f = std::abs(((x + h1) * x + h2) * x + h3);
    for (int it = 0; it < 5; ++it) {
        const cplx f = ((x + h1) * x + h2) * x + h3;
        const cplx fp = (3.0 * x + 2.0 * h1) * x + h2;
        if (std::abs(fp) == 0.0) break;
        x -= f / fp;
        const double fx = std::abs(((x + h1) * x + h2) * x + h3);
        if (fx < best_f) { best_f = fx; best = x; }
        if (fx == 0.0) break;
    }
    return best;
}

} // namespace

std::optional<CubicRoots> solve_cubic_real(double h1, double h2, double h3) {
    const double p = h1 * h1 - 3.0 * h2;
    const double scale = 1.0 + std::max({std::abs(h1), std::abs(h2), std::abs(h3)});
    if (p < -1e-12 * scale * scale) return std::nullopt;

    CubicRoots r;
    if (p <= 0.0) {
        // h1^2 = 3h2 within rounding: triple root (or numerically indistinct)
        const double x = polish_real(-h1 / 3.0, h1, h2, h3);
        r.xi = {cplx{x, 0.0}, cplx{x, 0.0}, cplx{x, 0.0}};
        sort_and_flag(r);
        return r;
    }

    const double sp = std::sqrt(p);
    double arg = (9.0 * h1 * h2 - 2.0 * h1 * h1 * h1 - 27.0 * h3) / (2.0 * p * sp);
    if (arg > 1.0 + 1e-12 || arg < -1.0 - 1e-12) return std::nullopt; // complex pair
    arg = std::clamp(arg, -1.0, 1.0);
    const double phi = std::acos(arg) / 3.0;

    constexpr double two_thirds_pi = 2.0943951023931953;
    for (int m = 0; m < 3; ++m) {
        const double x = -h1 / 3.0 + (2.0 / 3.0) * sp * std::cos(phi + two_thirds_pi * m);
        r.xi[m] = cplx{polish_real(x, h1, h2, h3), 0.0};
    }
    sort_and_flag(r);
    return r;
}

CubicRoots solve_cubic_complex(cplx h1, cplx h2, cplx h3) {
    const cplx shift = h1 / 3.0;
    const cplx p = h2 - h1 * h1 / 3.0;
    const cplx q = 2.0 * h1 * h1 * h1 / 27.0 - h1 * h2 / 3.0 + h3;

    CubicRoots r;
    if (std::abs(p) == 0.0 && std::abs(q) == 0.0) {
        const cplx x = -shift;
        r.xi = {x, x, x};
        sort_and_flag(r);
        return r;
    }

    // u^3 = -q/2 +- sqrt((q/2)^2 + (p/3)^3); take the larger-magnitude branch
    const cplx half_q = 0.5 * q;
    const cplx disc = std::sqrt(half_q * half_q + (p / 3.0) * (p / 3.0) * (p / 3.0));
    cplx u3 = -half_q + disc;
    if (std::abs(-half_q - disc) > std::abs(u3)) u3 = -half_q - disc;

    cplx t0, t1, t2;
    if (std::abs(u3) == 0.0) {
        // p != 0 but u3 == 0 cannot happen analytically; guard for rounding
        t0 = t1 = t2 = cplx{0.0, 0.0};
    } else {
        const cplx u = std::exp(std::log(u3) / 3.0);
        const cplx v = -p / (3.0 * u);
        constexpr double half_sqrt3 = 0.8660254037844386;
        const cplx w1{-0.5, half_sqrt3};  // primitive cube root of unity
        const cplx w2{-0.5, -half_sqrt3};
        t0 = u + v;
        t1 = w1 * u + w2 * v;
        t2 = w2 * u + w1 * v;
    }

    r.xi = {polish_complex(t0 - shift, h1, h2, h3),
            polish_complex(t1 - shift, h1, h2, h3),
            polish_complex(t2 - shift, h1, h2, h3)};
    sort_and_flag(r);
    return r;
}

CubicRoots solve_cubic(cplx h1, cplx h2, cplx h3) {
    if (h1.imag() == 0.0 && h2.imag() == 0.0 && h3.imag() == 0.0) {
        if (auto r = solve_cubic_real(h1.real(), h2.real(), h3.real())) return *r;
    }
    return solve_cubic_complex(h1, h2, h3);
}

std::array<double, 3> vieta_residuals(const CubicRoots& r, cplx h1, cplx h2, cplx h3) {
    const cplx s1 = r.xi[0] + r.xi[1] + r.xi[2];
    const cplx s2 = r.xi[0] * r.xi[1] + r.xi[0] * r.xi[2] + r.xi[1] * r.xi[2];
    const cplx s3 = r.xi[0] * r.xi[1] * r.xi[2];
    return {std::abs(s1 + h1), std::abs(s2 - h2), std::abs(s3 + h3)};
}

} // namespace cascade
