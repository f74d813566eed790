#include <doctest.h>

#include <cmath>
#include <cstring>
#include <random>
#include <vector>

#include "cascade/kernels/kernels.hpp"

using namespace cascade::kernels;

namespace {

BlockWave random_wave(std::mt19937_64& rng, bool damped) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    BlockWave w{};
    for (int j = 0; j < 3; ++j) {
        w.xi_re[j] = 120.0 * u(rng);
        w.xi_im[j] = damped ? 0.03 * std::abs(u(rng)) : 0.0;
        for (int r = 0; r < 3; ++r) {
            w.c_re[r][j] = u(rng);
            w.c_im[r][j] = u(rng);
        }
    }
    w.phase[0] = 0.0;
    w.phase[1] = 35.0 * u(rng);
    w.phase[2] = 35.0 * u(rng);
    return w;
}

struct Buffers {
    std::vector<double> re1, im1, re2, im2, re3, im3;
    explicit Buffers(int n)
        : re1(n), im1(n), re2(n), im2(n), re3(n), im3(n) {}
    SeriesOut view() {
        return {re1.data(), im1.data(), re2.data(), im2.data(), re3.data(), im3.data()};
    }
};

} // namespace

TEST_SUITE("kernels") {

TEST_CASE("dispatch: scalar always present, avx2 selectable when supported") {
    CHECK(std::strcmp(scalar().name, "scalar") == 0);
    CHECK(select("scalar"));
    CHECK(std::strcmp(active().name, "scalar") == 0);
    if (avx2() != nullptr) {
        CHECK(select("avx2"));
        CHECK(std::strcmp(active().name, "avx2") == 0);
    } else {
        CHECK_FALSE(select("avx2"));
    }
    CHECK(select("auto"));
    CHECK_FALSE(select("sse9"));
}

TEST_CASE("avx2 vector sin/cos/exp track libm") {
    if (avx2() == nullptr) return;
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double worst_trig = 0.0;
    double worst_exp = 0.0;
    for (int trial = 0; trial < 20000; ++trial) {
        double x[4], s[4], c[4], e[4];
        const double mag = std::pow(10.0, 6.0 * std::abs(u(rng)) - 1.0); // up to 1e5
        for (double& v : x) v = mag * u(rng);
        avx2_sincos4(x, s, c);
        for (int i = 0; i < 4; ++i) {
            worst_trig = std::max(worst_trig, std::abs(s[i] - std::sin(x[i])));
            worst_trig = std::max(worst_trig, std::abs(c[i] - std::cos(x[i])));
        }
        for (double& v : x) v = 3.0 * u(rng); // the series kernel only sees small decays
        avx2_exp4(x, e);
        for (int i = 0; i < 4; ++i) {
            worst_exp = std::max(worst_exp, std::abs(e[i] - std::exp(x[i])) / std::exp(x[i]));
        }
    }
    CHECK(worst_trig < 4e-15);
    CHECK(worst_exp < 4e-15);
}

TEST_CASE("amplitude series: scalar vs avx2 within tolerance") {
    if (avx2() == nullptr) return;
    std::mt19937_64 rng(202);
    const int n = 1003; // odd: exercises the tail path
    Buffers a(n), b(n);
    for (int trial = 0; trial < 40; ++trial) {
        const BlockWave w = random_wave(rng, trial % 2 == 0);
        const double dt = 0.01;
        scalar().amplitude_series(w, 0.0, dt, n, a.view());
        avx2()->amplitude_series(w, 0.0, dt, n, b.view());
        double worst = 0.0;
        for (int k = 0; k < n; ++k) {
            worst = std::max(worst, std::abs(a.re1[k] - b.re1[k]));
            worst = std::max(worst, std::abs(a.im1[k] - b.im1[k]));
            worst = std::max(worst, std::abs(a.re2[k] - b.re2[k]));
            worst = std::max(worst, std::abs(a.im2[k] - b.im2[k]));
            worst = std::max(worst, std::abs(a.re3[k] - b.re3[k]));
            worst = std::max(worst, std::abs(a.im3[k] - b.im3[k]));
        }
        CHECK(worst < 1e-12);
        // tail samples go through the scalar arithmetic: bit-identical
        for (int k = n & ~3; k < n; ++k) {
            CHECK(a.re1[k] == b.re1[k]);
            CHECK(a.im3[k] == b.im3[k]);
        }
    }
}

TEST_CASE("accumulation kernels are bit-identical across variants") {
    if (avx2() == nullptr) return;
    std::mt19937_64 rng(303);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const int n = 517;
    std::vector<double> are(n), aim(n), bre(n), bim(n);
    for (int trial = 0; trial < 50; ++trial) {
        for (int k = 0; k < n; ++k) {
            are[k] = u(rng); aim[k] = u(rng); bre[k] = u(rng); bim[k] = u(rng);
        }
        std::vector<double> acc_s(n, 0.125), acc_v(n, 0.125);
        scalar().accumulate_abs2(are.data(), aim.data(), n, acc_s.data());
        avx2()->accumulate_abs2(are.data(), aim.data(), n, acc_v.data());
        CHECK(std::memcmp(acc_s.data(), acc_v.data(), n * sizeof(double)) == 0);

        std::vector<double> cre_s(n, 0.0), cim_s(n, 0.0), cre_v(n, 0.0), cim_v(n, 0.0);
        scalar().accumulate_conj_product(are.data(), aim.data(), bre.data(), bim.data(), n,
                                         cre_s.data(), cim_s.data());
        avx2()->accumulate_conj_product(are.data(), aim.data(), bre.data(), bim.data(), n,
                                        cre_v.data(), cim_v.data());
        CHECK(std::memcmp(cre_s.data(), cre_v.data(), n * sizeof(double)) == 0);
        CHECK(std::memcmp(cim_s.data(), cim_v.data(), n * sizeof(double)) == 0);
    }
}

TEST_CASE("accumulate semantics") {
    // abs2: acc[k] += |z_k|^2 ; conj product: acc[k] += a_k * conj(b_k)
    const double are[2] = {3.0, 0.0};
    const double aim[2] = {4.0, 1.0};
    const double bre[2] = {1.0, 2.0};
    const double bim[2] = {-2.0, 0.0};
    double acc[2] = {1.0, 0.0};
    scalar().accumulate_abs2(are, aim, 2, acc);
    CHECK(acc[0] == 26.0); // 1 + 9 + 16
    CHECK(acc[1] == 1.0);

    double cre[2] = {0.0, 0.0};
    double cim[2] = {0.0, 0.0};
    scalar().accumulate_conj_product(are, aim, bre, bim, 2, cre, cim);
    // (3+4i)(1+2i) = -5 + 10i ; (i)(2) = 2i
    CHECK(cre[0] == -5.0);
    CHECK(cim[0] == 10.0);
    CHECK(cre[1] == 0.0);
    CHECK(cim[1] == 2.0);
}

} // TEST_SUITE
