#include "cascade/coherent.hpp"

#include <cmath>
#include <stdexcept>

namespace cascade {

double coherent_weight(double alpha, int n) {
    if (n < 0) throw std::invalid_argument("coherent_weight: n must be >= 0");
    if (alpha == 0.0) return n == 0 ? 1.0 : 0.0;
    const double a = std::abs(alpha);
    const double log_q = -0.5 * a * a + n * std::log(a) - 0.5 * std::lgamma(n + 1.0);
    double q = std::exp(log_q);
    if (alpha < 0.0 && (n & 1)) q = -q;
    return q;
}

std::vector<double> coherent_weight_table(double alpha, int nmax) {
    std::vector<double> q(nmax + 1);
    for (int n = 0; n <= nmax; ++n) q[n] = coherent_weight(alpha, n);
    return q;
}

double coherent_weight_tail(double alpha, int nmax) {
    double sum = 0.0;
    for (int n = nmax; n >= 0; --n) { // small terms first
        const double q = coherent_weight(alpha, n);
        sum += q * q;
    }
    return std::max(0.0, 1.0 - sum);
}

} // namespace cascade
