#include "cascade/params.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "cascade/coherent.hpp"

namespace cascade {

int default_truncation(double nbar) {
    return static_cast<int>(std::ceil(nbar + 12.0 * std::sqrt(std::max(nbar, 1.0))));
}

int ModelParams::resolved_nmax1() const { return nmax1 > 0 ? nmax1 : default_truncation(nbar1); }
int ModelParams::resolved_nmax2() const { return nmax2 > 0 ? nmax2 : default_truncation(nbar2); }

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw std::invalid_argument(msg);
}

void check_tail(double nbar, int nmax, const char* which) {
    const double tail = coherent_weight_tail(std::sqrt(nbar), nmax);
    if (tail >= 1e-10) {
        throw std::invalid_argument(std::string(which) + " too small for nbar: truncated weight tail " +
                                    std::to_string(tail) + " exceeds 1e-10");
    }
}

} // namespace

void ModelParams::validate() const {
    require(std::isfinite(lambda1) && lambda1 > 0.0, "lambda1 must be positive");
    require(std::isfinite(lambda2) && lambda2 > 0.0, "lambda2 must be positive");
    require(std::isfinite(mu), "mu must be finite");
    require(std::isfinite(Delta1) && std::isfinite(Delta2), "Delta1/Delta2 must be finite");
    require(std::isfinite(chi1) && chi1 >= 0.0, "chi1 must be >= 0");
    require(std::isfinite(chi2) && chi2 >= 0.0, "chi2 must be >= 0");
    require(std::isfinite(gamma1) && gamma1 >= 0.0, "gamma1 must be >= 0");
    require(std::isfinite(gamma2) && gamma2 >= 0.0, "gamma2 must be >= 0");
    require(std::isfinite(nbar1) && nbar1 >= 0.0, "nbar1 must be >= 0");
    require(std::isfinite(nbar2) && nbar2 >= 0.0, "nbar2 must be >= 0");
    require(nmax1 == -1 || nmax1 >= 1, "nmax1 must be >= 1");
    require(nmax2 == -1 || nmax2 >= 1, "nmax2 must be >= 1");
    require(std::isfinite(tau_max) && tau_max >= 0.0, "tau_max must be >= 0");
    require(std::isfinite(tau_step) && tau_step > 0.0, "tau_step must be positive");
    check_tail(nbar1, resolved_nmax1(), "nmax1");
    check_tail(nbar2, resolved_nmax2(), "nmax2");
}

TimeGrid make_grid(const ModelParams& p) {
    TimeGrid g;
    g.tau_step = p.tau_step;
    g.time_scale = p.lambda1;
    g.n = 1 + static_cast<int>(std::floor(p.tau_max / p.tau_step + 1e-9));
    return g;
}

} // namespace cascade
