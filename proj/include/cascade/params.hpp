// params.hpp — physical/numerical model inputs, validation, truncation rule, time grid
#pragma once

#include <string>

#include "cascade/types.hpp"

namespace cascade {

// All inputs for one simulation run. Rates are in units of inverse time;
// the detunings Delta1/Delta2 are taken directly as inputs. Scaled time
// tau = lambda*t uses lambda1 as the reference rate.
struct ModelParams {
    double lambda1 = 1.0;   // |1>-|2> coupling strength (sets the time scale)
    double lambda2 = 1.0;   // |2>-|3> coupling strength
    double mu = 0.0;        // coupling-modulation frequency, f(t) = lambda*cos(mu*t)
    double Delta1 = 0.0;    // detuning of mode 1
    double Delta2 = 0.0;    // detuning of mode 2
    double chi1 = 0.0;      // Kerr strength, mode 1 (>= 0)
    double chi2 = 0.0;      // Kerr strength, mode 2 (>= 0)
    double gamma1 = 0.0;    // photon-assisted phase damping rate, mode 1 (>= 0)
    double gamma2 = 0.0;    // photon-assisted phase damping rate, mode 2 (>= 0)
    double nbar1 = 10.0;    // initial mean photon number, mode 1 (>= 0)
    double nbar2 = 10.0;    // initial mean photon number, mode 2 (>= 0)
    int nmax1 = -1;         // Fock truncation, mode 1; -1 = derive from nbar1
    int nmax2 = -1;         // Fock truncation, mode 2; -1 = derive from nbar2
    double tau_max = 50.0;  // end of scaled-time grid
    double tau_step = 0.01; // scaled-time grid spacing (> 0)

    int resolved_nmax1() const;
    int resolved_nmax2() const;

    // Throws std::invalid_argument naming the offending field.
    void validate() const;
};

// Default truncation: Poisson weight tail below 1e-10 up to nbar ~ 25.
int default_truncation(double nbar);

// Uniform scaled-time grid; unscaled t = tau / time_scale.
struct TimeGrid {
    double tau_step = 0.01;
    double time_scale = 1.0;
    int n = 1; // number of samples, including tau = 0

    double tau(int k) const { return k * tau_step; }
    double t(int k) const { return k * tau_step / time_scale; }
};

TimeGrid make_grid(const ModelParams& p);

} // namespace cascade
