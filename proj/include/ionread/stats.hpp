#pragma once

// Analytic detection statistics: the two-rate mixture photon distribution,
// closed-form zero-photon probabilities, error curves under the zero-photon
// discriminator, and first-photon stopping-time statistics.

#include <cstdint>
#include <vector>

#include "ionread/quadrature.hpp"
#include "ionread/rates.hpp"

namespace ionread::stats {

// Photon-count distribution for a process that starts at collection rate r1,
// jumps once at rate rt to collection rate r2, observed for time t.
struct MixtureSpec {
    double r1 = 0.0;  // counts/s before the transition
    double r2 = 0.0;  // counts/s after the transition
    double rt = 0.0;  // transition rate, 1/s
    double t = 0.0;   // s

    void validate() const;
};

struct PrepErrors {
    double p_prep_dark = 1e-6;    // imperfect pumping to |0>
    double p_prep_bright = 2e-4;  // pi/2 rotation infidelity to |1>

    void validate() const;
};

struct ErrorPoint {
    double window = 0.0;       // tau_d, s
    double dark_error = 0.0;
    double bright_error = 0.0;
    double avg_error = 0.0;
    double avg_time = 0.0;     // s
};

// e^-mean mean^n / n!, evaluated in log space.
double poisson_pmf(std::int64_t n, double mean);

// P(n; t, r1, r2, rt) by quadrature, including the no-transition
// survival term e^(-rt t) P_p(n; r1 t).
double mixture_pmf(std::int64_t n, const MixtureSpec& spec,
                   const QuadratureOptions& opts = {});

// Zero-photon probability for a dark-prepared ion (closed form).
double p_zero_dark(double t, const RateSet& rates);

// Zero-photon probability for a bright-prepared ion (closed form).
double p_zero_bright(double t, const RateSet& rates);

// Per-window errors of the zero-photon discriminator with preparation
// leakage mixed in. `windows` must be sorted ascending.
std::vector<ErrorPoint> error_curve(const RateSet& rates, const PrepErrors& prep,
                                    const std::vector<double>& windows,
                                    double prior_bright = 0.5);

// Mean stopping time of the first-photon policy, prior-weighted over the
// prepared state. E[T | state] = integral of the zero-photon survival.
double avg_stop_time(const RateSet& rates, double window, double prior_bright = 0.5);

struct WindowError {
    double window = 0.0;
    double avg_error = 0.0;
};

// Root-finds the window whose average stop time equals the target and
// returns it with the prior-weighted average error at that window.
WindowError fidelity_at_avg_time(const RateSet& rates, const PrepErrors& prep,
                                 double target_avg_time, double prior_bright = 0.5,
                                 double window_hi = 1.0);

// Minimum avg_error over windows (golden-section over log window), used for
// the zero-background fidelity limit.
WindowError minimize_avg_error(const RateSet& rates, const PrepErrors& prep,
                               double window_lo, double window_hi,
                               double prior_bright = 0.5);

}  // namespace ionread::stats
