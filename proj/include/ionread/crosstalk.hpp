#pragma once

// Ramsey coherence fitting, shuttle timing, and the per-measurement
// crosstalk budget for a data qubit parked near a detected ancilla.

#include <cstdint>
#include <vector>

#include "ionread/fit.hpp"
#include "ionread/rates.hpp"

namespace ionread::crosstalk {

struct VisibilityPoint {
    double exposure = 0.0;          // tau, s
    double visibility = 0.0;        // in [0, 1]
    double visibility_error = 0.0;

    void validate() const;
};

// Gaussian decay A * exp(-(tau/alpha)^2)
struct CoherenceFit {
    double amplitude = 0.0;
    double amplitude_error = 0.0;
    double coherence_time = 0.0;  // alpha, s
    double coherence_time_error = 0.0;
    double residual_norm = 0.0;
    bool converged = false;
};

struct ShuttlePlan {
    double distance = 0.0;       // m
    double step_size = 5e-6;     // m
    double step_period = 2.32e-6;  // s
    std::uint64_t n_steps = 0;
    double total_time = 0.0;     // s
};

struct CrosstalkBudget {
    double per_measurement = 0.0;         // linear budget t_avg / alpha
    std::uint64_t n_star = 0;             // floor(alpha / t_avg)
    double per_measurement_gaussian = 0.0;  // Gaussian-decay alternative, see below
};

CoherenceFit fit_coherence(const std::vector<VisibilityPoint>& points);

ShuttlePlan shuttle_time(double distance, double step_size = 5e-6,
                         double step_period = 2.32e-6);

// Linear exposure budget plus the Gaussian-decay alternative: the average
// per-measurement visibility loss over the first n_star measurements,
// 1 - exp(-(n t_avg / alpha)^2) evaluated incrementally.
CrosstalkBudget measurement_crosstalk(double coherence_time, double avg_detect_time);

// Probability that a photon scattered by the ancilla is absorbed by the
// data qubit: [sigma / (4 pi d^2)] R_o t with sigma = 3 lambda^2 / (2 pi).
double absorption_crosstalk(double distance, double scatter_rate, double exposure,
                            double wavelength);

}  // namespace ionread::crosstalk
