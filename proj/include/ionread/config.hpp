#pragma once

// Run configuration: a key = value text format with mandatory unit
// suffixes on dimensioned quantities. Unknown keys are rejected.

#include <cstdint>
#include <string>
#include <vector>

#include "ionread/policy.hpp"
#include "ionread/rates.hpp"
#include "ionread/stats.hpp"

namespace ionread::config {

struct SchemaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class RatesMode { measured, formula };

struct RunConfig {
    AtomicConstants constants;

    RatesMode rates_mode = RatesMode::measured;
    // measured-mode inputs (the experiment's headline numbers by default)
    double detected_bright = 472e3;  // counts/s
    double r_d = 341.0;              // 1/s
    double r_b = 16.4;               // 1/s
    double r_bg = 4.2;               // counts/s
    double eps_sys = 0.04356;
    // formula-mode inputs
    double beam_intensity = 56.2 * units::mW_per_cm2;  // W/m^2
    double beam_detuning = 0.0;                        // rad/s

    stats::PrepErrors prep;
    Policy policy{PolicyKind::first_photon_stop, 20e-6, 0};
    double prior_bright = 0.5;
    double timing_resolution = 5e-9;

    // log-spaced window grid for curves
    double window_min = 1e-6;
    double window_max = 500e-6;
    int window_points = 50;

    std::uint64_t mc_trials = 100000;
    std::uint64_t mc_seed = 1;

    RateSet rates() const;
    std::vector<double> window_grid() const;
};

RunConfig parse(const std::string& text);
RunConfig load(const std::string& path);

}  // namespace ionread::config
