#pragma once

// Applies discrimination policies to photon traces and evaluates them
// against the analytic or Monte Carlo backend.

#include <cstdint>
#include <variant>

#include "ionread/mcsim.hpp"
#include "ionread/policy.hpp"
#include "ionread/stats.hpp"

namespace ionread::discriminate {

struct Outcome {
    mcsim::IonState decision = mcsim::IonState::dark;
    double stop_time = 0.0;
};

struct AnalyticBackend {};

struct MonteCarloBackend {
    std::uint64_t n_trials = 100000;
    std::uint64_t seed = 0;
};

using Backend = std::variant<AnalyticBackend, MonteCarloBackend>;

struct UnsupportedConfiguration : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Outcome classify(const mcsim::PhotonTrace& trace, double trace_window,
                 const Policy& policy);

// Analytic backend requires threshold 0 and delegates to stats; the Monte
// Carlo backend simulates both prepared states (half the trials each).
stats::ErrorPoint evaluate(const Policy& policy, const RateSet& rates,
                           const stats::PrepErrors& prep, const Backend& backend);

}  // namespace ionread::discriminate
