#pragma once

// Monte Carlo photon-stream engine: two-state ion plus homogeneous
// background, one state transition per window, timestamps floored to the
// counter grid. Trials use independent Philox substreams, so ensembles are
// deterministic for a (config, n_trials, base_seed) triple at any thread
// count.

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "ionread/policy.hpp"
#include "ionread/rates.hpp"
#include "ionread/rng.hpp"
#include "ionread/stats.hpp"

namespace ionread::mcsim {

enum class IonState { bright, dark };

struct TrialConfig {
    RateSet rates;
    IonState initial_state = IonState::bright;
    double window = 0.0;              // s
    double timing_resolution = 5e-9;  // s
    stats::PrepErrors prep;

    void validate() const;
};

struct PhotonTrace {
    IonState prepared_state = IonState::bright;  // intended state, before prep leakage
    std::vector<double> timestamps;              // quantized, sorted, within [0, window)
    std::optional<double> transition_time;
    std::uint64_t stream_id = 0;
    std::uint64_t trial_index = 0;
};

struct McEstimate {
    double value = 0.0;
    double std_error = 0.0;
    std::uint64_t n_trials = 0;
};

struct McResult {
    McEstimate dark_error;
    McEstimate bright_error;
    McEstimate avg_error;
    McEstimate avg_time;
};

PhotonTrace simulate_trace(const TrialConfig& config, PhiloxStream& rng);

// Runs n_trials independent trials; trial i uses substream (base_seed, i).
// Order of the returned vector is by trial index regardless of parallelism.
// Thread count is capped by the IONREAD_THREADS environment variable.
std::vector<PhotonTrace> run_ensemble(const TrialConfig& config, std::uint64_t n_trials,
                                      std::uint64_t base_seed);

// Streaming variant: visits traces in trial order without retaining them.
void for_each_trace(const TrialConfig& config, std::uint64_t n_trials,
                    std::uint64_t base_seed,
                    const std::function<void(const PhotonTrace&)>& visit);

// Binomial error/time estimates for a policy over a trace ensemble. Both
// prepared states must be represented for the averaged quantities.
McResult estimate_error_and_time(const std::vector<PhotonTrace>& traces,
                                 const Policy& policy);

}  // namespace ionread::mcsim
