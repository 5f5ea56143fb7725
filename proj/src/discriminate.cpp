#include "ionread/discriminate.hpp"

#include <algorithm>

namespace ionread::discriminate {

namespace {

// keeps the bright ensemble off the dark ensemble's substreams
constexpr std::uint64_t kBrightSeedOffset = 0x9E3779B97F4A7C15ULL;

}  // namespace

Outcome classify(const mcsim::PhotonTrace& trace, double trace_window,
                 const Policy& policy) {
    policy.validate();
    if (trace_window < policy.window)
        throw DomainError("trace window is shorter than the policy window");

    const auto count = static_cast<std::int64_t>(std::count_if(
        trace.timestamps.begin(), trace.timestamps.end(),
        [&](double ts) { return ts <= policy.window; }));
    const bool bright = count > policy.threshold;

    Outcome outcome;
    outcome.decision = bright ? mcsim::IonState::bright : mcsim::IonState::dark;
    outcome.stop_time = policy.window;
    if (policy.kind == PolicyKind::first_photon_stop && !trace.timestamps.empty())
        outcome.stop_time = std::min(trace.timestamps.front(), policy.window);
    return outcome;
}

stats::ErrorPoint evaluate(const Policy& policy, const RateSet& rates,
                           const stats::PrepErrors& prep, const Backend& backend) {
    policy.validate();
    if (std::holds_alternative<AnalyticBackend>(backend)) {
        if (policy.threshold != 0)
            throw UnsupportedConfiguration(
                "analytic backend supports threshold 0 only; use the monte_carlo backend");
        auto points = stats::error_curve(rates, prep, {policy.window});
        return points.front();
    }

    const auto& mc = std::get<MonteCarloBackend>(backend);
    mcsim::TrialConfig config;
    config.rates = rates;
    config.window = policy.window;
    config.prep = prep;

    const std::uint64_t half = std::max<std::uint64_t>(1, mc.n_trials / 2);
    config.initial_state = mcsim::IonState::dark;
    auto traces = mcsim::run_ensemble(config, half, mc.seed);
    config.initial_state = mcsim::IonState::bright;
    auto bright_traces = mcsim::run_ensemble(config, half, mc.seed + kBrightSeedOffset);
    traces.insert(traces.end(), std::make_move_iterator(bright_traces.begin()),
                  std::make_move_iterator(bright_traces.end()));

    const auto result = mcsim::estimate_error_and_time(traces, policy);
    stats::ErrorPoint point;
    point.window = policy.window;
    point.dark_error = result.dark_error.value;
    point.bright_error = result.bright_error.value;
    point.avg_error = result.avg_error.value;
    point.avg_time = result.avg_time.value;
    return point;
}

}  // namespace ionread::discriminate
