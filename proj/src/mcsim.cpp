#include "ionread/mcsim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <thread>

namespace ionread::mcsim {

namespace {

unsigned thread_cap() {
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("IONREAD_THREADS")) {
        const long cap = std::atol(env);
        if (cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
    }
    return n;
}

double detected_rate(const RateSet& rates, IonState state) {
    return state == IonState::bright ? rates.detected_bright + rates.r_bg : rates.r_bg;
}

// Appends floored arrival times of a homogeneous Poisson process on
// [start, stop) to out.
void emit_photons(double rate, double start, double stop, double resolution,
                  PhiloxStream& rng, std::vector<double>& out) {
    if (rate <= 0.0) return;
    double t = start;
    for (;;) {
        t += rng.next_exponential(rate);
        if (t >= stop) break;
        out.push_back(std::floor(t / resolution) * resolution);
    }
}

struct BinomialAcc {
    std::uint64_t hits = 0;
    std::uint64_t n = 0;

    McEstimate estimate() const {
        const double p = static_cast<double>(hits) / static_cast<double>(n);
        return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(n)), n};
    }
};

}  // namespace

void TrialConfig::validate() const {
    rates.validate();
    prep.validate();
    if (window <= 0) throw DomainError("window must be positive");
    if (timing_resolution <= 0) throw DomainError("timing_resolution must be positive");
}

PhotonTrace simulate_trace(const TrialConfig& config, PhiloxStream& rng) {
    PhotonTrace trace;
    trace.prepared_state = config.initial_state;

    // preparation leakage flips the physical state before the beam turns on
    IonState state = config.initial_state;
    const double p_flip = state == IonState::dark ? config.prep.p_prep_dark
                                                  : config.prep.p_prep_bright;
    if (p_flip > 0.0 && rng.next_bernoulli(p_flip))
        state = state == IonState::dark ? IonState::bright : IonState::dark;

    const double transition_rate = state == IonState::dark ? config.rates.r_b
                                                           : config.rates.r_d;
    double t_transition = config.window;
    if (transition_rate > 0.0)
        t_transition = rng.next_exponential(transition_rate);

    const double stop1 = std::min(t_transition, config.window);
    emit_photons(detected_rate(config.rates, state), 0.0, stop1,
                 config.timing_resolution, rng, trace.timestamps);
    if (t_transition < config.window) {
        trace.transition_time = t_transition;
        const IonState flipped =
            state == IonState::dark ? IonState::bright : IonState::dark;
        emit_photons(detected_rate(config.rates, flipped), t_transition, config.window,
                     config.timing_resolution, rng, trace.timestamps);
    }
    return trace;
}

void for_each_trace(const TrialConfig& config, std::uint64_t n_trials,
                    std::uint64_t base_seed,
                    const std::function<void(const PhotonTrace&)>& visit) {
    config.validate();
    if (n_trials < 1) throw DomainError("n_trials must be at least 1");

    const unsigned n_threads = thread_cap();
    constexpr std::uint64_t kChunk = 1u << 15;

    auto simulate_range = [&](std::uint64_t begin, std::uint64_t end,
                              std::vector<PhotonTrace>& out) {
        for (std::uint64_t i = begin; i < end; ++i) {
            PhiloxStream rng(base_seed, i);
            PhotonTrace trace = simulate_trace(config, rng);
            trace.stream_id = base_seed;
            trace.trial_index = i;
            out[i - begin] = std::move(trace);
        }
    };

    for (std::uint64_t block = 0; block < n_trials; block += kChunk * n_threads) {
        std::vector<std::vector<PhotonTrace>> buffers(n_threads);
        std::vector<std::thread> workers;
        for (unsigned w = 0; w < n_threads; ++w) {
            const std::uint64_t begin = std::min(n_trials, block + w * kChunk);
            const std::uint64_t end = std::min(n_trials, begin + kChunk);
            buffers[w].resize(end - begin);
            if (begin < end)
                workers.emplace_back(simulate_range, begin, end, std::ref(buffers[w]));
        }
        for (auto& worker : workers) worker.join();
        for (const auto& buffer : buffers)
            for (const auto& trace : buffer) visit(trace);
    }
}

std::vector<PhotonTrace> run_ensemble(const TrialConfig& config, std::uint64_t n_trials,
                                      std::uint64_t base_seed) {
    std::vector<PhotonTrace> traces;
    traces.reserve(n_trials);
    for_each_trace(config, n_trials, base_seed,
                   [&](const PhotonTrace& trace) { traces.push_back(trace); });
    return traces;
}

McResult estimate_error_and_time(const std::vector<PhotonTrace>& traces,
                                 const Policy& policy) {
    policy.validate();
    if (traces.empty()) throw DomainError("trace stream is empty");

    BinomialAcc dark_err, bright_err, total_err;
    double time_sum = 0.0, time_sq_sum = 0.0;
    for (const auto& trace : traces) {
        const auto count = static_cast<std::int64_t>(std::count_if(
            trace.timestamps.begin(), trace.timestamps.end(),
            [&](double ts) { return ts <= policy.window; }));
        const bool bright_decision = count > policy.threshold;

        double stop_time = policy.window;
        if (policy.kind == PolicyKind::first_photon_stop && !trace.timestamps.empty())
            stop_time = std::min(trace.timestamps.front(), policy.window);

        const bool error = trace.prepared_state == IonState::dark ? bright_decision
                                                                  : !bright_decision;
        (trace.prepared_state == IonState::dark ? dark_err : bright_err).hits += error;
        (trace.prepared_state == IonState::dark ? dark_err : bright_err).n += 1;
        total_err.hits += error;
        total_err.n += 1;
        time_sum += stop_time;
        time_sq_sum += stop_time * stop_time;
    }
    if (dark_err.n == 0 || bright_err.n == 0)
        throw DomainError("both prepared states must be represented in the ensemble");

    const double n = static_cast<double>(total_err.n);
    const double mean_time = time_sum / n;
    const double var_time = std::max(0.0, time_sq_sum / n - mean_time * mean_time);

    McResult result;
    result.dark_error = dark_err.estimate();
    result.bright_error = bright_err.estimate();
    result.avg_error = total_err.estimate();
    result.avg_time = {mean_time, std::sqrt(var_time / n), total_err.n};
    return result;
}

}  // namespace ionread::mcsim
