#include "ionread/stats.hpp"

#include <algorithm>
#include <cmath>

namespace ionread::stats {

namespace {

// (1 - e^(-x)) / x with the removable singularity at x = 0.
double expm1_ratio(double x) {
    if (std::abs(x) < 1e-5) return 1.0 - x / 2.0 + x * x / 6.0;
    return -std::expm1(-x) / x;
}

}  // namespace

void MixtureSpec::validate() const {
    if (r1 < 0 || r2 < 0 || rt < 0 || t < 0)
        throw DomainError("mixture spec fields must be nonnegative");
}

void PrepErrors::validate() const {
    if (p_prep_dark < 0 || p_prep_dark > 1 || p_prep_bright < 0 || p_prep_bright > 1)
        throw DomainError("preparation error probabilities must be in [0,1]");
}

double poisson_pmf(std::int64_t n, double mean) {
    if (n < 0 || mean < 0) throw DomainError("poisson_pmf requires n >= 0 and mean >= 0");
    if (mean == 0.0) return n == 0 ? 1.0 : 0.0;
    const double logp = static_cast<double>(n) * std::log(mean) - mean -
                        std::lgamma(static_cast<double>(n) + 1.0);
    return std::exp(logp);
}

double mixture_pmf(std::int64_t n, const MixtureSpec& spec, const QuadratureOptions& opts) {
    spec.validate();
    if (n < 0) throw DomainError("photon count must be nonnegative");
    const double no_transition = std::exp(-spec.rt * spec.t) * poisson_pmf(n, spec.r1 * spec.t);
    if (spec.rt == 0.0 || spec.t == 0.0) return no_transition;
    double transitioned = 0.0;
    for (std::int64_t k = 0; k <= n; ++k) {
        transitioned += integrate_multiscale(
            [&](double tau) {
                return poisson_pmf(k, spec.r1 * tau) * spec.rt * std::exp(-spec.rt * tau) *
                       poisson_pmf(n - k, spec.r2 * (spec.t - tau));
            },
            spec.t, opts);
    }
    return std::clamp(no_transition + transitioned, 0.0, 1.0);
}

double p_zero_dark(double t, const RateSet& rates) {
    if (t < 0) throw DomainError("detection time must be nonnegative");
    const double eps_ro = rates.detected_bright;
    const double delta = eps_ro - rates.r_b;
    const double survival = std::exp(-(rates.r_b + rates.r_bg) * t);
    double pumped;
    if (rates.r_b == 0.0) {
        pumped = 0.0;
    } else if (std::abs(delta) < 1e-6 * std::max(eps_ro, rates.r_b)) {
        // removable singularity eps*R_o = R_b: series in delta*t
        const double x = delta * t;
        pumped = rates.r_b * t * std::exp(-(rates.r_b + rates.r_bg) * t) *
                 (1.0 - x / 2.0 + x * x / 6.0);
    } else {
        pumped = rates.r_b / delta * std::exp(-rates.r_bg * t) *
                 (std::exp(-rates.r_b * t) - std::exp(-eps_ro * t));
    }
    return std::clamp(pumped + survival, 0.0, 1.0);
}

double p_zero_bright(double t, const RateSet& rates) {
    if (t < 0) throw DomainError("detection time must be nonnegative");
    const double eps_ro = rates.detected_bright;
    const double total = eps_ro + rates.r_d;
    const double survival = std::exp(-rates.r_d * t) * std::exp(-(eps_ro + rates.r_bg) * t);
    const double pumped =
        rates.r_d * t * expm1_ratio(total * t) * std::exp(-rates.r_bg * t);
    return std::clamp(pumped + survival, 0.0, 1.0);
}

std::vector<ErrorPoint> error_curve(const RateSet& rates, const PrepErrors& prep,
                                    const std::vector<double>& windows,
                                    double prior_bright) {
    prep.validate();
    if (!std::is_sorted(windows.begin(), windows.end()))
        throw DomainError("windows must be sorted ascending");
    std::vector<ErrorPoint> points;
    points.reserve(windows.size());
    for (double w : windows) {
        const double pzd = p_zero_dark(w, rates);
        const double pzb = p_zero_bright(w, rates);
        ErrorPoint pt;
        pt.window = w;
        pt.dark_error = (1.0 - prep.p_prep_dark) * (1.0 - pzd) + prep.p_prep_dark * (1.0 - pzb);
        pt.bright_error = (1.0 - prep.p_prep_bright) * pzb + prep.p_prep_bright * pzd;
        pt.avg_error = prior_bright * pt.bright_error + (1.0 - prior_bright) * pt.dark_error;
        pt.avg_time = avg_stop_time(rates, w, prior_bright);
        points.push_back(pt);
    }
    return points;
}

double avg_stop_time(const RateSet& rates, double window, double prior_bright) {
    if (prior_bright < 0 || prior_bright > 1)
        throw DomainError("prior_bright must be in [0,1]");
    if (window == 0.0) return 0.0;
    // E[T | state] = integral over [0, window] of the zero-photon survival
    const double t_dark =
        integrate_multiscale([&](double t) { return p_zero_dark(t, rates); }, window);
    const double t_bright =
        integrate_multiscale([&](double t) { return p_zero_bright(t, rates); }, window);
    return prior_bright * t_bright + (1.0 - prior_bright) * t_dark;
}

WindowError fidelity_at_avg_time(const RateSet& rates, const PrepErrors& prep,
                                 double target_avg_time, double prior_bright,
                                 double window_hi) {
    if (target_avg_time < 0) throw DomainError("target average time must be nonnegative");
    if (avg_stop_time(rates, window_hi, prior_bright) < target_avg_time)
        throw DomainError("target average time not achievable within the window bound");
    double lo = 0.0, hi = window_hi;
    while (hi - lo > 1e-9) {
        const double mid = 0.5 * (lo + hi);
        (avg_stop_time(rates, mid, prior_bright) < target_avg_time ? lo : hi) = mid;
    }
    const double window = 0.5 * (lo + hi);
    const auto pt = error_curve(rates, prep, {window}, prior_bright).front();
    return {window, pt.avg_error};
}

WindowError minimize_avg_error(const RateSet& rates, const PrepErrors& prep,
                               double window_lo, double window_hi, double prior_bright) {
    if (window_lo <= 0 || window_hi <= window_lo)
        throw DomainError("need 0 < window_lo < window_hi");
    auto err_at = [&](double log_w) {
        return error_curve(rates, prep, {std::exp(log_w)}, prior_bright).front().avg_error;
    };
    // golden-section on log window
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = std::log(window_lo), b = std::log(window_hi);
    double c = b - invphi * (b - a), d = a + invphi * (b - a);
    double fc = err_at(c), fd = err_at(d);
    while (b - a > 1e-6) {
        if (fc < fd) {
            b = d; d = c; fd = fc;
            c = b - invphi * (b - a);
            fc = err_at(c);
        } else {
            a = c; c = d; fc = fd;
            d = a + invphi * (b - a);
            fd = err_at(d);
        }
    }
    const double w = std::exp(0.5 * (a + b));
    return {w, error_curve(rates, prep, {w}, prior_bright).front().avg_error};
}

}  // namespace ionread::stats
