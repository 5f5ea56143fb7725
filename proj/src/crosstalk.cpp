#include "ionread/crosstalk.hpp"

#include <cmath>

namespace ionread::crosstalk {

void VisibilityPoint::validate() const {
    if (exposure < 0) throw DomainError("exposure must be nonnegative");
    if (visibility < 0 || visibility > 1) throw DomainError("visibility must be in [0,1]");
    if (visibility_error <= 0) throw DomainError("visibility_error must be positive");
}

CoherenceFit fit_coherence(const std::vector<VisibilityPoint>& points) {
    if (points.size() < 3) throw DomainError("need at least 3 visibility points");
    for (const auto& pt : points) pt.validate();

    std::vector<double> xs, ys, sigmas;
    double x_max = 0.0, y_max = 0.0;
    for (const auto& pt : points) {
        xs.push_back(pt.exposure);
        ys.push_back(pt.visibility);
        sigmas.push_back(pt.visibility_error);
        x_max = std::max(x_max, pt.exposure);
        y_max = std::max(y_max, pt.visibility);
    }
    if (x_max == 0.0) throw DomainError("need distinct exposures");

    fit::Model model = [](double tau, const std::vector<double>& p) {
        const double u = tau / p[1];
        return p[0] * std::exp(-u * u);
    };
    const auto res = fit::least_squares(model, xs, ys, sigmas,
                                        {std::max(y_max, 0.1), std::max(x_max, 1e-6)});

    CoherenceFit out;
    out.amplitude = res.params[0];
    out.amplitude_error = res.param_errors[0];
    out.coherence_time = res.params[1];
    out.coherence_time_error = res.param_errors[1];
    out.residual_norm = res.residual_norm;
    out.converged = res.converged;
    if (!res.converged || !std::isfinite(out.amplitude) ||
        !std::isfinite(out.coherence_time) || out.amplitude <= 0 ||
        out.amplitude > 1.05 || out.coherence_time <= 0)
        throw NumericalError("coherence fit driven out of bounds (A = " +
                             std::to_string(out.amplitude) + ", alpha = " +
                             std::to_string(out.coherence_time) + ")");
    if (out.coherence_time > 100.0 * x_max)
        throw NumericalError("no resolvable decay over the measured exposures (alpha = " +
                             std::to_string(out.coherence_time) + " s)");
    return out;
}

ShuttlePlan shuttle_time(double distance, double step_size, double step_period) {
    if (distance < 0) throw DomainError("distance must be nonnegative");
    if (step_size <= 0 || step_period <= 0)
        throw DomainError("step_size and step_period must be positive");
    ShuttlePlan plan;
    plan.distance = distance;
    plan.step_size = step_size;
    plan.step_period = step_period;
    plan.n_steps =
        static_cast<std::uint64_t>(std::ceil(distance / step_size * (1.0 - 1e-12)));
    plan.total_time = static_cast<double>(plan.n_steps) * step_period;
    return plan;
}

CrosstalkBudget measurement_crosstalk(double coherence_time, double avg_detect_time) {
    if (coherence_time <= 0 || avg_detect_time <= 0)
        throw DomainError("coherence_time and avg_detect_time must be positive");
    CrosstalkBudget budget;
    budget.per_measurement = avg_detect_time / coherence_time;
    // guard so exact or fitted near-integer ratios do not truncate to n-1
    budget.n_star =
        static_cast<std::uint64_t>(coherence_time / avg_detect_time * (1.0 + 1e-9));
    // marginal Gaussian-decay loss per measurement after n_star measurements
    const double tau = static_cast<double>(budget.n_star) * avg_detect_time;
    const double u = tau / coherence_time;
    budget.per_measurement_gaussian =
        (2.0 * tau / (coherence_time * coherence_time)) * std::exp(-u * u) *
        avg_detect_time;
    return budget;
}

double absorption_crosstalk(double distance, double scatter_rate, double exposure,
                            double wavelength) {
    if (distance <= 0) throw DomainError("distance must be positive");
    if (scatter_rate < 0 || exposure < 0 || wavelength <= 0)
        throw DomainError("invalid absorption-crosstalk inputs");
    const double sigma = 3.0 * wavelength * wavelength / (2.0 * units::pi);
    const double solid_angle_fraction = sigma / (4.0 * units::pi * distance * distance);
    return solid_angle_fraction * scatter_rate * exposure;
}

}  // namespace ionread::crosstalk
