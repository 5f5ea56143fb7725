#include "ionread/calibrate.hpp"

#include <algorithm>
#include <cmath>

namespace ionread::calibrate {

void CalibrationPoint::validate() const {
    if (intensity < 0) throw DomainError("intensity must be nonnegative");
    if (rate < 0) throw DomainError("rate must be nonnegative");
    if (rate_error <= 0) throw DomainError("rate_error must be positive");
}

SaturationFit fit_saturation(const std::vector<CalibrationPoint>& points,
                             const AtomicConstants& constants, bool fit_i_sat) {
    if (points.size() < 3) throw DomainError("need at least 3 calibration points");
    for (const auto& pt : points) pt.validate();

    const double i_min =
        std::min_element(points.begin(), points.end(), [](auto& a, auto& b) {
            return a.intensity < b.intensity;
        })->intensity;
    const double i_max =
        std::max_element(points.begin(), points.end(), [](auto& a, auto& b) {
            return a.intensity < b.intensity;
        })->intensity;
    if (i_min == i_max) throw DomainError("degenerate data: all intensities equal");

    const double rate_max =
        std::max_element(points.begin(), points.end(), [](auto& a, auto& b) {
            return a.rate < b.rate;
        })->rate;
    if (rate_max == 0.0) throw DomainError("degenerate data: all rates zero");

    std::vector<double> xs, ys, sigmas;
    for (const auto& pt : points) {
        xs.push_back(pt.intensity);
        ys.push_back(pt.rate);
        sigmas.push_back(pt.rate_error);
    }

    const double half_gamma = constants.gamma / 2.0;
    fit::Model model = [&](double intensity, const std::vector<double>& params) {
        const double i_sat = params.size() > 1 ? params[1] : constants.i_sat;
        const double x = intensity / i_sat;
        return params[0] * half_gamma * x / (1.0 + x);
    };

    // crude starting point from the largest-intensity response
    std::vector<double> initial{std::clamp(rate_max / half_gamma * 2.0, 1e-6, 1.0)};
    if (fit_i_sat) initial.push_back(constants.i_sat);

    const auto res = fit::least_squares(model, xs, ys, sigmas, initial);

    SaturationFit sat;
    sat.eps_sys = res.params[0];
    sat.eps_sys_error = res.param_errors[0];
    sat.i_sat_used = fit_i_sat ? res.params[1] : constants.i_sat;
    sat.i_sat_error = fit_i_sat ? res.param_errors[1] : 0.0;
    sat.residual_norm = res.residual_norm;
    sat.converged = res.converged;
    if (sat.eps_sys < 0 || sat.eps_sys > 1)
        throw NumericalError("fitted eps_sys outside [0,1]: " + std::to_string(sat.eps_sys));
    return sat;
}

std::vector<CalibrationPoint> with_shot_noise_errors(std::vector<CalibrationPoint> points,
                                                     int n_experiments, double t_detect) {
    for (auto& pt : points) {
        if (pt.rate_error <= 0)
            pt.rate_error = std::max(std::sqrt(pt.rate / (n_experiments * t_detect)), 1e-6);
    }
    return points;
}

EfficiencyBreakdown decompose(ValueWithError eps_sys_free_pmt,
                              ValueWithError eps_sys_fiber_pmt,
                              ValueWithError eps_sys_snspd, double eps_pg,
                              ValueWithError eps_fiber, double pmt_qe) {
    for (double v : {eps_sys_free_pmt.value, eps_sys_fiber_pmt.value, eps_sys_snspd.value,
                     eps_pg, eps_fiber.value, pmt_qe}) {
        if (v <= 0 || v > 1) throw DomainError("efficiencies must be in (0, 1]");
    }

    auto rel = [](const ValueWithError& v) { return v.error / v.value; };

    EfficiencyBreakdown out;
    out.eps_pg = {eps_pg, 0.0};
    out.eps_fiber = eps_fiber;

    const double fc = eps_sys_fiber_pmt.value / eps_sys_free_pmt.value;
    out.eps_fc = {fc, fc * std::hypot(rel(eps_sys_fiber_pmt), rel(eps_sys_free_pmt))};

    const double det = eps_sys_snspd.value / eps_sys_fiber_pmt.value * pmt_qe;
    out.eps_det = {det, det * std::hypot(rel(eps_sys_snspd), rel(eps_sys_fiber_pmt))};
    return out;
}

}  // namespace ionread::calibrate
