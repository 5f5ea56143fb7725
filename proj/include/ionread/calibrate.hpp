#pragma once

// Detector-chain calibration: fits the two-level saturation model to
// (intensity, rate) data to extract eps_sys, and decomposes eps_sys into
// the lens / fiber-coupling / fiber / detector efficiency chain.

#include <vector>

#include "ionread/fit.hpp"
#include "ionread/rates.hpp"

namespace ionread::calibrate {

struct CalibrationPoint {
    double intensity = 0.0;   // W/m^2
    double rate = 0.0;        // counts/s
    double rate_error = 0.0;  // counts/s, standard error

    void validate() const;
};

struct SaturationFit {
    double eps_sys = 0.0;
    double eps_sys_error = 0.0;
    double i_sat_used = 0.0;       // W/m^2; fitted when fit_i_sat was set
    double i_sat_error = 0.0;      // 0 when i_sat was held fixed
    double residual_norm = 0.0;
    bool converged = false;
};

struct ValueWithError {
    double value = 0.0;
    double error = 0.0;
};

struct EfficiencyBreakdown {
    ValueWithError eps_pg;     // lens collection
    ValueWithError eps_fc;     // fiber coupling
    ValueWithError eps_fiber;  // fiber + connector transmission
    ValueWithError eps_det;    // detector device efficiency
};

// Weighted fit of rate = eps * (G/2) (I/Isat)/(1 + I/Isat). With fit_i_sat
// set, I_sat floats as a second parameter.
SaturationFit fit_saturation(const std::vector<CalibrationPoint>& points,
                             const AtomicConstants& constants, bool fit_i_sat = false);

// Synthesizes shot-noise errors sqrt(rate / (n_experiments * t_detect)) for
// datasets without tabulated per-point errors.
std::vector<CalibrationPoint> with_shot_noise_errors(std::vector<CalibrationPoint> points,
                                                     int n_experiments = 300,
                                                     double t_detect = 0.5e-3);

// eps_fc from the free-space/fiber PMT comparison; eps_det from the
// SNSPD/fiber-PMT ratio scaled by the PMT quantum efficiency. First-order
// error propagation throughout.
EfficiencyBreakdown decompose(ValueWithError eps_sys_free_pmt,
                              ValueWithError eps_sys_fiber_pmt,
                              ValueWithError eps_sys_snspd, double eps_pg,
                              ValueWithError eps_fiber, double pmt_qe);

}  // namespace ionread::calibrate
