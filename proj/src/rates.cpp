#include "ionread/rates.hpp"

#include <cmath>

namespace ionread {

void AtomicConstants::validate() const {
    if (gamma <= 0 || delta_hfp <= 0 || delta_hfs <= 0 || i_sat <= 0 || wavelength <= 0)
        throw DomainError("atomic constants must be strictly positive");
    if (delta_hfs <= delta_hfp)
        throw DomainError("delta_hfs must exceed delta_hfp");
}

void ChannelParams::validate() const {
    if (eps_sys < 0 || eps_sys > 1) throw DomainError("eps_sys must be in [0,1]");
    if (r_bg < 0) throw DomainError("r_bg must be nonnegative");
    if (timing_resolution <= 0) throw DomainError("timing_resolution must be positive");
}

void RateSet::validate() const {
    if (r_o < 0 || detected_bright < 0 || r_d < 0 || r_b < 0 || r_bg < 0)
        throw DomainError("rates must be nonnegative");
    if (detected_bright > r_o && r_o > 0)
        throw DomainError("detected_bright cannot exceed r_o");
}

RateSet RateSet::measured(double detected_bright, double r_d, double r_b,
                          double r_bg, double eps_sys) {
    RateSet rates;
    rates.detected_bright = detected_bright;
    rates.r_o = eps_sys > 0 ? detected_bright / eps_sys : detected_bright;
    rates.r_d = r_d;
    rates.r_b = r_b;
    rates.r_bg = r_bg;
    rates.validate();
    return rates;
}

RateSet RateSet::from_formulas(const BeamParams& beam, const ChannelParams& channel,
                               const AtomicConstants& constants) {
    channel.validate();
    RateSet rates;
    rates.r_o = bright_scatter_rate(beam, constants);
    rates.detected_bright = channel.eps_sys * rates.r_o;
    rates.r_d = dark_pump_rate(beam, constants);
    rates.r_b = bright_pump_rate(beam, constants);
    rates.r_bg = channel.r_bg;
    rates.validate();
    return rates;
}

BeamParams BeamParams::from_intensity(double intensity, double detuning,
                                      const AtomicConstants& constants) {
    BeamParams beam;
    beam.intensity = intensity;
    beam.detuning = detuning;
    beam.saturation_param = ionread::saturation_param(intensity, constants);
    return beam;
}

double saturation_param(double intensity, const AtomicConstants& constants) {
    if (intensity < 0) throw DomainError("intensity must be nonnegative");
    return intensity / constants.i_sat;
}

double bright_scatter_rate(const BeamParams& beam, const AtomicConstants& constants) {
    const double s = beam.saturation_param;
    const double d = 2.0 * beam.detuning / constants.gamma;
    return (constants.gamma / 6.0) * s / (1.0 + (2.0 / 3.0) * s + d * d);
}

double dark_pump_rate(const BeamParams& beam, const AtomicConstants& constants) {
    const double s = beam.saturation_param;
    const double f = constants.gamma / (2.0 * constants.delta_hfp);
    return (constants.gamma / 6.0) * s * f * f;
}

double bright_pump_rate(const BeamParams& beam, const AtomicConstants& constants) {
    const double s = beam.saturation_param;
    const double f = constants.gamma / (2.0 * (constants.delta_hfp + constants.delta_hfs));
    return (constants.gamma / 3.0) * s * f * f;
}

double two_level_rate(double intensity, double eps_sys, const AtomicConstants& constants) {
    if (intensity < 0) throw DomainError("intensity must be nonnegative");
    if (eps_sys < 0 || eps_sys > 1) throw DomainError("eps_sys must be in [0,1]");
    const double x = intensity / constants.i_sat;
    return eps_sys * (constants.gamma / 2.0) * x / (1.0 + x);
}

double intensity_from_power(double power, double waist) {
    if (power < 0) throw DomainError("power must be nonnegative");
    if (waist <= 0) throw DomainError("waist must be positive");
    return 2.0 * power / (units::pi * waist * waist);
}

}  // namespace ionread
