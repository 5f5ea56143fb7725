#pragma once

// Atomic constants and the scattering-rate model for 171Yb+ fluorescence
// detection. Converts beam/detector parameters into the five rates that
// the statistics and simulation modules consume.

#include <stdexcept>

#include "ionread/units.hpp"

namespace ionread {

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

struct AtomicConstants {
    double gamma = 2.0 * units::pi * 19.6e6;       // P1/2 linewidth, rad/s
    double delta_hfp = 2.0 * units::pi * 2.1e9;    // P1/2 hyperfine splitting, rad/s
    double delta_hfs = 2.0 * units::pi * 12.6e9;   // S1/2 hyperfine splitting, rad/s
    double i_sat = 51.0 * units::mW_per_cm2;       // W/m^2
    double wavelength = 369.5e-9;                  // m

    void validate() const;
};

struct BeamParams {
    double intensity = 0.0;         // W/m^2
    double detuning = 0.0;          // rad/s from the cycling transition
    double saturation_param = 0.0;  // s_o, dimensionless

    static BeamParams from_intensity(double intensity, double detuning,
                                     const AtomicConstants& constants);
};

struct ChannelParams {
    double eps_sys = 0.0;              // end-to-end detection efficiency
    double r_bg = 0.0;                 // background counts/s
    double timing_resolution = 5e-9;   // s

    void validate() const;
};

// The five rates governing detection statistics.
struct RateSet {
    double r_o = 0.0;              // raw scatter rate, photons/s
    double detected_bright = 0.0;  // eps_sys * r_o, counts/s
    double r_d = 0.0;              // bright -> dark pump rate, 1/s
    double r_b = 0.0;              // dark -> bright pump rate, 1/s
    double r_bg = 0.0;             // background counts/s

    void validate() const;

    // Construction from measured rates (the detected rate is given directly).
    static RateSet measured(double detected_bright, double r_d, double r_b,
                            double r_bg, double eps_sys = 0.0);
    // Construction from the scattering-rate formulas.
    static RateSet from_formulas(const BeamParams& beam, const ChannelParams& channel,
                                 const AtomicConstants& constants);
};

// s_o = I / I_sat
double saturation_param(double intensity, const AtomicConstants& constants);

// (1/3)(G/2) s_o / (1 + (2/3) s_o + (2*Delta/G)^2)
double bright_scatter_rate(const BeamParams& beam, const AtomicConstants& constants);

// (1/3)(G/2) s_o (G / 2*Delta_HFP)^2
double dark_pump_rate(const BeamParams& beam, const AtomicConstants& constants);

// (2/3)(G/2) s_o (G / 2*(Delta_HFP + Delta_HFS))^2
double bright_pump_rate(const BeamParams& beam, const AtomicConstants& constants);

// eps_sys * (G/2) * (I/I_sat) / (1 + I/I_sat)
double two_level_rate(double intensity, double eps_sys, const AtomicConstants& constants);

// Peak intensity 2P/(pi w^2) of a Gaussian beam with 1/e^2 radius w.
double intensity_from_power(double power, double waist);

}  // namespace ionread
