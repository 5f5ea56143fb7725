#pragma once

// Unit conversions. Internally everything is SI base (s, m, W, rad/s,
// W/m^2, counts/s). Parsing accepts the unit suffixes used in the
// lab conventions (us, ms, mW/cm^2, kcps, ...).

#include <optional>
#include <stdexcept>
#include <string>

namespace ionread::units {

inline constexpr double pi = 3.14159265358979323846;

// multiplicative factors to SI
inline constexpr double ns = 1e-9;
inline constexpr double us = 1e-6;
inline constexpr double ms = 1e-3;
inline constexpr double um = 1e-6;
inline constexpr double mm = 1e-3;
inline constexpr double nm_ = 1e-9;
inline constexpr double nW = 1e-9;
inline constexpr double uW = 1e-6;
inline constexpr double mW = 1e-3;
inline constexpr double mW_per_cm2 = 10.0;  // 1 mW/cm^2 = 10 W/m^2
inline constexpr double kcps = 1e3;
inline constexpr double MHz_ang = 2.0 * pi * 1e6;  // angular rad/s per MHz
inline constexpr double GHz_ang = 2.0 * pi * 1e9;

struct UnitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Dimension {
    time,
    length,
    power,
    intensity,
    rate,
    dimensionless,
};

// Parses "value unit" (e.g. "20 us", "4.2 cps", "56.2 mW/cm2") into SI.
// Throws UnitError on unknown unit or dimension mismatch.
double parse_quantity(const std::string& text, Dimension dim);

// Factor from a unit token to SI, or nullopt if the token does not
// name a unit of the given dimension.
std::optional<double> unit_factor(const std::string& unit, Dimension dim);

}  // namespace ionread::units
