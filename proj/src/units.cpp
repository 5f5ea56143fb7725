#include "ionread/units.hpp"

#include <cctype>
#include <map>
#include <sstream>

namespace ionread::units {

namespace {

const std::map<std::string, std::pair<Dimension, double>>& unit_table() {
    static const std::map<std::string, std::pair<Dimension, double>> table = {
        {"s", {Dimension::time, 1.0}},
        {"ms", {Dimension::time, ms}},
        {"us", {Dimension::time, us}},
        {"ns", {Dimension::time, ns}},
        {"m", {Dimension::length, 1.0}},
        {"mm", {Dimension::length, mm}},
        {"um", {Dimension::length, um}},
        {"nm", {Dimension::length, nm_}},
        {"W", {Dimension::power, 1.0}},
        {"mW", {Dimension::power, mW}},
        {"uW", {Dimension::power, uW}},
        {"nW", {Dimension::power, nW}},
        {"W/m2", {Dimension::intensity, 1.0}},
        {"mW/cm2", {Dimension::intensity, mW_per_cm2}},
        {"cps", {Dimension::rate, 1.0}},
        {"kcps", {Dimension::rate, kcps}},
        {"Mcps", {Dimension::rate, 1e6}},
        {"Hz", {Dimension::rate, 1.0}},
        {"kHz", {Dimension::rate, 1e3}},
        {"MHz", {Dimension::rate, 1e6}},
        {"1/s", {Dimension::rate, 1.0}},
        {"", {Dimension::dimensionless, 1.0}},
    };
    return table;
}

}  // namespace

std::optional<double> unit_factor(const std::string& unit, Dimension dim) {
    auto it = unit_table().find(unit);
    if (it == unit_table().end() || it->second.first != dim) return std::nullopt;
    return it->second.second;
}

double parse_quantity(const std::string& text, Dimension dim) {
    std::istringstream in(text);
    double value;
    if (!(in >> value)) throw UnitError("cannot parse quantity: '" + text + "'");
    std::string unit;
    in >> unit;
    std::string trailing;
    if (in >> trailing) throw UnitError("trailing tokens in quantity: '" + text + "'");
    auto factor = unit_factor(unit, dim);
    if (!factor) {
        throw UnitError("unknown or mismatched unit '" + unit + "' in '" + text + "'");
    }
    return value * *factor;
}

}  // namespace ionread::units
