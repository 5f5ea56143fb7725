#include "ionread/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace ionread::config {

namespace {

using units::Dimension;

double parse_or_throw(const std::string& key, const std::string& value, Dimension dim) {
    try {
        return units::parse_quantity(value, dim);
    } catch (const units::UnitError& e) {
        throw SchemaError("key '" + key + "': " + e.what());
    }
}

std::uint64_t parse_count(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const long long v = std::stoll(value, &pos);
        if (pos != value.size() || v < 0) throw std::invalid_argument(value);
        return static_cast<std::uint64_t>(v);
    } catch (const std::exception&) {
        throw SchemaError("key '" + key + "': expected a nonnegative integer, got '" +
                          value + "'");
    }
}

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

}  // namespace

RateSet RunConfig::rates() const {
    if (rates_mode == RatesMode::measured)
        return RateSet::measured(detected_bright, r_d, r_b, r_bg, eps_sys);
    const auto beam = BeamParams::from_intensity(beam_intensity, beam_detuning, constants);
    ChannelParams channel{eps_sys, r_bg, timing_resolution};
    return RateSet::from_formulas(beam, channel, constants);
}

std::vector<double> RunConfig::window_grid() const {
    if (window_points < 1) throw SchemaError("grid.points must be at least 1");
    if (window_min <= 0 || window_max < window_min)
        throw SchemaError("need 0 < grid.window_min <= grid.window_max");
    std::vector<double> grid;
    grid.reserve(window_points);
    if (window_points == 1) return {window_min};
    const double log_lo = std::log(window_min), log_hi = std::log(window_max);
    for (int i = 0; i < window_points; ++i)
        grid.push_back(std::exp(log_lo + (log_hi - log_lo) * i / (window_points - 1)));
    return grid;
}

RunConfig parse(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped.front() == '#') continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw SchemaError("line " + std::to_string(line_no) + ": expected key = value");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));

        if (key == "rates.mode") {
            if (value == "measured") cfg.rates_mode = RatesMode::measured;
            else if (value == "formula") cfg.rates_mode = RatesMode::formula;
            else throw SchemaError("rates.mode must be 'measured' or 'formula'");
        } else if (key == "rates.detected_bright") {
            cfg.detected_bright = parse_or_throw(key, value, Dimension::rate);
        } else if (key == "rates.r_d") {
            cfg.r_d = parse_or_throw(key, value, Dimension::rate);
        } else if (key == "rates.r_b") {
            cfg.r_b = parse_or_throw(key, value, Dimension::rate);
        } else if (key == "rates.r_bg") {
            cfg.r_bg = parse_or_throw(key, value, Dimension::rate);
        } else if (key == "rates.eps_sys") {
            cfg.eps_sys = parse_or_throw(key, value, Dimension::dimensionless);
        } else if (key == "beam.intensity") {
            cfg.beam_intensity = parse_or_throw(key, value, Dimension::intensity);
        } else if (key == "beam.detuning") {
            // entered as a linear frequency, stored angular
            cfg.beam_detuning = 2.0 * units::pi * parse_or_throw(key, value, Dimension::rate);
        } else if (key == "prep.p_dark") {
            cfg.prep.p_prep_dark = parse_or_throw(key, value, Dimension::dimensionless);
        } else if (key == "prep.p_bright") {
            cfg.prep.p_prep_bright = parse_or_throw(key, value, Dimension::dimensionless);
        } else if (key == "policy.kind") {
            if (value == "first_photon_stop") cfg.policy.kind = PolicyKind::first_photon_stop;
            else if (value == "fixed_window_threshold")
                cfg.policy.kind = PolicyKind::fixed_window_threshold;
            else throw SchemaError("unknown policy.kind '" + value + "'");
        } else if (key == "policy.window") {
            cfg.policy.window = parse_or_throw(key, value, Dimension::time);
        } else if (key == "policy.threshold") {
            cfg.policy.threshold = static_cast<std::int64_t>(parse_count(key, value));
        } else if (key == "prior_bright") {
            cfg.prior_bright = parse_or_throw(key, value, Dimension::dimensionless);
        } else if (key == "timing_resolution") {
            cfg.timing_resolution = parse_or_throw(key, value, Dimension::time);
        } else if (key == "grid.window_min") {
            cfg.window_min = parse_or_throw(key, value, Dimension::time);
        } else if (key == "grid.window_max") {
            cfg.window_max = parse_or_throw(key, value, Dimension::time);
        } else if (key == "grid.points") {
            cfg.window_points = static_cast<int>(parse_count(key, value));
        } else if (key == "mc.trials") {
            cfg.mc_trials = parse_count(key, value);
        } else if (key == "mc.seed") {
            cfg.mc_seed = parse_count(key, value);
        } else if (key == "constants.gamma") {
            // linear frequency in the file, angular internally
            cfg.constants.gamma = 2.0 * units::pi * parse_or_throw(key, value, Dimension::rate);
        } else if (key == "constants.delta_hfp") {
            cfg.constants.delta_hfp =
                2.0 * units::pi * parse_or_throw(key, value, Dimension::rate);
        } else if (key == "constants.delta_hfs") {
            cfg.constants.delta_hfs =
                2.0 * units::pi * parse_or_throw(key, value, Dimension::rate);
        } else if (key == "constants.i_sat") {
            cfg.constants.i_sat = parse_or_throw(key, value, Dimension::intensity);
        } else if (key == "constants.wavelength") {
            cfg.constants.wavelength = parse_or_throw(key, value, Dimension::length);
        } else {
            throw SchemaError("unknown key '" + key + "' at line " + std::to_string(line_no));
        }
    }
    try {
        cfg.constants.validate();
        cfg.prep.validate();
        cfg.policy.validate();
    } catch (const DomainError& e) {
        throw SchemaError(e.what());
    }
    if (cfg.prior_bright < 0 || cfg.prior_bright > 1)
        throw SchemaError("prior_bright must be in [0,1]");
    return cfg;
}

RunConfig load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open config '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse(buffer.str());
}

}  // namespace ionread::config
