#pragma once

// CSV ingestion and emission. Header row required; comment lines start
// with '#'. Numbers are emitted with round-trip precision.

#include <map>
#include <string>
#include <vector>

#include "ionread/calibrate.hpp"
#include "ionread/crosstalk.hpp"

namespace ionread::csv {

struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, int line)
        : std::runtime_error(msg + " (line " + std::to_string(line) + ")"), line(line) {}
    int line;
};

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    bool has_column(const std::string& name) const;
    std::vector<double> column(const std::string& name) const;
};

Table read_table(const std::string& path);
Table parse_table(const std::string& text);

void write_table(const std::string& path, const Table& table);
std::string format_table(const Table& table);

// columns: intensity_mw_cm2 (or power_nw + waist_um), rate_cps,
// rate_err_cps (optional; shot-noise synthesized when absent)
std::vector<calibrate::CalibrationPoint> load_calibration(const std::string& path);

// columns: exposure_ms, visibility, visibility_err
std::vector<crosstalk::VisibilityPoint> load_visibility(const std::string& path);

}  // namespace ionread::csv
