#include "ionread/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace ionread::csv {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(trim(field));
    if (!line.empty() && line.back() == ',') fields.push_back("");
    return fields;
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

bool Table::has_column(const std::string& name) const {
    return std::find(columns.begin(), columns.end(), name) != columns.end();
}

std::vector<double> Table::column(const std::string& name) const {
    const auto it = std::find(columns.begin(), columns.end(), name);
    if (it == columns.end()) throw ParseError("missing column '" + name + "'", 1);
    const auto idx = static_cast<std::size_t>(it - columns.begin());
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& row : rows) out.push_back(row[idx]);
    return out;
}

Table parse_table(const std::string& text) {
    Table table;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped.front() == '#') continue;
        const auto fields = split_fields(stripped);
        if (!header_seen) {
            for (const auto& f : fields) {
                if (f.empty()) throw ParseError("empty column name in header", line_no);
                double dummy;
                if (std::from_chars(f.data(), f.data() + f.size(), dummy).ec == std::errc{})
                    throw ParseError("header row required; found numeric data first", line_no);
            }
            table.columns = fields;
            header_seen = true;
            continue;
        }
        if (fields.size() != table.columns.size())
            throw ParseError("expected " + std::to_string(table.columns.size()) +
                                 " fields, got " + std::to_string(fields.size()),
                             line_no);
        std::vector<double> row;
        row.reserve(fields.size());
        for (const auto& f : fields) {
            double value;
            const auto res = std::from_chars(f.data(), f.data() + f.size(), value);
            if (res.ec != std::errc{} || res.ptr != f.data() + f.size())
                throw ParseError("cannot parse number '" + f + "'", line_no);
            row.push_back(value);
        }
        table.rows.push_back(std::move(row));
    }
    if (!header_seen) throw ParseError("header row required; file has no data", line_no);
    return table;
}

Table read_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'", 0);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_table(buffer.str());
}

std::string format_table(const Table& table) {
    std::string out;
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        if (i) out += ',';
        out += table.columns[i];
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += format_double(row[i]);
        }
        out += '\n';
    }
    return out;
}

void write_table(const std::string& path, const Table& table) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write '" + path + "'", 0);
    out << format_table(table);
}

std::vector<calibrate::CalibrationPoint> load_calibration(const std::string& path) {
    const Table table = read_table(path);
    std::vector<double> intensities;
    if (table.has_column("intensity_mw_cm2")) {
        for (double v : table.column("intensity_mw_cm2"))
            intensities.push_back(v * units::mW_per_cm2);
    } else if (table.has_column("power_nw") && table.has_column("waist_um")) {
        const auto powers = table.column("power_nw");
        const auto waists = table.column("waist_um");
        for (std::size_t i = 0; i < powers.size(); ++i)
            intensities.push_back(
                intensity_from_power(powers[i] * units::nW, waists[i] * units::um));
    } else {
        throw ParseError("need intensity_mw_cm2 or power_nw + waist_um columns", 1);
    }
    const auto rates = table.column("rate_cps");
    const bool has_err = table.has_column("rate_err_cps");
    const auto errs = has_err ? table.column("rate_err_cps") : std::vector<double>{};

    std::vector<calibrate::CalibrationPoint> points;
    for (std::size_t i = 0; i < rates.size(); ++i)
        points.push_back({intensities[i], rates[i], has_err ? errs[i] : 0.0});
    if (!has_err) points = calibrate::with_shot_noise_errors(std::move(points));
    return points;
}

std::vector<crosstalk::VisibilityPoint> load_visibility(const std::string& path) {
    const Table table = read_table(path);
    const auto exposures = table.column("exposure_ms");
    const auto vis = table.column("visibility");
    const auto errs = table.column("visibility_err");
    std::vector<crosstalk::VisibilityPoint> points;
    for (std::size_t i = 0; i < vis.size(); ++i)
        points.push_back({exposures[i] * units::ms, vis[i], errs[i]});
    return points;
}

}  // namespace ionread::csv
