#pragma once

// Deterministic JSON reports: insertion-ordered keys, stable float
// formatting, timestamp overridable through IONREAD_TIMESTAMP so runs
// can be compared byte for byte.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace ionread::report {

inline constexpr const char* kVersion = "0.1.0";

using Json = nlohmann::ordered_json;

struct Report {
    Json inputs;
    Json results;
    std::vector<std::string> warnings;
    std::uint64_t seed = 0;

    Json to_json() const;
    std::string serialize() const;  // 2-space indent, trailing newline
    void write(const std::string& path) const;
};

// ISO-8601 UTC now, or the IONREAD_TIMESTAMP environment value verbatim.
std::string timestamp();

}  // namespace ionread::report
