#include "ionread/report.hpp"

#include <cstdlib>
#include <ctime>
#include <fstream>
#include <stdexcept>

namespace ionread::report {

std::string timestamp() {
    if (const char* env = std::getenv("IONREAD_TIMESTAMP")) return env;
    std::time_t now = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    return buf;
}

Json Report::to_json() const {
    Json j;
    j["inputs"] = inputs;
    j["results"] = results;
    j["provenance"] = {{"version", kVersion}, {"seed", seed}, {"timestamp", timestamp()}};
    j["warnings"] = warnings;
    return j;
}

std::string Report::serialize() const { return to_json().dump(2) + "\n"; }

void Report::write(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write report '" + path + "'");
    out << serialize();
}

}  // namespace ionread::report
