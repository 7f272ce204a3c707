#include "ginicell/manifest.hpp"

#include <cstdio>
#include <cstdlib>

namespace ginicell::cli {

double round12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return std::strtod(buf, nullptr);
}

std::string format12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

nlohmann::json RunManifest::to_json(bool include_volatile) const {
    nlohmann::json j;
    j["tool"] = "ginicell";
    j["version"] = kToolVersion;
    j["csv_schema"] = kCsvSchemaVersion;
    j["command"] = command;
    j["command_line"] = command_line;
    j["parameters"] = parameters;
    j["seed"] = seed;
    j["diagnostics"] = diagnostics;
    if (include_volatile) j["duration_ms"] = duration_ms;
    return j;
}

} // namespace ginicell::cli
