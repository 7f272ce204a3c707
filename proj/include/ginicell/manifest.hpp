#ifndef GINICELL_MANIFEST_HPP
#define GINICELL_MANIFEST_HPP

#include <cstdint>
#include <string>

#include <json.hpp>

namespace ginicell::cli {

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr const char* kCsvSchemaVersion = "v1";

// Round to 12 significant digits; all serialized numbers go through this
// so re-runs are byte-identical.
double round12(double v);
std::string format12(double v);

// Written alongside every result file. Volatile fields (wall-clock) are
// kept out of the copy embedded in JSON results so identical runs produce
// identical result bytes.
struct RunManifest {
    std::string command;
    std::string command_line;
    nlohmann::json parameters;
    std::uint64_t seed = 0;
    double duration_ms = 0.0;  // volatile
    nlohmann::json diagnostics;

    nlohmann::json to_json(bool include_volatile) const;
};

} // namespace ginicell::cli

#endif
