#ifndef GINICELL_CLI_HPP
#define GINICELL_CLI_HPP

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "ginicell/manifest.hpp"
#include "ginicell/multitier.hpp"

namespace ginicell::cli {

// exit codes shared by all subcommands
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;    // bad flags or domain violations
inline constexpr int kExitNumeric = 3;  // quadrature/series convergence failure

struct CoverageArgs {
    std::string model = "ppp";  // "ppp" | "ginibre"
    double alpha = 1.0;
    double lambda = 0.318309886183790672;  // 1/pi
    double beta = 2.0;
    double power = 1.0;
    double noise = 0.0;
    int fading_shape = 1;
    // theta grid in dB (inclusive); a single --theta-db or linear --theta
    // collapses it to one point
    double theta_db_from = -10.0;
    double theta_db_to = 20.0;
    double theta_db_step = 1.0;
    bool single_theta_db = false;
    double theta_db = 0.0;
    bool single_theta_linear = false;
    double theta_linear = 1.0;
    std::string method = "analytic";  // analytic | mc | both
    long reps = 100000;
    std::uint64_t seed = 1;
    int max_points = 1000;
    int workers = 0;
    std::string format = "csv";  // csv | json
    std::string out;             // empty = stdout
};

struct MultitierArgs {
    std::string config_path;
    std::string method = "analytic";
    long reps = 100000;
    std::uint64_t seed = 1;
    int max_points = 1000;
    int workers = 0;
    std::string format = "csv";
    std::string out;
};

struct SampleArgs {
    double alpha = 1.0;
    double lambda = 0.318309886183790672;
    double radius = 10.0;
    std::uint64_t seed = 1;
    bool with_angles = false;
    std::string format = "csv";
    std::string out;
};

struct CountstatsArgs {
    double alpha = 1.0;
    double lambda = 0.318309886183790672;
    double radius = 1.0;
    bool empirical = false;
    long reps = 100000;
    std::uint64_t seed = 1;
    std::string format = "csv";
    std::string out;
};

// `results_stream` receives the result rows when no --out file is given;
// messages and the stdout-mode manifest go to `err`.
int run_coverage(const CoverageArgs& args, std::ostream& results_stream,
                 std::ostream& err);
int run_multitier(const MultitierArgs& args, std::ostream& results_stream,
                  std::ostream& err);
int run_sample(const SampleArgs& args, std::ostream& results_stream,
               std::ostream& err);
int run_countstats(const CountstatsArgs& args, std::ostream& results_stream,
                   std::ostream& err);

// Flat key-value config with [tier1]/[tier2]/[thresholds] sections.
multitier::TwoTierScenario parse_two_tier_config(const std::string& path);

std::vector<double> theta_db_grid(const CoverageArgs& args);

} // namespace ginicell::cli

#endif
