#ifndef GINICELL_SIMULATE_HPP
#define GINICELL_SIMULATE_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "ginicell/analytic.hpp"
#include "ginicell/multitier.hpp"
#include "ginicell/pointproc.hpp"

namespace ginicell::simulate {

struct McConfig {
    long replications = 100000;
    std::uint64_t master_seed = 1;
    int max_points_per_tier = 1000;
    double confidence_level = 0.95;
    // worker threads; 0 = GINICELL_THREADS env or hardware concurrency.
    // Results are bit-identical for every worker count.
    int workers = 0;
    bool pilot_truncation_check = true;

    void validate() const;
};

struct McEstimate {
    double coverage = 0.0;
    double half_width = 0.0;
    long replications_used = 0;
    std::vector<double> per_tier_association_freq;  // empty for single tier
    std::vector<double> per_tier_coverage;          // covered AND served by tier k
    bool truncation_warning = false;
    double pilot_shift = 0.0;       // |estimate(N) - estimate(2N)| from the pilot
    long empty_configurations = 0;  // counted as not covered
};

// SINR for one sampled configuration: the nearest station serves; h is its
// channel power, g[j] the j-th interferer's (aligned with squared_radii[j+1]).
double sinr_single_tier(const analytic::SingleTierScenario& s,
                        const pointproc::RadialConfiguration& config, double h,
                        std::span<const double> g);

McEstimate estimate_coverage_single(const analytic::SingleTierScenario& s,
                                    double theta, const McConfig& mc);

// Biased mean-power association across both tiers; per-tier thresholds.
// noise = 0 matches the analytic two-tier path; nonzero noise is supported
// here only.
McEstimate estimate_coverage_two_tier(const multitier::TwoTierScenario& scn,
                                      const McConfig& mc, double noise = 0.0);

// Worker count resolution used by the MC engine and the CLI sweeps.
int resolve_workers(int requested);

} // namespace ginicell::simulate

#endif
