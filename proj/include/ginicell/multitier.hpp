#ifndef GINICELL_MULTITIER_HPP
#define GINICELL_MULTITIER_HPP

#include "ginicell/analytic.hpp"
#include "ginicell/channel.hpp"

namespace ginicell::multitier {

// Two-tier overlay: tier 1 is the repulsive (Ginibre) macro tier, tier 2 a
// Poisson femto tier. Interference-limited regime (no noise), biased
// mean-power association, full-SDMA antennas (served_users == antennas).
struct TwoTierScenario {
    channel::TierConfig tier1;
    channel::TierConfig tier2;
    double theta1 = 1.0;
    double theta2 = 1.0;

    void validate() const;

    const pointproc::GinibreModel& ginibre() const;
    const pointproc::PoissonModel& poisson() const;
};

// Exclusion radius for tier-2 interferers when a tier-1 station at
// distance r serves: R12(r) = (b2 p2 / (b1 p1))^{1/(2 beta2)} r^{beta1/beta2}.
double assoc_radius_1to2(const TwoTierScenario& scn, double r);
// Mirror case; inverse of the above where both are defined.
double assoc_radius_2to1(const TwoTierScenario& scn, double r);

// Cross-tier interference integral with the bias ratio inside the Laplace
// argument.
double tau_12(const TwoTierScenario& scn, double theta, double beta,
              const numerics::QuadratureSpec& spec = numerics::QuadratureSpec{});

struct CrossTerms {
    double c12 = 0.0;
    double c21 = 0.0;
};

// Scaled exclusion boundaries in the radial (t) domain for both
// serving-tier cases.
CrossTerms cross_terms(const TwoTierScenario& scn, double t);

// Tier-1 interference product seen by a tier-2 served user.
double M_alpha_21(const TwoTierScenario& scn, double t, double theta,
                  const analytic::SeriesTruncation& trunc = analytic::SeriesTruncation{});

struct TwoTierCoverage {
    double total = 0.0;
    double tier1_part = 0.0;  // P(covered and served by tier 1)
    double tier2_part = 0.0;
};

TwoTierCoverage coverage_two_tier(
    const TwoTierScenario& scn,
    const analytic::SeriesTruncation& trunc = analytic::SeriesTruncation{},
    const numerics::QuadratureSpec& spec = numerics::QuadratureSpec{});

} // namespace ginicell::multitier

#endif
