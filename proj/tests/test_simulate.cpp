#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>

#include "ginicell/simulate.hpp"

namespace an = ginicell::analytic;
namespace ch = ginicell::channel;
namespace mt = ginicell::multitier;
namespace pp = ginicell::pointproc;
namespace sim = ginicell::simulate;

namespace {

constexpr double kPi = 3.14159265358979323846;

an::SingleTierScenario ppp_scn() {
    an::SingleTierScenario s;
    s.deployment = pp::PoissonModel{1.0 / kPi};
    return s;
}

an::SingleTierScenario gin_scn(double alpha) {
    an::SingleTierScenario s;
    s.deployment = pp::GinibreModel{alpha, 1.0 / kPi};
    return s;
}

mt::TwoTierScenario sym_two_tier() {
    mt::TwoTierScenario s;
    s.tier1.deployment = pp::GinibreModel{1.0, 1.0 / kPi};
    s.tier2.deployment = pp::PoissonModel{1.0 / kPi};
    return s;  // thetas default to 1
}

sim::McConfig quick(long reps, std::uint64_t seed = 1) {
    sim::McConfig mc;
    mc.replications = reps;
    mc.master_seed = seed;
    mc.max_points_per_tier = 500;
    mc.pilot_truncation_check = false;
    return mc;
}

} // namespace

TEST_CASE("sinr of explicit configurations") {
    auto s = ppp_scn();
    // single station, unit channel, noise 1: SINR = 1
    s.noise = 1.0;
    pp::RadialConfiguration one;
    one.squared_radii = {1.0};
    CHECK(sim::sinr_single_tier(s, one, 1.0, {}) == doctest::Approx(1.0));

    // two stations at r = 1 and r = 2 (squared radii 1 and 4), all gains 1,
    // no noise: SIR = 1 / 4^{-2} = 16
    s.noise = 0.0;
    pp::RadialConfiguration two;
    two.squared_radii = {1.0, 4.0};
    const double g[] = {1.0};
    CHECK(sim::sinr_single_tier(s, two, 1.0, g) == doctest::Approx(16.0).epsilon(1e-13));

    // power scaling cancels at zero noise
    auto sp = s;
    sp.power = 8.0;
    CHECK(sim::sinr_single_tier(sp, two, 1.0, g) ==
          doctest::Approx(sim::sinr_single_tier(s, two, 1.0, g)).epsilon(1e-15));

    pp::RadialConfiguration empty;
    CHECK_THROWS_AS(sim::sinr_single_tier(s, empty, 1.0, {}), std::invalid_argument);
}

TEST_CASE("single-tier estimate: ppp matches the closed form") {
    const auto est = sim::estimate_coverage_single(ppp_scn(), 1.0, quick(40000, 7));
    const double expect = 0.56009915351155738;
    CHECK(est.replications_used == 40000);
    CHECK(std::fabs(est.coverage - expect) < 3.0 * est.half_width / 1.96 * 3.0);
    CHECK(est.half_width > 0.0);
    CHECK(est.half_width < 0.01);
}

TEST_CASE("single-tier estimate: reproducible and partition independent") {
    auto mc1 = quick(5000, 42);
    mc1.workers = 1;
    auto mc4 = quick(5000, 42);
    mc4.workers = 4;
    const auto a = sim::estimate_coverage_single(gin_scn(0.8), 1.0, mc1);
    const auto b = sim::estimate_coverage_single(gin_scn(0.8), 1.0, mc4);
    CHECK(std::memcmp(&a.coverage, &b.coverage, sizeof a.coverage) == 0);
    CHECK(a.replications_used == b.replications_used);

    // different seed moves the estimate
    const auto c = sim::estimate_coverage_single(gin_scn(0.8), 1.0, quick(5000, 43));
    CHECK(a.coverage != c.coverage);
}

TEST_CASE("single-tier estimate: SIR invariance under power scaling") {
    auto s1 = gin_scn(0.6);
    auto s2 = s1;
    s2.power = 4.0;  // power-of-two scaling keeps arithmetic exact
    const auto a = sim::estimate_coverage_single(s1, 1.0, quick(3000, 5));
    const auto b = sim::estimate_coverage_single(s2, 1.0, quick(3000, 5));
    CHECK(std::memcmp(&a.coverage, &b.coverage, sizeof a.coverage) == 0);
}

TEST_CASE("single-tier estimate: huge threshold kills coverage") {
    const auto est = sim::estimate_coverage_single(ppp_scn(), 1e6, quick(2000, 9));
    CHECK(est.coverage < 0.01);
}

TEST_CASE("single-tier estimate: ginibre matches analytic within 3 sigma") {
    const double expect = an::coverage_ginibre(gin_scn(1.0), 1.0);
    const auto est = sim::estimate_coverage_single(gin_scn(1.0), 1.0, quick(40000, 21));
    const double se = est.half_width / 1.96;
    CHECK(std::fabs(est.coverage - expect) < 3.0 * se);
}

TEST_CASE("single-tier estimate: erlang interferers match analytic") {
    auto scn = gin_scn(0.8);
    scn.interferer_fading = ch::FadingModel::erlang(3);
    const double expect = an::coverage_ginibre(scn, 1.0);
    const auto est = sim::estimate_coverage_single(scn, 1.0, quick(30000, 31));
    const double se = est.half_width / 1.96;
    CHECK(std::fabs(est.coverage - expect) < 3.0 * se);
}

TEST_CASE("pilot truncation check flags a starved configuration") {
    auto mc = quick(2000, 3);
    mc.pilot_truncation_check = true;
    mc.max_points_per_tier = 1000;
    const auto ok = sim::estimate_coverage_single(ppp_scn(), 1.0, mc);
    CHECK(!ok.truncation_warning);
    CHECK(ok.pilot_shift < 1e-3);

    auto starved = mc;
    starved.max_points_per_tier = 5;  // interference field obviously cut off
    const auto bad = sim::estimate_coverage_single(ppp_scn(), 0.1, starved);
    CHECK(bad.truncation_warning);
}

TEST_CASE("two-tier estimate: symmetric case against frozen analytic") {
    const auto est = sim::estimate_coverage_two_tier(sym_two_tier(), quick(40000, 11));
    const double se = est.half_width / 1.96;
    CHECK(std::fabs(est.coverage - 0.58824945) < 3.0 * se);
    CHECK(est.per_tier_association_freq.size() == 2);
    CHECK(est.per_tier_association_freq[0] + est.per_tier_association_freq[1] ==
          doctest::Approx(1.0));
    // association split frozen from the theta -> 0 analytic parts
    CHECK(std::fabs(est.per_tier_association_freq[0] - 0.56956047) <
          3.0 * std::sqrt(0.57 * 0.43 / 40000.0));
    CHECK(est.per_tier_coverage[0] + est.per_tier_coverage[1] ==
          doctest::Approx(est.coverage));
}

TEST_CASE("two-tier estimate: reproducibility across workers") {
    auto mc1 = quick(4000, 77);
    mc1.workers = 1;
    auto mc3 = quick(4000, 77);
    mc3.workers = 3;
    const auto a = sim::estimate_coverage_two_tier(sym_two_tier(), mc1);
    const auto b = sim::estimate_coverage_two_tier(sym_two_tier(), mc3);
    CHECK(std::memcmp(&a.coverage, &b.coverage, sizeof a.coverage) == 0);
    CHECK(a.per_tier_association_freq == b.per_tier_association_freq);
}

TEST_CASE("two-tier estimate: bias raises own-tier association") {
    auto base = sym_two_tier();
    const auto a = sim::estimate_coverage_two_tier(base, quick(8000, 13));
    auto boosted = base;
    boosted.tier2.bias = 8.0;
    const auto b = sim::estimate_coverage_two_tier(boosted, quick(8000, 13));
    CHECK(b.per_tier_association_freq[1] > a.per_tier_association_freq[1]);
}

TEST_CASE("two-tier estimate: common bias/power scaling is bitwise invariant") {
    auto base = sym_two_tier();
    const auto a = sim::estimate_coverage_two_tier(base, quick(4000, 29));
    auto sb = base;
    sb.tier1.bias *= 2.0;
    sb.tier2.bias *= 2.0;
    const auto b = sim::estimate_coverage_two_tier(sb, quick(4000, 29));
    CHECK(std::memcmp(&a.coverage, &b.coverage, sizeof a.coverage) == 0);
    auto sp = base;
    sp.tier1.power *= 0.25;
    sp.tier2.power *= 0.25;
    const auto c = sim::estimate_coverage_two_tier(sp, quick(4000, 29));
    CHECK(std::memcmp(&a.coverage, &c.coverage, sizeof a.coverage) == 0);
}

TEST_CASE("two-tier estimate: vanishing tier 2") {
    auto scn = sym_two_tier();
    scn.tier2.deployment = pp::PoissonModel{1e-8};
    const auto est = sim::estimate_coverage_two_tier(scn, quick(5000, 17));
    CHECK(est.per_tier_association_freq[0] > 0.999);
    CHECK(est.per_tier_association_freq[1] < 1e-3);
    const double single = an::coverage_ginibre(gin_scn(1.0), 1.0);
    const double se = std::max(est.half_width / 1.96, 1e-4);
    CHECK(std::fabs(est.coverage - single) < 4.0 * se);
}

TEST_CASE("two-tier estimate: general delta accepted by the MC path") {
    auto scn = sym_two_tier();
    scn.tier1.antennas = 4;
    scn.tier1.served_users = 2;  // delta = 3: no analytic counterpart
    const auto est = sim::estimate_coverage_two_tier(scn, quick(2000, 23));
    CHECK(est.coverage > 0.0);
    CHECK(est.coverage < 1.0);
}

TEST_CASE("mc config validation") {
    sim::McConfig bad;
    bad.replications = 50;
    CHECK_THROWS_AS(bad.validate(), std::domain_error);
    sim::McConfig bad2;
    bad2.confidence_level = 1.0;
    CHECK_THROWS_AS(bad2.validate(), std::domain_error);
    CHECK_THROWS_AS(sim::estimate_coverage_single(ppp_scn(), 0.0, quick(1000)),
                    std::domain_error);
}

TEST_CASE("worker resolution honors GINICELL_THREADS") {
    setenv("GINICELL_THREADS", "3", 1);
    CHECK(sim::resolve_workers(0) == 3);
    CHECK(sim::resolve_workers(7) == 7);  // explicit request wins
    setenv("GINICELL_THREADS", "0", 1);
    CHECK(sim::resolve_workers(0) >= 1);  // nonsense value falls back
    unsetenv("GINICELL_THREADS");
    CHECK(sim::resolve_workers(0) >= 1);
}
