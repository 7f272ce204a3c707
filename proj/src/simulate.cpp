#include "ginicell/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

#include "ginicell/rng.hpp"

namespace ginicell::simulate {

namespace {

using pointproc::GinibreModel;
using pointproc::PoissonModel;
using pointproc::RadialConfiguration;
using rng::Stream;

// stream purposes; every replication gets its own streams as a pure
// function of (master_seed, purpose, replication, tier)
constexpr std::uint64_t kPurposePoints = 1;
constexpr std::uint64_t kPurposeFading = 2;
constexpr std::uint64_t kPurposePilotPoints = 3;
constexpr std::uint64_t kPurposePilotFading = 4;

std::uint64_t sub_seed(std::uint64_t master, std::uint64_t purpose,
                       std::uint64_t rep, std::uint64_t tier) {
    return Stream::derive(master, purpose, rep, tier).next_u64();
}

// Acklam's rational approximation of the standard normal quantile.
double normal_quantile(double p) {
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425;
    double q, r;
    if (p < plow) {
        q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    if (p > 1.0 - plow) {
        q = std::sqrt(-2.0 * std::log(1.0 - p));
        return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    q = p - 0.5;
    r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

struct CiResult {
    double half = 0.0;
};

CiResult binomial_ci(long successes, long n, double confidence) {
    const double z = normal_quantile(0.5 * (1.0 + confidence));
    const double p = static_cast<double>(successes) / static_cast<double>(n);
    const double normal_half = z * std::sqrt(std::max(p * (1.0 - p), 0.0) / n);
    // Wilson near the boundaries where the normal interval degenerates
    if (p < 5.0 * normal_half || p > 1.0 - 5.0 * normal_half) {
        const double z2 = z * z;
        const double half =
            z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / (1.0 + z2 / n);
        return {half};
    }
    return {normal_half};
}

// Fixed chunk grid: aggregation order never depends on the worker count,
// so estimates are bit-identical under any parallel schedule.
template <typename PerRep, typename Counts>
void run_chunked(long reps, int workers, const PerRep& per_rep,
                 std::vector<Counts>& chunk_counts) {
    const int chunks = static_cast<int>(std::min<long>(256, reps));
    chunk_counts.assign(chunks, Counts{});
    std::atomic<int> next{0};
    auto worker = [&]() {
        for (;;) {
            const int c = next.fetch_add(1);
            if (c >= chunks) return;
            const long lo = reps * c / chunks;
            const long hi = reps * (c + 1) / chunks;
            Counts acc{};
            for (long r = lo; r < hi; ++r) per_rep(r, acc);
            chunk_counts[static_cast<std::size_t>(c)] = acc;
        }
    };
    if (workers <= 1) {
        worker();
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int k = 0; k < workers; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

struct SingleCounts {
    long covered = 0;
    long empty = 0;
};

struct TwoTierCounts {
    long covered1 = 0;
    long covered2 = 0;
    long assoc1 = 0;
    long assoc2 = 0;
    long empty = 0;
};

bool single_rep_covered(const analytic::SingleTierScenario& s, double theta,
                        int max_points, std::uint64_t master, long rep,
                        bool* empty) {
    RadialConfiguration cfg;
    if (const auto* g = std::get_if<GinibreModel>(&s.deployment)) {
        cfg = pointproc::sample_radial(
            *g, max_points, sub_seed(master, kPurposePoints, rep, 1));
    } else {
        cfg = pointproc::sample_poisson_radial(
            std::get<PoissonModel>(s.deployment).lambda, max_points,
            sub_seed(master, kPurposePoints, rep, 1));
    }
    if (cfg.squared_radii.empty()) {
        *empty = true;
        return false;
    }
    *empty = false;
    Stream fs(sub_seed(master, kPurposeFading, rep, 0));
    const double beta = s.pathloss.beta;
    const double h = fs.exponential();
    const double num = s.power * h * std::pow(cfg.squared_radii[0], -beta);
    double den = s.noise;
    for (std::size_t j = 1; j < cfg.squared_radii.size(); ++j) {
        const double g = channel::sample_fading(s.interferer_fading, fs);
        den += s.power * g * std::pow(cfg.squared_radii[j], -beta);
    }
    return num > theta * den;
}

// Paired truncation pilot: evaluate the same replication with the
// interference field truncated at N and at 2N candidates. Shared draws per
// candidate make the comparison nearly noise-free.
double single_pilot_shift(const analytic::SingleTierScenario& s, double theta,
                          int n, long pilot_reps, std::uint64_t master) {
    const double beta = s.pathloss.beta;
    long diff = 0;
    for (long rep = 0; rep < pilot_reps; ++rep) {
        Stream ps(sub_seed(master, kPurposePilotPoints, rep, 1));
        Stream fs(sub_seed(master, kPurposePilotFading, rep, 0));
        std::vector<int> cand;
        std::vector<double> y;
        if (const auto* g = std::get_if<GinibreModel>(&s.deployment)) {
            const double rate = 3.14159265358979323846 * g->lambda / g->alpha;
            for (int i = 1; i <= 2 * n; ++i) {
                if (ps.next_double() < g->alpha) {
                    cand.push_back(i);
                    y.push_back(ps.gamma(static_cast<double>(i)) / rate);
                }
            }
        } else {
            const double rate =
                3.14159265358979323846 * std::get<PoissonModel>(s.deployment).lambda;
            double t = 0.0;
            for (int i = 1; i <= 2 * n; ++i) {
                t += ps.exponential() / rate;
                cand.push_back(i);
                y.push_back(t);
            }
        }
        const double h = fs.exponential();
        std::vector<double> g(y.size());
        for (auto& v : g) v = channel::sample_fading(s.interferer_fading, fs);

        auto covered_at = [&](int cap) -> int {
            double ymin = 0.0;
            std::size_t serve = y.size();
            for (std::size_t k = 0; k < y.size(); ++k) {
                if (cand[k] > cap) continue;
                if (serve == y.size() || y[k] < ymin) {
                    ymin = y[k];
                    serve = k;
                }
            }
            if (serve == y.size()) return 0;
            double den = s.noise;
            for (std::size_t k = 0; k < y.size(); ++k) {
                if (k == serve || cand[k] > cap) continue;
                den += s.power * g[k] * std::pow(y[k], -beta);
            }
            const double num = s.power * h * std::pow(ymin, -beta);
            return num > theta * den ? 1 : 0;
        };
        diff += covered_at(n) - covered_at(2 * n);
    }
    return std::fabs(static_cast<double>(diff)) / static_cast<double>(pilot_reps);
}

struct TierDraw {
    std::vector<int> cand;
    std::vector<double> y;
    std::vector<double> g;
};

double two_tier_pilot_shift(const multitier::TwoTierScenario& scn, double noise,
                            int n, long pilot_reps, std::uint64_t master) {
    const auto& gm = scn.ginibre();
    const auto& pm = scn.poisson();
    const double beta1 = scn.tier1.pathloss.beta;
    const double beta2 = scn.tier2.pathloss.beta;
    long diff = 0;
    for (long rep = 0; rep < pilot_reps; ++rep) {
        Stream p1(sub_seed(master, kPurposePilotPoints, rep, 1));
        Stream p2(sub_seed(master, kPurposePilotPoints, rep, 2));
        Stream fs(sub_seed(master, kPurposePilotFading, rep, 0));
        TierDraw t1, t2;
        const double rate1 = 3.14159265358979323846 * gm.lambda / gm.alpha;
        for (int i = 1; i <= 2 * n; ++i) {
            if (p1.next_double() < gm.alpha) {
                t1.cand.push_back(i);
                t1.y.push_back(p1.gamma(static_cast<double>(i)) / rate1);
            }
        }
        const double rate2 = 3.14159265358979323846 * pm.lambda;
        double acc = 0.0;
        for (int i = 1; i <= 2 * n; ++i) {
            acc += p2.exponential() / rate2;
            t2.cand.push_back(i);
            t2.y.push_back(acc);
        }
        const double h1 = fs.gamma(static_cast<double>(scn.tier1.delta()));
        const double h2 = fs.gamma(static_cast<double>(scn.tier2.delta()));
        t1.g.resize(t1.y.size());
        for (auto& v : t1.g) v = fs.gamma(static_cast<double>(scn.tier1.served_users));
        t2.g.resize(t2.y.size());
        for (auto& v : t2.g) v = fs.gamma(static_cast<double>(scn.tier2.served_users));

        auto covered_at = [&](int cap) -> int {
            auto best = [cap](const TierDraw& td) {
                std::size_t idx = td.y.size();
                for (std::size_t k = 0; k < td.y.size(); ++k) {
                    if (td.cand[k] > cap) continue;
                    if (idx == td.y.size() || td.y[k] < td.y[idx]) idx = k;
                }
                return idx;
            };
            const std::size_t s1 = best(t1), s2 = best(t2);
            const double w1 =
                s1 < t1.y.size()
                    ? scn.tier1.bias * scn.tier1.power * scn.tier1.delta() *
                          std::pow(t1.y[s1], -beta1)
                    : -1.0;
            const double w2 =
                s2 < t2.y.size()
                    ? scn.tier2.bias * scn.tier2.power * scn.tier2.delta() *
                          std::pow(t2.y[s2], -beta2)
                    : -1.0;
            if (w1 < 0.0 && w2 < 0.0) return 0;
            const bool tier1_serves = w1 >= w2;
            double den = noise;
            for (std::size_t k = 0; k < t1.y.size(); ++k) {
                if (t1.cand[k] > cap || (tier1_serves && k == s1)) continue;
                den += scn.tier1.power * t1.g[k] * std::pow(t1.y[k], -beta1);
            }
            for (std::size_t k = 0; k < t2.y.size(); ++k) {
                if (t2.cand[k] > cap || (!tier1_serves && k == s2)) continue;
                den += scn.tier2.power * t2.g[k] * std::pow(t2.y[k], -beta2);
            }
            const double num = tier1_serves
                                   ? scn.tier1.power * h1 * std::pow(t1.y[s1], -beta1)
                                   : scn.tier2.power * h2 * std::pow(t2.y[s2], -beta2);
            const double th = tier1_serves ? scn.theta1 : scn.theta2;
            return num > th * den ? 1 : 0;
        };
        diff += covered_at(n) - covered_at(2 * n);
    }
    return std::fabs(static_cast<double>(diff)) / static_cast<double>(pilot_reps);
}

} // namespace

void McConfig::validate() const {
    if (replications < 100)
        throw std::domain_error("McConfig: need at least 100 replications");
    if (max_points_per_tier < 1)
        throw std::domain_error("McConfig: max_points_per_tier must be >= 1");
    if (!(confidence_level > 0.0) || !(confidence_level < 1.0))
        throw std::domain_error("McConfig: confidence_level must lie in (0,1)");
}

int resolve_workers(int requested) {
    if (requested >= 1) return std::min(requested, 256);
    if (const char* env = std::getenv("GINICELL_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) return std::min(v, 256);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(std::min(hw, 256u));
}

double sinr_single_tier(const analytic::SingleTierScenario& s,
                        const pointproc::RadialConfiguration& config, double h,
                        std::span<const double> g) {
    s.validate();
    if (config.squared_radii.empty())
        throw std::invalid_argument("sinr_single_tier: empty configuration");
    if (g.size() + 1 < config.squared_radii.size())
        throw std::invalid_argument("sinr_single_tier: need one gain per interferer");
    const double beta = s.pathloss.beta;
    const double num = s.power * h * std::pow(config.squared_radii[0], -beta);
    double den = s.noise;
    for (std::size_t j = 1; j < config.squared_radii.size(); ++j)
        den += s.power * g[j - 1] * std::pow(config.squared_radii[j], -beta);
    return num / den;
}

McEstimate estimate_coverage_single(const analytic::SingleTierScenario& s,
                                    double theta, const McConfig& mc) {
    s.validate();
    mc.validate();
    if (!(theta > 0.0))
        throw std::domain_error("estimate_coverage_single: theta must be positive");

    const int workers = resolve_workers(mc.workers);
    std::vector<SingleCounts> counts;
    run_chunked(mc.replications, workers,
                [&](long rep, SingleCounts& acc) {
                    bool empty = false;
                    if (single_rep_covered(s, theta, mc.max_points_per_tier,
                                           mc.master_seed, rep, &empty))
                        ++acc.covered;
                    if (empty) ++acc.empty;
                },
                counts);
    long covered = 0, empty = 0;
    for (const auto& c : counts) {
        covered += c.covered;
        empty += c.empty;
    }

    McEstimate out;
    out.replications_used = mc.replications;
    out.coverage = static_cast<double>(covered) / static_cast<double>(mc.replications);
    out.half_width = binomial_ci(covered, mc.replications, mc.confidence_level).half;
    out.empty_configurations = empty;
    if (mc.pilot_truncation_check) {
        const long pilot = std::min<long>(4000, mc.replications);
        out.pilot_shift = single_pilot_shift(s, theta, mc.max_points_per_tier,
                                             pilot, mc.master_seed);
        out.truncation_warning = out.pilot_shift > 1e-3;
    }
    return out;
}

McEstimate estimate_coverage_two_tier(const multitier::TwoTierScenario& scn,
                                      const McConfig& mc, double noise) {
    scn.tier1.validate();
    scn.tier2.validate();
    if (!std::holds_alternative<GinibreModel>(scn.tier1.deployment) ||
        !std::holds_alternative<PoissonModel>(scn.tier2.deployment))
        throw std::domain_error("estimate_coverage_two_tier: tier1 Ginibre, tier2 Poisson");
    if (!(scn.theta1 > 0.0) || !(scn.theta2 > 0.0))
        throw std::domain_error("estimate_coverage_two_tier: thresholds must be positive");
    if (!(noise >= 0.0))
        throw std::domain_error("estimate_coverage_two_tier: noise must be nonnegative");
    mc.validate();

    const auto& gm = scn.ginibre();
    const auto& pm = scn.poisson();
    const double beta1 = scn.tier1.pathloss.beta;
    const double beta2 = scn.tier2.pathloss.beta;

    const int workers = resolve_workers(mc.workers);
    std::vector<TwoTierCounts> counts;
    run_chunked(
        mc.replications, workers,
        [&](long rep, TwoTierCounts& acc) {
            const auto cfg1 = pointproc::sample_radial(
                gm, mc.max_points_per_tier,
                sub_seed(mc.master_seed, kPurposePoints, rep, 1));
            const auto cfg2 = pointproc::sample_poisson_radial(
                pm.lambda, mc.max_points_per_tier,
                sub_seed(mc.master_seed, kPurposePoints, rep, 2));
            if (cfg1.squared_radii.empty() && cfg2.squared_radii.empty()) {
                ++acc.empty;
                return;
            }
            const double w1 =
                cfg1.squared_radii.empty()
                    ? -1.0
                    : scn.tier1.bias * scn.tier1.power * scn.tier1.delta() *
                          std::pow(cfg1.squared_radii[0], -beta1);
            const double w2 =
                cfg2.squared_radii.empty()
                    ? -1.0
                    : scn.tier2.bias * scn.tier2.power * scn.tier2.delta() *
                          std::pow(cfg2.squared_radii[0], -beta2);
            const bool tier1_serves = w1 >= w2;
            if (tier1_serves)
                ++acc.assoc1;
            else
                ++acc.assoc2;

            Stream fs(sub_seed(mc.master_seed, kPurposeFading, rep, 0));
            const int delta = tier1_serves ? scn.tier1.delta() : scn.tier2.delta();
            const double h = fs.gamma(static_cast<double>(delta));
            double den = noise;
            for (std::size_t j = 0; j < cfg1.squared_radii.size(); ++j) {
                if (tier1_serves && j == 0) continue;
                const double g = fs.gamma(static_cast<double>(scn.tier1.served_users));
                den += scn.tier1.power * g * std::pow(cfg1.squared_radii[j], -beta1);
            }
            for (std::size_t j = 0; j < cfg2.squared_radii.size(); ++j) {
                if (!tier1_serves && j == 0) continue;
                const double g = fs.gamma(static_cast<double>(scn.tier2.served_users));
                den += scn.tier2.power * g * std::pow(cfg2.squared_radii[j], -beta2);
            }
            const double num =
                tier1_serves
                    ? scn.tier1.power * h * std::pow(cfg1.squared_radii[0], -beta1)
                    : scn.tier2.power * h * std::pow(cfg2.squared_radii[0], -beta2);
            const double th = tier1_serves ? scn.theta1 : scn.theta2;
            if (num > th * den) {
                if (tier1_serves)
                    ++acc.covered1;
                else
                    ++acc.covered2;
            }
        },
        counts);

    long cov1 = 0, cov2 = 0, a1 = 0, a2 = 0, empty = 0;
    for (const auto& c : counts) {
        cov1 += c.covered1;
        cov2 += c.covered2;
        a1 += c.assoc1;
        a2 += c.assoc2;
        empty += c.empty;
    }
    const long covered = cov1 + cov2;

    McEstimate out;
    out.replications_used = mc.replications;
    out.coverage = static_cast<double>(covered) / static_cast<double>(mc.replications);
    out.half_width = binomial_ci(covered, mc.replications, mc.confidence_level).half;
    out.per_tier_association_freq = {
        static_cast<double>(a1) / static_cast<double>(mc.replications),
        static_cast<double>(a2) / static_cast<double>(mc.replications)};
    out.per_tier_coverage = {
        static_cast<double>(cov1) / static_cast<double>(mc.replications),
        static_cast<double>(cov2) / static_cast<double>(mc.replications)};
    out.empty_configurations = empty;
    if (mc.pilot_truncation_check) {
        const long pilot = std::min<long>(4000, mc.replications);
        out.pilot_shift = two_tier_pilot_shift(scn, noise, mc.max_points_per_tier,
                                               pilot, mc.master_seed);
        out.truncation_warning = out.pilot_shift > 1e-3;
    }
    return out;
}

} // namespace ginicell::simulate
