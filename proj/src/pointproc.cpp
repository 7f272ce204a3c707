#include "ginicell/pointproc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ginicell/numerics.hpp"
#include "ginicell/rng.hpp"

namespace ginicell::pointproc {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr std::uint64_t kStreamRadial = 0x67696E6962726531ull;

using numerics::regularized_lower_gamma;
} // namespace

void GinibreModel::validate() const {
    if (!(alpha > 0.0) || !(alpha <= 1.0))
        throw std::domain_error("GinibreModel: alpha must lie in (0, 1]");
    if (!(lambda > 0.0))
        throw std::domain_error("GinibreModel: lambda must be positive");
}

double kernel_eigenvalue(const GinibreModel& model, int i, double r) {
    model.validate();
    if (i < 1) throw std::domain_error("kernel_eigenvalue: index must be >= 1");
    if (!(r > 0.0)) throw std::domain_error("kernel_eigenvalue: radius must be positive");
    const double x = kPi * model.lambda * r * r / model.alpha;
    return model.alpha * regularized_lower_gamma(static_cast<double>(i), x);
}

CountingStatistics disk_count_statistics(const GinibreModel& model, double r,
                                         int max_eigenvalues) {
    model.validate();
    if (!(r > 0.0)) throw std::domain_error("disk_count_statistics: radius must be positive");
    const double a = model.alpha;
    const double x = kPi * model.lambda * r * r / a;

    CountingStatistics out;
    int i = 1;
    double p = 1.0;
    while (true) {
        p = regularized_lower_gamma(static_cast<double>(i), x);
        const double kappa = a * p;
        if (kappa < 1e-14 && i > x) break;
        out.mean += kappa;
        out.variance += kappa * (1.0 - kappa);
        if (max_eigenvalues == 0 || static_cast<int>(out.eigenvalues.size()) < max_eigenvalues)
            out.eigenvalues.push_back(kappa);
        ++i;
        if (i > 100000000) break;
    }
    // analytic remainder: sum_{k>N} P(k,x) = x P(N,x) - N P(N+1,x)
    const int n = i - 1;
    if (n >= 1) {
        const double tail = x * regularized_lower_gamma(n, x) -
                            n * regularized_lower_gamma(n + 1, x);
        out.mean += a * std::max(0.0, tail);
        out.variance += a * std::max(0.0, tail);  // kappa ~ 0 there
    }
    return out;
}

RadialConfiguration sample_radial(const GinibreModel& model, int max_points,
                                  std::uint64_t seed) {
    model.validate();
    if (max_points < 1) throw std::domain_error("sample_radial: max_points must be >= 1");
    rng::Stream s = rng::Stream::derive(seed, kStreamRadial);
    const double rate = kPi * model.lambda / model.alpha;

    RadialConfiguration cfg;
    cfg.squared_radii.reserve(static_cast<std::size_t>(max_points * model.alpha) + 16);
    for (int i = 1; i <= max_points; ++i) {
        // thinning decision first, gamma drawn only for survivors
        const bool keep = s.next_double() < model.alpha;
        if (keep) cfg.squared_radii.push_back(s.gamma(static_cast<double>(i)) / rate);
    }
    std::sort(cfg.squared_radii.begin(), cfg.squared_radii.end());
    return cfg;
}

RadialConfiguration sample_radial_palm(const GinibreModel& model,
                                       int max_points, std::uint64_t seed) {
    model.validate();
    if (max_points < 1) throw std::domain_error("sample_radial_palm: max_points must be >= 1");
    rng::Stream s = rng::Stream::derive(seed, kStreamRadial, 1);
    const double rate = kPi * model.lambda / model.alpha;

    RadialConfiguration cfg;
    cfg.origin_conditioned = true;
    cfg.squared_radii.reserve(static_cast<std::size_t>(max_points * model.alpha) + 16);
    for (int i = 1; i <= max_points; ++i) {
        const bool keep = s.next_double() < model.alpha;
        if (keep) cfg.squared_radii.push_back(s.gamma(static_cast<double>(i + 1)) / rate);
    }
    std::sort(cfg.squared_radii.begin(), cfg.squared_radii.end());
    return cfg;
}

RadialConfiguration sample_poisson_radial(double lambda, int max_points,
                                          std::uint64_t seed) {
    if (!(lambda > 0.0)) throw std::domain_error("sample_poisson_radial: lambda must be positive");
    if (max_points < 1) throw std::domain_error("sample_poisson_radial: max_points must be >= 1");
    rng::Stream s = rng::Stream::derive(seed, kStreamRadial, 2);
    const double rate = kPi * lambda;

    RadialConfiguration cfg;
    cfg.squared_radii.resize(static_cast<std::size_t>(max_points));
    double t = 0.0;
    for (int i = 0; i < max_points; ++i) {
        t += s.exponential() / rate;
        cfg.squared_radii[static_cast<std::size_t>(i)] = t;
    }
    return cfg;
}

double pair_correlation(const GinibreModel& model, double d) {
    model.validate();
    if (d < 0.0) throw std::domain_error("pair_correlation: distance must be nonnegative");
    return -std::expm1(-kPi * model.lambda * d * d / model.alpha);
}

std::complex<double> palm_kernel(const GinibreModel& model,
                                 std::complex<double> z,
                                 std::complex<double> w) {
    model.validate();
    const std::complex<double> e = z * std::conj(w) * (kPi * model.lambda / model.alpha);
    return std::exp(e) - 1.0;
}

double nearest_distance_sf(const GinibreModel& model, double r) {
    model.validate();
    if (!(r > 0.0)) throw std::domain_error("nearest_distance_sf: radius must be positive");
    const double x = kPi * model.lambda * r * r / model.alpha;
    double log_sf = 0.0;
    for (int i = 1;; ++i) {
        const double p = regularized_lower_gamma(static_cast<double>(i), x);
        if (p < 1e-18 && i > x) break;
        log_sf += std::log1p(-model.alpha * p);
        if (i > 100000000) break;
    }
    return std::exp(log_sf);
}

int default_max_points(const GinibreModel& model, double observation_radius) {
    model.validate();
    if (!(observation_radius > 0.0))
        throw std::domain_error("default_max_points: radius must be positive");
    const double x = kPi * model.lambda * observation_radius * observation_radius / model.alpha;
    int lo = 1, hi = 2;
    while (regularized_lower_gamma(static_cast<double>(hi), x) >= 1e-10) {
        lo = hi;
        hi *= 2;
        if (hi > (1 << 28)) return hi;
    }
    while (lo < hi) {
        const int mid = lo + (hi - lo) / 2;
        if (regularized_lower_gamma(static_cast<double>(mid), x) < 1e-10)
            hi = mid;
        else
            lo = mid + 1;
    }
    return lo;
}

} // namespace ginicell::pointproc
