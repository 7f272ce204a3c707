#ifndef GINICELL_POINTPROC_HPP
#define GINICELL_POINTPROC_HPP

#include <complex>
#include <cstdint>
#include <vector>

namespace ginicell::pointproc {

// Repulsive deployment model: alpha in (0,1] interpolates between the
// fully repulsive case (alpha = 1) and the Poisson limit (alpha -> 0).
// lambda is the stationary intensity in points per unit area.
struct GinibreModel {
    double alpha = 1.0;
    double lambda = 1.0;

    void validate() const;
};

struct PoissonModel {
    double lambda = 1.0;
};

// Sorted squared radii of sampled base-station locations. Angles are never
// sampled: every statistic we compute is radial.
struct RadialConfiguration {
    std::vector<double> squared_radii;  // ascending, strictly positive
    bool origin_conditioned = false;    // true for reduced-Palm samples
};

struct CountingStatistics {
    double mean = 0.0;
    double variance = 0.0;
    std::vector<double> eigenvalues;  // kappa_i, nonincreasing, in [0, alpha]
};

// kappa_i = alpha * P(i, pi*lambda*r^2/alpha), i >= 1. The Bernoulli
// success probability of the i-th candidate landing inside the disk of
// radius r.
double kernel_eigenvalue(const GinibreModel& model, int i, double r);

// Mean and variance of the disk count D_r via the Bernoulli representation:
// mean = sum kappa_i (= lambda*pi*r^2), variance = sum kappa_i(1-kappa_i).
// max_eigenvalues caps the stored eigenvalue list (0 = automatic; the sums
// themselves always include an analytic tail).
CountingStatistics disk_count_statistics(const GinibreModel& model, double r,
                                         int max_eigenvalues = 0);

// Exact radial sampler: candidate i has squared radius Gamma(i, pi*lambda/alpha)
// and survives independently with probability alpha. Retained values sorted.
RadialConfiguration sample_radial(const GinibreModel& model, int max_points,
                                  std::uint64_t seed);

// Same construction under the reduced Palm distribution at the origin:
// candidate shapes are i+1 instead of i.
RadialConfiguration sample_radial_palm(const GinibreModel& model,
                                       int max_points, std::uint64_t seed);

// Squared radii of a planar Poisson process: arrival times of a rate
// pi*lambda process on [0, inf).
RadialConfiguration sample_poisson_radial(double lambda, int max_points,
                                          std::uint64_t seed);

// Pair correlation g(d) = 1 - exp(-pi*lambda*d^2/alpha); 0 at contact,
// 1 at infinity.
double pair_correlation(const GinibreModel& model, double d);

// Kernel of the process conditioned on a point at the origin (that point
// removed): exp(pi*lambda*z*conj(w)/alpha) - 1.
std::complex<double> palm_kernel(const GinibreModel& model,
                                 std::complex<double> z,
                                 std::complex<double> w);

// P(nearest point farther than r) = prod_i (1 - kappa_i).
double nearest_distance_sf(const GinibreModel& model, double r);

// Smallest candidate count N such that the N-th candidate lies beyond the
// observation radius except with probability < 1e-10.
int default_max_points(const GinibreModel& model, double observation_radius);

} // namespace ginicell::pointproc

#endif
