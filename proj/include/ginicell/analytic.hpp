#ifndef GINICELL_ANALYTIC_HPP
#define GINICELL_ANALYTIC_HPP

#include <stdexcept>
#include <string>
#include <variant>

#include "ginicell/channel.hpp"
#include "ginicell/numerics.hpp"
#include "ginicell/pointproc.hpp"

namespace ginicell::analytic {

// Single-tier downlink scenario. The serving link is Rayleigh; the
// interferer channel power may be any unit-rate Erlang.
struct SingleTierScenario {
    std::variant<pointproc::PoissonModel, pointproc::GinibreModel> deployment =
        pointproc::PoissonModel{1.0 / 3.14159265358979323846};
    double power = 1.0;
    double noise = 0.0;
    channel::PathLoss pathloss{2.0};
    channel::FadingModel interferer_fading = channel::FadingModel::rayleigh();

    void validate() const;
};

// Stopping policy for the infinite product/sum evaluations.
struct SeriesTruncation {
    double factor_tolerance = 1e-10;
    int max_terms = 20000;

    void validate() const;
};

class TruncationError : public std::runtime_error {
public:
    TruncationError(const std::string& msg, double best, double bound)
        : std::runtime_error(msg), best_estimate(best), error_bound(bound) {}

    double best_estimate;
    double error_bound;
};

// Interference integral
//   tau(theta,beta) = theta^{1/beta}/beta *
//                     int_{1/theta}^inf (1 - L_G(1/u)) u^{-1+1/beta} du.
double tau(double theta, double beta, const channel::FadingModel& f,
           const numerics::QuadratureSpec& spec = numerics::QuadratureSpec{});

// Same integral with the Laplace argument scaled by `ratio` (bias ratio in
// the cross-tier term). tau == tau_weighted(..., ratio=1).
double tau_weighted(double theta, double beta, int shape, double ratio,
                    const numerics::QuadratureSpec& spec = numerics::QuadratureSpec{});

// J_i(t,theta,beta) = 1/i! int_t^inf e^{-u} u^i L_G(theta (t/u)^beta) du.
double J_i(int i, double t, double theta, double beta,
           const channel::FadingModel& f,
           const numerics::QuadratureSpec& spec = numerics::QuadratureSpec{});

// M_alpha = prod_{i>=0} [1 - alpha + alpha J_i], accumulated in log space
// with an exact first-moment tail correction past the truncation point.
double M_alpha(double alpha, double t, double theta, double beta,
               const channel::FadingModel& f,
               const SeriesTruncation& trunc = SeriesTruncation{});

// S_alpha = sum_{i>=0} t^i/i! [1 - alpha + alpha J_i]^{-1}. Grows like e^t;
// overflows to +inf for t beyond ~700 (the coverage integrals use an
// internal e^{-t}-scaled form and are unaffected).
double S_alpha(double alpha, double t, double theta, double beta,
               const channel::FadingModel& f,
               const SeriesTruncation& trunc = SeriesTruncation{});

// Coverage of the typical user for Poisson deployment.
double coverage_ppp(const SingleTierScenario& s, double theta,
                    const numerics::QuadratureSpec& spec = numerics::QuadratureSpec{});

// Coverage for the repulsive (alpha-Ginibre) deployment.
double coverage_ginibre(const SingleTierScenario& s, double theta,
                        const SeriesTruncation& trunc = SeriesTruncation{},
                        const numerics::QuadratureSpec& spec = numerics::QuadratureSpec{});

} // namespace ginicell::analytic

#endif
