#include "ginicell/multitier.hpp"

#include <algorithm>
#include <cmath>

#include "ginicell/detail/factor_series.hpp"

namespace ginicell::multitier {

namespace {

constexpr double kPi = 3.14159265358979323846;

using analytic::SeriesTruncation;
using analytic::TruncationError;
using numerics::QuadratureSpec;

// weight seen from a tier-2 serving station: w(u) = 1 - (1 + A u^{-beta1})^{-psi1}
detail::FactorSeriesInput cross_input(double alpha, double c, double coeff_a,
                                      double beta1, int psi1, double tol,
                                      int max_terms) {
    detail::FactorSeriesInput in;
    in.alpha = alpha;
    in.c = c;
    in.w = [coeff_a, beta1, psi1](double u) {
        const double s = coeff_a * std::pow(u, -beta1);
        return -std::expm1(-psi1 * std::log1p(s));
    };
    in.tail_coeff = psi1 * coeff_a;
    in.tail_beta = beta1;
    in.tol_log_m = tol;
    in.max_terms = max_terms;
    in.need_scaled_sum = false;
    return in;
}

struct Params {
    double alpha, lam1, lam2, p1, p2, b1, b2, beta1, beta2;
    int psi1, psi2;
};

Params unpack(const TwoTierScenario& scn) {
    const auto& g = scn.ginibre();
    const auto& p = scn.poisson();
    return {g.alpha,        g.lambda,          p.lambda,
            scn.tier1.power, scn.tier2.power,  scn.tier1.bias,
            scn.tier2.bias,  scn.tier1.pathloss.beta, scn.tier2.pathloss.beta,
            scn.tier1.served_users, scn.tier2.served_users};
}

} // namespace

void TwoTierScenario::validate() const {
    tier1.validate();
    tier2.validate();
    if (!std::holds_alternative<pointproc::GinibreModel>(tier1.deployment))
        throw std::domain_error("TwoTierScenario: tier 1 must use the Ginibre deployment");
    if (!std::holds_alternative<pointproc::PoissonModel>(tier2.deployment))
        throw std::domain_error("TwoTierScenario: tier 2 must use the Poisson deployment");
    if (tier1.antennas != tier1.served_users || tier2.antennas != tier2.served_users)
        throw std::domain_error("TwoTierScenario: analytic path requires served_users == antennas");
    if (!(theta1 > 0.0) || !(theta2 > 0.0))
        throw std::domain_error("TwoTierScenario: thresholds must be positive");
}

const pointproc::GinibreModel& TwoTierScenario::ginibre() const {
    return std::get<pointproc::GinibreModel>(tier1.deployment);
}

const pointproc::PoissonModel& TwoTierScenario::poisson() const {
    return std::get<pointproc::PoissonModel>(tier2.deployment);
}

double assoc_radius_1to2(const TwoTierScenario& scn, double r) {
    if (!(r > 0.0)) throw std::domain_error("assoc_radius_1to2: r must be positive");
    const Params q = unpack(scn);
    const double ratio = (q.b2 * q.p2) / (q.b1 * q.p1);
    return std::pow(ratio, 1.0 / (2.0 * q.beta2)) * std::pow(r, q.beta1 / q.beta2);
}

double assoc_radius_2to1(const TwoTierScenario& scn, double r) {
    if (!(r > 0.0)) throw std::domain_error("assoc_radius_2to1: r must be positive");
    const Params q = unpack(scn);
    const double ratio = (q.b1 * q.p1) / (q.b2 * q.p2);
    return std::pow(ratio, 1.0 / (2.0 * q.beta1)) * std::pow(r, q.beta2 / q.beta1);
}

double tau_12(const TwoTierScenario& scn, double theta, double beta,
              const QuadratureSpec& spec) {
    const Params q = unpack(scn);
    return analytic::tau_weighted(theta, beta, q.psi2, q.b1 / q.b2, spec);
}

CrossTerms cross_terms(const TwoTierScenario& scn, double t) {
    if (!(t > 0.0)) throw std::domain_error("cross_terms: t must be positive");
    const Params q = unpack(scn);
    CrossTerms out;
    out.c12 = kPi * q.lam2 * std::pow((q.b2 * q.p2) / (q.b1 * q.p1), 1.0 / q.beta2) *
              std::pow(q.alpha * t / (kPi * q.lam1), q.beta1 / q.beta2);
    out.c21 = (kPi * q.lam1 / q.alpha) *
              std::pow((q.b1 * q.p1) / (q.b2 * q.p2), 1.0 / q.beta1) *
              std::pow(t / (kPi * q.lam2), q.beta2 / q.beta1);
    return out;
}

namespace {

double cross_boundary_21(const Params& q, double t) {
    return (kPi * q.lam1 / q.alpha) *
           std::pow((q.b1 * q.p1) / (q.b2 * q.p2), 1.0 / q.beta1) *
           std::pow(t / (kPi * q.lam2), q.beta2 / q.beta1);
}

double cross_coeff_21(const Params& q, double t, double theta) {
    return theta * (q.p1 / q.p2) * std::pow(t / (kPi * q.lam2), q.beta2) *
           std::pow(kPi * q.lam1 / q.alpha, q.beta1);
}

// cheap lower bound on sum_i D_i: the boundary index plus at least half
// weight wherever the Laplace argument exceeds one
double sum_d_lower_21(const Params& q, double t, double theta) {
    const double c = cross_boundary_21(q, t);
    const double a = cross_coeff_21(q, t, theta);
    return c + 0.5 * std::max(0.0, std::pow(a, 1.0 / q.beta1) - c);
}

double log_m21(const Params& q, double t, double theta, double tol,
               int max_terms, bool* converged, double* bound) {
    const double c = cross_boundary_21(q, t);
    *converged = true;
    *bound = 0.0;
    if (q.alpha * c > 300.0) return -q.alpha * c;  // product is zero to >120 digits
    const double coeff_a = cross_coeff_21(q, t, theta);
    auto in = cross_input(q.alpha, c, coeff_a, q.beta1, q.psi1, tol, max_terms);
    in.sum_d_exact = c + detail::weight_tail_integral(in.w, c, in.tail_coeff, in.tail_beta);
    const auto r = detail::factor_series(in);
    *converged = r.converged;
    *bound = r.tail_bound;
    return r.log_m;
}

} // namespace

double M_alpha_21(const TwoTierScenario& scn, double t, double theta,
                  const SeriesTruncation& trunc) {
    scn.validate();
    trunc.validate();
    if (!(t > 0.0)) throw std::domain_error("M_alpha_21: t must be positive");
    if (theta < 0.0) throw std::domain_error("M_alpha_21: theta must be nonnegative");
    const Params q = unpack(scn);
    bool ok = false;
    double bound = 0.0;
    const double lm = log_m21(q, t, theta, trunc.factor_tolerance,
                              trunc.max_terms, &ok, &bound);
    if (!ok)
        throw TruncationError("M_alpha_21: max_terms exhausted", std::exp(lm), bound);
    return std::exp(lm);
}

TwoTierCoverage coverage_two_tier(const TwoTierScenario& scn,
                                  const SeriesTruncation& trunc,
                                  const QuadratureSpec& spec) {
    scn.validate();
    trunc.validate();
    const Params q = unpack(scn);
    const double ft = trunc.factor_tolerance;

    TwoTierCoverage out;

    // --- user served by tier 1 ---
    {
        const double tau1 = analytic::tau_weighted(scn.theta1, q.beta1, q.psi1, 1.0, spec);
        const double tau12 =
            analytic::tau_weighted(scn.theta1, q.beta2, q.psi2, q.b1 / q.b2, spec);
        const double c12k = kPi * q.lam2 *
                            std::pow((q.b2 * q.p2) / (q.b1 * q.p1), 1.0 / q.beta2) *
                            std::pow(q.alpha / (kPi * q.lam1), q.beta1 / q.beta2);
        const double e12 = q.beta1 / q.beta2;
        const double decay = q.alpha * (1.0 + tau1);

        double t_cut = 1.0;
        while (decay * t_cut + c12k * std::pow(t_cut, e12) * (1.0 + tau12) < 42.0 &&
               t_cut < 1e12)
            t_cut *= 2.0;

        auto h1 = [&](double t) -> double {
            if (t <= 0.0) return q.alpha;
            const double cross_e = c12k * std::pow(t, e12) * (1.0 + tau12);
            const double relax = std::exp(std::min(40.0, decay * t + cross_e));
            const double tol = std::min(0.05, 6.0 * ft * relax);
            detail::FactorSeriesInput in;
            in.alpha = q.alpha;
            in.c = t;
            const double theta1 = scn.theta1;
            const double beta1 = q.beta1;
            const int psi1 = q.psi1;
            in.w = [theta1, t, beta1, psi1](double u) {
                const double s = theta1 * std::pow(t / u, beta1);
                return -std::expm1(-psi1 * std::log1p(s));
            };
            in.tail_coeff = q.psi1 * scn.theta1 * std::pow(t, q.beta1);
            in.tail_beta = q.beta1;
            in.sum_d_exact = t * (1.0 + tau1);
            in.tol_log_m = tol;
            in.max_terms = trunc.max_terms;
            in.need_scaled_sum = true;
            const auto r = detail::factor_series(in);
            if (!r.converged)
                throw TruncationError(
                    "coverage_two_tier: tier-1 factor series exceeded max_terms at t=" +
                        std::to_string(t),
                    0.0, r.tail_bound);
            const double expo =
                r.log_m - c12k * std::pow(t, e12) * (1.0 + tau12);
            return q.alpha * std::exp(expo) * r.scaled_sum;
        };
        QuadratureSpec outer = spec;
        outer.relative_tolerance = std::max(spec.relative_tolerance, 30.0 * ft);
        outer.absolute_tolerance = std::max(spec.absolute_tolerance, ft);
        out.tier1_part = std::clamp(
            numerics::integrate_finite(h1, 0.0, t_cut, outer), 0.0, 1.0);
    }

    // --- user served by tier 2 ---
    {
        const double tau2 = analytic::tau_weighted(scn.theta2, q.beta2, q.psi2, 1.0, spec);
        const double t_cut = 42.0 / (1.0 + tau2);
        auto h2 = [&](double t) -> double {
            if (t <= 0.0) return 1.0;
            const double envelope =
                (1.0 + tau2) * t + q.alpha * sum_d_lower_21(q, t, scn.theta2);
            const double relax = std::exp(std::min(40.0, envelope));
            const double tol = std::min(0.05, 6.0 * ft * relax);
            bool ok = false;
            double bound = 0.0;
            const double lm =
                log_m21(q, t, scn.theta2, tol, trunc.max_terms, &ok, &bound);
            if (!ok)
                throw TruncationError(
                    "coverage_two_tier: tier-2 factor series exceeded max_terms at t=" +
                        std::to_string(t),
                    0.0, bound);
            return std::exp(lm - (1.0 + tau2) * t);
        };
        QuadratureSpec outer = spec;
        outer.relative_tolerance = std::max(spec.relative_tolerance, 30.0 * ft);
        outer.absolute_tolerance = std::max(spec.absolute_tolerance, ft);
        out.tier2_part = std::clamp(
            numerics::integrate_finite(h2, 0.0, t_cut, outer), 0.0, 1.0);
    }

    out.total = std::min(1.0, out.tier1_part + out.tier2_part);
    return out;
}

} // namespace ginicell::multitier
