#include "ginicell/analytic.hpp"

#include <algorithm>
#include <cmath>

#include "ginicell/detail/factor_series.hpp"

namespace ginicell::analytic {

namespace {

constexpr double kPi = 3.14159265358979323846;

using channel::FadingModel;
using numerics::QuadratureSpec;

// 1 - (1+s)^{-shape}, stable for tiny s
inline double one_minus_laplace(int shape, double s) {
    return -std::expm1(-shape * std::log1p(s));
}

double solve_envelope_cutoff(const std::function<double(double)>& exponent,
                             double target) {
    double hi = 1.0;
    while (exponent(hi) < target && hi < 1e12) hi *= 2.0;
    double lo = 0.0;
    for (int k = 0; k < 200 && hi - lo > 1e-9 * hi; ++k) {
        const double mid = 0.5 * (lo + hi);
        (exponent(mid) < target ? lo : hi) = mid;
    }
    return hi;
}

} // namespace

void SingleTierScenario::validate() const {
    if (!(power > 0.0)) throw std::domain_error("SingleTierScenario: power must be positive");
    if (!(noise >= 0.0)) throw std::domain_error("SingleTierScenario: noise must be nonnegative");
    pathloss.validate();
    interferer_fading.validate();
    if (const auto* g = std::get_if<pointproc::GinibreModel>(&deployment)) g->validate();
    if (const auto* p = std::get_if<pointproc::PoissonModel>(&deployment)) {
        if (!(p->lambda > 0.0))
            throw std::domain_error("SingleTierScenario: lambda must be positive");
    }
}

void SeriesTruncation::validate() const {
    if (!(factor_tolerance > 0.0))
        throw std::domain_error("SeriesTruncation: factor_tolerance must be positive");
    if (max_terms < 1)
        throw std::domain_error("SeriesTruncation: max_terms must be >= 1");
}

double tau_weighted(double theta, double beta, int shape, double ratio,
                    const QuadratureSpec& spec) {
    if (theta == 0.0) return 0.0;
    if (!(theta > 0.0)) throw std::domain_error("tau: theta must be positive");
    if (!(beta > 1.0)) throw std::domain_error("tau: beta must exceed 1");
    if (shape < 1) throw std::domain_error("tau: fading shape must be >= 1");
    if (!(ratio > 0.0)) throw std::domain_error("tau: bias ratio must be positive");

    // After u = w^beta/theta the integral is int_1^inf (1 - L(ratio*theta*
    // w^{-beta})) dw; w = y^{-q} then maps it onto (0,1] with the endpoint
    // behaving like y^{q(beta-1)-1}.
    const double q = std::clamp(std::ceil(3.0 / (beta - 1.0)), 5.0, 200.0);
    auto g = [&](double y) {
        if (y <= 0.0) return 0.0;
        const double ly = std::log(y);
        const double s = ratio * theta * std::exp(q * beta * ly);
        const double jac = q * std::exp(-(q + 1.0) * ly);
        if (s < 1e-250) return shape * s * jac;  // avoids 0*inf at the endpoint
        return one_minus_laplace(shape, s) * jac;
    };
    return numerics::integrate_finite(g, 0.0, 1.0, spec);
}

double tau(double theta, double beta, const FadingModel& f,
           const QuadratureSpec& spec) {
    f.validate();
    return tau_weighted(theta, beta, f.shape, 1.0, spec);
}

double J_i(int i, double t, double theta, double beta, const FadingModel& f,
           const QuadratureSpec& spec) {
    if (i < 0) throw std::domain_error("J_i: index must be >= 0");
    if (!(t > 0.0)) throw std::domain_error("J_i: t must be positive");
    if (theta < 0.0) throw std::domain_error("J_i: theta must be nonnegative");
    if (!(beta > 1.0)) throw std::domain_error("J_i: beta must exceed 1");
    f.validate();

    const double lg = numerics::log_gamma(i + 1.0);
    auto g = [&](double u) {
        const double lp = i * std::log(u) - u - lg;
        if (lp < -720.0) return 0.0;
        const double s = theta * std::pow(t / u, beta);
        return std::exp(lp - f.shape * std::log1p(s));
    };
    const double hi =
        std::max(t + 16.0 * std::sqrt(t + 1.0), i + 1.0 + 16.0 * std::sqrt(i + 2.0)) + 16.0;
    // scale the absolute tolerance to the peak of the Poisson kernel
    const double um = std::max(t, static_cast<double>(i) + 1.0);
    const double lpeak = i * std::log(um) - um - lg;
    QuadratureSpec inner = spec;
    inner.relative_tolerance = std::min(spec.relative_tolerance, 1e-10);
    inner.absolute_tolerance =
        std::max(1e-300, 1e-13 * std::exp(std::max(-690.0, lpeak)));
    const double v = numerics::integrate_finite(g, t, hi, inner);
    return std::clamp(v, 0.0, 1.0);
}

namespace {

// Everything the factor engine needs for the single-tier weight
// w(u) = 1 - L_G(theta (t/u)^beta).
detail::FactorSeriesInput single_tier_input(double alpha, double t, double theta,
                                            double beta, int shape,
                                            double sum_d_exact, double tol,
                                            int max_terms, bool need_sum) {
    detail::FactorSeriesInput in;
    in.alpha = alpha;
    in.c = t;
    in.w = [theta, t, beta, shape](double u) {
        const double s = theta * std::pow(t / u, beta);
        return -std::expm1(-shape * std::log1p(s));
    };
    in.tail_coeff = shape * theta * std::pow(t, beta);
    in.tail_beta = beta;
    in.sum_d_exact = sum_d_exact;
    in.tol_log_m = tol;
    in.max_terms = max_terms;
    in.need_scaled_sum = need_sum;
    return in;
}

} // namespace

double M_alpha(double alpha, double t, double theta, double beta,
               const FadingModel& f, const SeriesTruncation& trunc) {
    if (!(alpha > 0.0) || !(alpha <= 1.0))
        throw std::domain_error("M_alpha: alpha must lie in (0,1]");
    if (!(t > 0.0)) throw std::domain_error("M_alpha: t must be positive");
    if (theta < 0.0) throw std::domain_error("M_alpha: theta must be nonnegative");
    if (!(beta > 1.0)) throw std::domain_error("M_alpha: beta must exceed 1");
    f.validate();
    trunc.validate();

    const double tv = tau_weighted(theta, beta, f.shape, 1.0);
    const auto in = single_tier_input(alpha, t, theta, beta, f.shape,
                                      t * (1.0 + tv), trunc.factor_tolerance,
                                      trunc.max_terms, false);
    const auto r = detail::factor_series(in);
    if (!r.converged)
        throw TruncationError("M_alpha: max_terms exhausted before reaching the factor tolerance",
                              std::exp(r.log_m), r.tail_bound);
    return std::exp(r.log_m);
}

double S_alpha(double alpha, double t, double theta, double beta,
               const FadingModel& f, const SeriesTruncation& trunc) {
    if (!(alpha > 0.0) || !(alpha <= 1.0))
        throw std::domain_error("S_alpha: alpha must lie in (0,1]");
    if (!(t > 0.0)) throw std::domain_error("S_alpha: t must be positive");
    if (theta < 0.0) throw std::domain_error("S_alpha: theta must be nonnegative");
    if (!(beta > 1.0)) throw std::domain_error("S_alpha: beta must exceed 1");
    f.validate();
    trunc.validate();

    const double tv = tau_weighted(theta, beta, f.shape, 1.0);
    const auto in = single_tier_input(alpha, t, theta, beta, f.shape,
                                      t * (1.0 + tv), trunc.factor_tolerance,
                                      trunc.max_terms, true);
    const auto r = detail::factor_series(in);
    if (!r.converged)
        throw TruncationError("S_alpha: max_terms exhausted before reaching the factor tolerance",
                              std::exp(t) * r.scaled_sum, r.tail_bound);
    return std::exp(t + std::log(r.scaled_sum));
}

double coverage_ppp(const SingleTierScenario& s, double theta,
                    const QuadratureSpec& spec) {
    s.validate();
    const auto* pm = std::get_if<pointproc::PoissonModel>(&s.deployment);
    if (pm == nullptr)
        throw std::invalid_argument("coverage_ppp: deployment must be Poisson");
    if (theta == 0.0 && s.noise == 0.0) return 1.0;  // SIR > 0 almost surely
    if (!(theta > 0.0)) throw std::domain_error("coverage_ppp: theta must be positive");

    const double beta = s.pathloss.beta;
    const double tv = tau(theta, beta, s.interferer_fading, spec);
    const double b = 1.0 + tv;
    if (s.noise == 0.0) {
        // lambda and power drop out entirely: closed exponential integral
        return 1.0 / b;
    }
    const double anoise = theta * s.noise / s.power;
    const double invpl = 1.0 / (kPi * pm->lambda);
    auto h = [&](double t) {
        if (t <= 0.0) return 1.0;
        return std::exp(-anoise * std::pow(t * invpl, beta) - b * t);
    };
    return numerics::integrate_semi_infinite(h, 0.0, spec);
}

double coverage_ginibre(const SingleTierScenario& s, double theta,
                        const SeriesTruncation& trunc,
                        const QuadratureSpec& spec) {
    s.validate();
    trunc.validate();
    const auto* gm = std::get_if<pointproc::GinibreModel>(&s.deployment);
    if (gm == nullptr)
        throw std::invalid_argument("coverage_ginibre: deployment must be Ginibre");
    if (theta == 0.0 && s.noise == 0.0) return 1.0;
    if (!(theta > 0.0)) throw std::domain_error("coverage_ginibre: theta must be positive");

    const double alpha = gm->alpha;
    const double beta = s.pathloss.beta;
    const int shape = s.interferer_fading.shape;
    const double tv = tau(theta, beta, s.interferer_fading, spec);
    const double decay = alpha * (1.0 + tv);
    const double anoise = s.noise > 0.0 ? theta * s.noise / s.power : 0.0;
    const double rscale = alpha / (kPi * gm->lambda);

    auto envelope = [&](double t) {
        double e = decay * t;
        if (anoise > 0.0) e += anoise * std::pow(rscale * t, beta);
        return e;
    };
    const double t_cut = solve_envelope_cutoff(envelope, 42.0);

    const double ft = trunc.factor_tolerance;
    auto h = [&](double t) -> double {
        if (t <= 0.0) return alpha;
        const double noise_e =
            anoise > 0.0 ? anoise * std::pow(rscale * t, beta) : 0.0;
        // the integrand decays like exp(-decay*t - noise_e); points deep in
        // the tail may be computed proportionally less accurately
        const double relax = std::exp(std::min(40.0, decay * t + noise_e));
        const double tol = std::min(0.05, 6.0 * ft * relax);
        auto in = single_tier_input(alpha, t, theta, beta, shape,
                                    t * (1.0 + tv), tol, trunc.max_terms, true);
        const auto r = detail::factor_series(in);
        if (!r.converged)
            throw TruncationError(
                "coverage_ginibre: factor series exceeded max_terms at t=" + std::to_string(t),
                0.0, r.tail_bound);
        return alpha * std::exp(r.log_m - noise_e) * r.scaled_sum;
    };

    QuadratureSpec outer = spec;
    outer.relative_tolerance = std::max(spec.relative_tolerance, 30.0 * ft);
    outer.absolute_tolerance = std::max(spec.absolute_tolerance, ft);
    const double v = numerics::integrate_finite(h, 0.0, t_cut, outer);
    return std::clamp(v, 0.0, 1.0);
}

} // namespace ginicell::analytic
