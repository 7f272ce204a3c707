#ifndef GINICELL_DETAIL_FACTOR_SERIES_HPP
#define GINICELL_DETAIL_FACTOR_SERIES_HPP

#include <functional>
#include <vector>

namespace ginicell::detail {

// Shared evaluator for the coverage products
//
//   log_m = sum_{i>=0} log(1 - a + a*J_i),
//   J_i   = int_c^inf e^{-u} u^i / i! * (1 - w(u)) du,
//
// where w is a nonincreasing interference weight with 0 <= w <= 1 and a
// polynomial tail w(u) <= tail_coeff * u^{-tail_beta}.
//
// Factors are computed explicitly up to an adaptive index N on one shared
// Gauss-Legendre grid (Poisson-weight recurrences across i). The remainder
// uses the exact first moment sum_i D_i = c + int_c^inf w  (D_i = 1 - J_i),
// supplied by the caller as sum_d_exact, so only the second-order part of
// the tail is bounded rather than computed.
struct FactorSeriesInput {
    double alpha = 1.0;
    double c = 0.0;                    // lower integration limit >= 0
    std::function<double(double)> w;   // interference weight on [c, inf)
    double tail_coeff = 0.0;           // K with w(u) <= K u^{-tail_beta}
    double tail_beta = 2.0;            // > 1
    double sum_d_exact = 0.0;          // c + int_c^inf w(u) du
    double tol_log_m = 1e-10;          // absolute tolerance on log_m
    int max_terms = 20000;
    bool need_scaled_sum = false;      // also assemble e^{-c} * S
};

struct FactorSeriesResult {
    double log_m = 0.0;          // includes the tail correction
    double scaled_sum = 0.0;     // e^{-c} * sum_i pois(i;c)/factor_i
    int n_explicit = 0;          // factors computed explicitly
    double tail_bound = 0.0;     // residual bound after correction
    bool converged = true;
};

FactorSeriesResult factor_series(const FactorSeriesInput& in);

// int_U^inf w(u) du for a weight with w(u) <= K u^{-beta}; used to build
// sum_d_exact when no closed form exists.
double weight_tail_integral(const std::function<double(double)>& w, double c,
                            double tail_coeff, double tail_beta);

} // namespace ginicell::detail

#endif
