#ifndef GINICELL_NUMERICS_HPP
#define GINICELL_NUMERICS_HPP

#include <functional>
#include <stdexcept>
#include <string>

namespace ginicell::numerics {

// Tolerance and budget knobs shared by the adaptive quadrature routines.
struct QuadratureSpec {
    double relative_tolerance = 1e-9;
    double absolute_tolerance = 1e-12;
    int max_subdivisions = 4000;

    void validate() const;
};

// Thrown when an adaptive routine exhausts its subdivision budget. Carries
// the best estimate and an error bound so callers can decide what to do.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& msg, double best, double bound)
        : std::runtime_error(msg), best_estimate(best), error_bound(bound) {}

    double best_estimate;
    double error_bound;
};

// Regularized lower incomplete gamma P(a,x) = gamma(a,x)/Gamma(a).
// Series expansion for x < a+1, Lentz continued fraction otherwise.
double regularized_lower_gamma(double a, double x);

// Q(a,x) = 1 - P(a,x), evaluated on the branch that avoids cancellation.
double regularized_upper_gamma(double a, double x);

// ln Gamma(a) for a > 0.
double log_gamma(double a);

using Integrand = std::function<double(double)>;

// Adaptive Gauss-Kronrod (15/7) on a finite interval.
double integrate_finite(const Integrand& f, double a, double b,
                        const QuadratureSpec& spec = QuadratureSpec{});

// Integral over [lower, inf) of an absolutely integrable f whose tail is
// eventually dominated by a decaying exponential or by u^{-1-eps}.
// Windows of geometrically growing width are integrated adaptively until
// their contribution falls below tolerance.
double integrate_semi_infinite(const Integrand& f, double lower,
                               const QuadratureSpec& spec = QuadratureSpec{});

} // namespace ginicell::numerics

#endif
