// Test-only reference implementations, deliberately independent of the
// library's numerics: adaptive Simpson instead of Gauss-Kronrod, series
// summation instead of the incomplete-gamma split. Used to cross-check
// the production routines.
#ifndef GINICELL_TESTS_ORACLES_HPP
#define GINICELL_TESTS_ORACLES_HPP

#include <cmath>
#include <functional>

namespace oracles {

inline double simpson_rec(const std::function<double(double)>& f, double a,
                          double b, double fa, double fm, double fb,
                          double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::fabs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

inline double simpson(const std::function<double(double)>& f, double a,
                      double b, double tol = 1e-12, int depth = 48) {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_rec(f, a, b, fa, fm, fb, whole, tol, depth);
}

// P(k, x) for integer k via the Poisson tail identity
// P(k,x) = 1 - sum_{j=0}^{k-1} e^{-x} x^j / j!.
inline double lower_gamma_integer(int k, double x) {
    double term = std::exp(-x);
    double cdf = term;
    for (int j = 1; j < k; ++j) {
        term *= x / j;
        cdf += term;
    }
    return 1.0 - cdf;
}

// series for P(a, x) with real a; independent of the continued-fraction
// branch used in production
inline double lower_gamma_series(double a, double x, int terms = 20000) {
    if (x <= 0.0) return 0.0;
    double sum = 1.0 / a;
    double del = sum;
    for (int n = 1; n < terms; ++n) {
        del *= x / (a + n);
        sum += del;
        if (std::fabs(del) < 1e-17 * std::fabs(sum)) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// J_i by Simpson on the Poisson-kernel window. The integrand is a narrow
// bump near u = i, so integrate segment-wise with breakpoints around the
// peak or the recursion never sees it.
inline double j_integral(int i, double t, double theta, double beta, int shape,
                         double tol = 1e-12) {
    const double lg = std::lgamma(i + 1.0);
    auto g = [&](double u) {
        if (u <= 0.0) return 0.0;
        const double lp = i * std::log(u) - u - lg;
        if (lp < -720.0) return 0.0;
        const double s = theta * std::pow(t / u, beta);
        return std::exp(lp - shape * std::log1p(s));
    };
    const double peak = std::max(t, static_cast<double>(i) + 1.0);
    const double spread = 20.0 * std::sqrt(i + 2.0) + 24.0;
    double pts[4] = {t, std::max(t, peak - spread), peak, peak + spread};
    double acc = 0.0;
    for (int k = 0; k < 3; ++k) {
        if (pts[k + 1] > pts[k]) acc += simpson(g, pts[k], pts[k + 1], tol);
    }
    return acc;
}

} // namespace oracles

#endif
