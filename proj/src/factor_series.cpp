#include "ginicell/detail/factor_series.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ginicell/numerics.hpp"

namespace ginicell::detail {

namespace {

using numerics::log_gamma;
using numerics::regularized_lower_gamma;

// 16-point Gauss-Legendre on [-1,1].
constexpr double kGlX[8] = {
    0.095012509837637440185, 0.281603550779258913230,
    0.458016777657227386342, 0.617876244402643748447,
    0.755404408355003033895, 0.865631202387831743880,
    0.944575023073232576078, 0.989400934991649932596};
constexpr double kGlW[8] = {
    0.189450610455068496285, 0.182603415044923588867,
    0.169156519395002538189, 0.149595988816576732081,
    0.124628971255533872052, 0.095158511682492784810,
    0.062253523938647892863, 0.027152459411754094852};

struct Grid {
    std::vector<double> u, wt;
};

// Panel width resolves both the Poisson kernels (scale sqrt(u)) and the
// interference weight (scale u/beta).
Grid build_grid(double c, double u_end, double beta) {
    Grid g;
    const double bscale = 4.0 * std::max(1.0, beta);
    double a = c;
    while (a < u_end) {
        const double h = 0.5 * std::min(std::sqrt(a + 1.0), (a + 1.0) / bscale);
        const double b = std::min(a + h, u_end);
        const double mid = 0.5 * (a + b);
        const double rad = 0.5 * (b - a);
        for (int j = 7; j >= 0; --j) {
            g.u.push_back(mid - rad * kGlX[j]);
            g.wt.push_back(rad * kGlW[j]);
        }
        for (int j = 0; j < 8; ++j) {
            g.u.push_back(mid + rad * kGlX[j]);
            g.wt.push_back(rad * kGlW[j]);
        }
        a = b;
    }
    return g;
}

// Poisson pmf(i; m) for i = 0..n via recurrence from the mode; entries far
// from the mode underflow to zero, which is harmless for every use below.
std::vector<double> poisson_pmf_table(double m, int n) {
    std::vector<double> pmf(static_cast<std::size_t>(n) + 1, 0.0);
    if (m <= 0.0) {
        pmf[0] = 1.0;
        return pmf;
    }
    const int mode = std::min(n, static_cast<int>(m));
    const double lm = std::log(m);
    const double lp0 = mode * lm - m - log_gamma(mode + 1.0);
    pmf[static_cast<std::size_t>(mode)] = std::exp(lp0);
    for (int i = mode; i > 0; --i)
        pmf[static_cast<std::size_t>(i - 1)] = pmf[static_cast<std::size_t>(i)] * i / m;
    for (int i = mode; i < n; ++i)
        pmf[static_cast<std::size_t>(i + 1)] = pmf[static_cast<std::size_t>(i)] * m / (i + 1);
    return pmf;
}

} // namespace

double weight_tail_integral(const std::function<double(double)>& w, double c,
                            double tail_coeff, double tail_beta) {
    if (tail_coeff <= 0.0) return 0.0;
    const double ustar = std::pow(4.0 * tail_coeff, 1.0 / tail_beta);
    const double u0 = std::max({4.0 * ustar, 2.0 * c + 1.0, 8.0});
    numerics::QuadratureSpec spec;
    spec.relative_tolerance = 1e-11;
    spec.absolute_tolerance = 1e-14;
    double head = 0.0;
    if (u0 > c) head = numerics::integrate_finite(w, c, u0, spec);
    // u = u0 * y^{-q} maps the power-law tail onto [0,1]
    const double q = std::clamp(std::ceil(3.0 / (tail_beta - 1.0)), 5.0, 200.0);
    auto g = [&](double y) {
        if (y <= 0.0) return 0.0;
        const double ly = std::log(y);
        const double u = u0 * std::exp(-q * ly);
        return w(u) * u0 * q * std::exp(-(q + 1.0) * ly);
    };
    const double tail = numerics::integrate_finite(g, 0.0, 1.0, spec);
    return head + tail;
}

FactorSeriesResult factor_series(const FactorSeriesInput& in) {
    if (!(in.alpha > 0.0) || !(in.alpha <= 1.0))
        throw std::domain_error("factor_series: alpha must lie in (0,1]");
    if (!(in.c >= 0.0)) throw std::domain_error("factor_series: c must be >= 0");
    const double a = in.alpha;
    const double c = in.c;

    // ln(1-x) <= -x makes -a*sum_d an upper envelope for log_m; once that
    // envelope is below e^{-80} the product cannot influence any integral
    // at the supported tolerances
    if (a * in.sum_d_exact > 80.0) {
        FactorSeriesResult out;
        out.log_m = -a * in.sum_d_exact;
        out.tail_bound = 0.5 * a * a * in.sum_d_exact;
        out.scaled_sum = 1.0;
        out.converged = true;
        return out;
    }

    // nearly transparent thinning: every factor is 1 - a*D_i with D_i <= 1,
    // so log_m = -a*sum_d_exact up to Sigma (a D_i)^2/2 <= a^2 sum_d / 2
    const double second = 0.5 * a * a * in.sum_d_exact;
    if (0.5 * second < in.tol_log_m && (!in.need_scaled_sum || a < 1e-8)) {
        FactorSeriesResult out;
        out.log_m = -a * in.sum_d_exact - 0.5 * second;
        out.tail_bound = 0.5 * second;
        out.scaled_sum = 1.0;  // sum of pois(i;c)/(1 - a D_i) at vanishing a
        out.converged = true;
        return out;
    }

    // explicit range must clear the Poisson transition at c, the weight
    // transition u*, and (for the scaled sum) the pois(c) mass
    const double ustar =
        in.tail_coeff > 0.0 ? std::pow(4.0 * in.tail_coeff, 1.0 / in.tail_beta) : 0.0;
    int n = static_cast<int>(std::ceil(
        std::max(c + 16.0 * std::sqrt(c + 1.0), ustar + 16.0 * std::sqrt(ustar + 1.0)) + 16.0));
    // residual bound ~ a^2 K^2 N^{1-2beta} / (2(beta-1)); presize N for it
    if (in.tail_coeff > 0.0) {
        const double k2 = in.tail_coeff * in.tail_coeff * a * a /
                          (2.0 * (in.tail_beta - 1.0) * std::max(in.tol_log_m, 1e-300));
        if (k2 > 1.0) {
            const double n_est = std::pow(k2, 1.0 / (2.0 * in.tail_beta - 1.0));
            if (n_est > n && n_est < 1e9)
                n = static_cast<int>(std::ceil(1.15 * n_est)) + 32;
        }
    }
    // explicit factors out of reach (boundary index ~ c grows like 1/alpha):
    // fall back to the first-order form, which is accurate to ~a per unit of
    // a*sum_d in exactly this regime
    if (n > in.max_terms && !in.need_scaled_sum &&
        0.5 * second <= std::max(in.tol_log_m, 1e-4 * (1.0 + a * in.sum_d_exact))) {
        FactorSeriesResult out;
        out.log_m = -a * in.sum_d_exact - 0.5 * second;
        out.tail_bound = 0.5 * second;
        out.scaled_sum = 1.0;
        out.converged = true;
        return out;
    }
    n = std::min(n, in.max_terms);

    FactorSeriesResult out;
    for (int attempt = 0;; ++attempt) {
        const std::size_t nn = static_cast<std::size_t>(n);
        std::vector<double> i_d(nn + 1, 0.0), i_j(nn + 1, 0.0);

        const double u_end = n + 16.0 * std::sqrt(n + 1.0) + 16.0;
        const Grid grid = build_grid(c, u_end, in.tail_beta);

        // max achievable pmf per index, for the relative-negligibility cut
        std::vector<double> pmf_cap(nn + 1);
        for (std::size_t i = 0; i <= nn; ++i) {
            const double uc = std::max(c, static_cast<double>(i));
            const double lp = (uc > 0.0 ? i * std::log(uc) : 0.0) - uc -
                              log_gamma(static_cast<double>(i) + 1.0);
            pmf_cap[i] = (lp > -700.0) ? std::exp(lp) * 1e-20 : 0.0;
        }

        for (std::size_t k = 0; k < grid.u.size(); ++k) {
            const double u = grid.u[k];
            const double gw = grid.wt[k];
            const double wv = in.w ? std::min(1.0, std::max(0.0, in.w(u))) : 0.0;
            const double cd = gw * wv;
            const double cj = gw * (1.0 - wv);
            const double lu = std::log(u);

            int i = std::min(n, static_cast<int>(u + 16.0 * std::sqrt(u) + 16.0));
            double lp = i * lu - u - log_gamma(i + 1.0);
            // walk down in log space through the underflowed head
            while (i > 0 && lp < -700.0) {
                lp += std::log(static_cast<double>(i)) - lu;
                --i;
            }
            if (lp < -700.0) continue;
            double p = std::exp(lp);
            for (; i >= 0; --i) {
                i_d[static_cast<std::size_t>(i)] += cd * p;
                i_j[static_cast<std::size_t>(i)] += cj * p;
                if (i < u && p < pmf_cap[static_cast<std::size_t>(i)]) break;
                if (p < 1e-280) break;
                p *= i / u;
            }
        }

        const std::vector<double> pois_c = poisson_pmf_table(c, n);
        // P(i+1, c): backward tail sums of pois_c, anchored analytically
        std::vector<double> p_tail(nn + 1);
        p_tail[nn] = regularized_lower_gamma(n + 1.0, std::max(c, 1e-300));
        if (c == 0.0) p_tail[nn] = 0.0;
        for (std::size_t i = nn; i > 0; --i)
            p_tail[i - 1] = std::min(1.0, p_tail[i] + pois_c[i]);

        double sum_lf = 0.0, sum_d = 0.0;
        std::vector<double> lf(nn + 1);
        double d_last = 0.0;
        for (std::size_t i = 0; i <= nn; ++i) {
            const double d = std::min(1.0, p_tail[i] + i_d[i]);
            sum_d += d;
            d_last = d;
            double v;
            if (a * d < 0.5)
                v = std::log1p(-a * d);
            else
                v = std::log(std::max((1.0 - a) + a * i_j[i], 1e-300));
            lf[i] = v;
            sum_lf += v;
        }

        const double r_n = std::max(0.0, in.sum_d_exact - sum_d);
        const double ad = std::min(a * d_last, 0.999);
        const double bound = (a * d_last) * (a * r_n) / (2.0 * (1.0 - ad));

        out.n_explicit = n;
        out.tail_bound = 0.5 * bound;
        out.log_m = sum_lf - a * r_n - 0.5 * bound;
        out.converged = (0.5 * bound <= in.tol_log_m);

        if (in.need_scaled_sum) {
            double s = 0.0;
            for (std::size_t i = 0; i <= nn; ++i) {
                if (pois_c[i] == 0.0) continue;
                s += std::exp(std::log(pois_c[i]) - lf[i]);
            }
            out.scaled_sum = s;
        }

        if (out.converged || n >= in.max_terms || attempt >= 8) return out;
        n = std::min(in.max_terms, static_cast<int>(n * 1.6) + 64);
    }
}

} // namespace ginicell::detail
