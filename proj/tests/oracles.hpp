// Test-only oracles, independent of the library's evaluation paths:
// adaptive Simpson quadrature of the gamma density for the chi-squared
// CDF, and a bisection quantile built on it.
#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>

namespace oracle {

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double fa, double fm, double fb, double whole, double tol,
                               int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-14) {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 60);
}

// Regularized lower incomplete gamma by direct quadrature of the density.
inline double lower_gamma_quadrature(double s, double x) {
    if (x <= 0.0) return 0.0;
    const double log_gamma_s = std::lgamma(s);
    auto density = [&](double t) {
        if (t <= 0.0) return 0.0;
        return std::exp((s - 1.0) * std::log(t) - t - log_gamma_s);
    };
    // Split at the mode to help the subdivision near a steep density.
    const double mode = s > 1.0 ? s - 1.0 : 0.0;
    if (mode > 0.0 && mode < x)
        return integrate(density, 0.0, mode) + integrate(density, mode, x);
    return integrate(density, 0.0, x);
}

inline double chi_squared_cdf_quadrature(double q, int dof) {
    return lower_gamma_quadrature(0.5 * dof, 0.5 * q);
}

// Quantile by bisection on the quadrature CDF.
inline double chi_squared_quantile_quadrature(double alpha, int dof) {
    const double target = 1.0 - alpha;
    double lo = 0.0, hi = dof + 40.0 * std::sqrt(2.0 * dof);
    if (chi_squared_cdf_quadrature(hi, dof) < target)
        throw std::runtime_error("oracle quantile: bracket too small");
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (chi_squared_cdf_quadrature(mid, dof) < target) lo = mid;
        else hi = mid;
        if (hi - lo < 1e-13 * (1.0 + mid)) break;
    }
    return 0.5 * (lo + hi);
}

} // namespace oracle
