// Derivative-free simplex minimizer (Nelder-Mead with the dimension-
// adaptive coefficients of Gao & Han). Candidate points pass through an
// optional clamp before evaluation so box constraints stay satisfied.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numeric>
#include <span>
#include <vector>

namespace confreg {

struct NelderMeadOptions {
    int max_iterations = 10000;
    double diameter_tolerance = 1e-9;  // max vertex distance to the best vertex
    double initial_step = 0.05;        // relative per-coordinate simplex size
};

struct NelderMeadResult {
    std::vector<double> x;
    double value = 0.0;
    int iterations = 0;
    bool converged = false;
};

// Minimizes f starting from x0. `clamp`, when set, is applied to every
// candidate vertex before evaluation (and to x0 itself).
inline NelderMeadResult nelder_mead_minimize(
    const std::function<double(std::span<const double>)>& f,
    std::vector<double> x0,
    const NelderMeadOptions& opts = {},
    const std::function<void(std::span<double>)>& clamp = {}) {

    const std::size_t d = x0.size();
    if (d == 0) return NelderMeadResult{std::move(x0), f({}), 0, true};
    const double nd = static_cast<double>(d);
    // Gao & Han adaptive coefficients; they reduce to the standard ones
    // at d = 2 and are degenerate at d = 1, so fall back there.
    const double refl = 1.0;
    const double expa = d >= 2 ? 1.0 + 2.0 / nd : 2.0;
    const double contr = d >= 2 ? 0.75 - 0.5 / nd : 0.5;
    const double shrink = d >= 2 ? 1.0 - 1.0 / nd : 0.5;

    if (clamp) clamp(x0);

    std::vector<std::vector<double>> verts(d + 1, x0);
    for (std::size_t i = 0; i < d; ++i) {
        const double h = opts.initial_step * std::max(1.0, std::fabs(x0[i]));
        verts[i + 1][i] += h;
        if (clamp) clamp(verts[i + 1]);
        // Clamping can collapse the vertex onto x0; push the other way.
        if (verts[i + 1][i] == x0[i]) {
            verts[i + 1][i] -= h;
            if (clamp) clamp(verts[i + 1]);
        }
    }

    std::vector<double> fv(d + 1);
    for (std::size_t i = 0; i <= d; ++i) fv[i] = f(verts[i]);

    std::vector<std::size_t> order(d + 1);
    std::vector<double> centroid(d), xr(d), xe(d), xc(d);

    auto diameter = [&](std::size_t best) {
        double dia = 0.0;
        for (std::size_t i = 0; i <= d; ++i) {
            if (i == best) continue;
            double s = 0.0;
            for (std::size_t j = 0; j < d; ++j) {
                const double diff = verts[i][j] - verts[best][j];
                s += diff * diff;
            }
            dia = std::max(dia, std::sqrt(s));
        }
        return dia;
    };

    int iter = 0;
    bool converged = false;
    for (; iter < opts.max_iterations; ++iter) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
        const std::size_t best = order[0];
        const std::size_t second_worst = order[d - 1];
        const std::size_t worst = order[d];

        if (diameter(best) < opts.diameter_tolerance) {
            converged = true;
            break;
        }

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t i = 0; i <= d; ++i) {
            if (i == worst) continue;
            for (std::size_t j = 0; j < d; ++j) centroid[j] += verts[i][j];
        }
        for (std::size_t j = 0; j < d; ++j) centroid[j] /= nd;

        auto propose = [&](std::vector<double>& out, double coef) {
            for (std::size_t j = 0; j < d; ++j)
                out[j] = centroid[j] + coef * (centroid[j] - verts[worst][j]);
            if (clamp) clamp(out);
        };

        propose(xr, refl);
        const double fr = f(xr);

        if (fr < fv[best]) {
            propose(xe, expa);
            const double fe = f(xe);
            if (fe < fr) { verts[worst] = xe; fv[worst] = fe; }
            else         { verts[worst] = xr; fv[worst] = fr; }
            continue;
        }
        if (fr < fv[second_worst]) {
            verts[worst] = xr;
            fv[worst] = fr;
            continue;
        }
        // Contraction: outside if the reflection improved on the worst.
        const bool outside = fr < fv[worst];
        propose(xc, outside ? contr : -contr);
        const double fc = f(xc);
        if (fc < (outside ? fr : fv[worst])) {
            verts[worst] = xc;
            fv[worst] = fc;
            continue;
        }
        // Shrink toward the best vertex.
        for (std::size_t i = 0; i <= d; ++i) {
            if (i == best) continue;
            for (std::size_t j = 0; j < d; ++j)
                verts[i][j] = verts[best][j] + shrink * (verts[i][j] - verts[best][j]);
            if (clamp) clamp(verts[i]);
            fv[i] = f(verts[i]);
        }
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i <= d; ++i)
        if (fv[i] < fv[best]) best = i;

    NelderMeadResult res;
    res.x = verts[best];
    res.value = fv[best];
    res.iterations = iter;
    res.converged = converged;
    return res;
}

} // namespace confreg
