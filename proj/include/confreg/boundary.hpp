// Region boundary solver: per-ray outward scan for the first threshold
// crossing, Brent refinement of the bracket, clamping at box faces, and
// assembly of full 2D / 3D regions over angle lattices.
#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "confreg/brent.hpp"
#include "confreg/errors.hpp"
#include "confreg/likelihood.hpp"
#include "confreg/parallel.hpp"
#include "confreg/radial.hpp"
#include "confreg/special_functions.hpp"

namespace confreg {

enum class Lattice3d { LatLong, Fibonacci };

struct SolverOptions {
    double scan_step = 0.1;       // outward step, in units of r_scale
    double r_tolerance = 1e-9;    // Brent bracket width, in units of r_scale
    double stat_tolerance = 1e-6; // |T - threshold| bound for accepted roots
    int scan_cap = 10000;         // scan steps before declaring the ray flat
    Lattice3d lattice = Lattice3d::LatLong;
    double r_scale = 0.0;         // <= 0 selects the model scale (or 1.0)
    int threads = 1;
};

// A point on (or clamped to) the region boundary.
struct BoundaryPoint {
    std::vector<double> theta;      // parameter coordinates, size p
    double r = 0.0;                 // distance from the MLE
    double phi = 0.0;               // azimuth
    std::optional<double> tau;      // inclination, p = 3 only
    double statistic = 0.0;         // T at theta
    bool clamped = false;           // true: box face reached before crossing
};

struct ConfidenceRegion {
    std::vector<BoundaryPoint> points;
    double alpha = 0.0;
    int dof = 0;
    double threshold = 0.0;
    std::uint64_t n_evaluations = 0;  // log-likelihood evaluations consumed
    double wall_time_seconds = 0.0;
};

// Radial step scale: explicit option, else the geometric mean of the
// model's per-axis standard-error proxies, else 1. A scale-aware step
// keeps scan counts flat under data rescaling.
inline double resolve_r_scale(const FittedModel& fm, const SolverOptions& opts) {
    if (opts.r_scale > 0.0) return opts.r_scale;
    const auto& s = fm.interest_scales();
    if (s.empty()) return 1.0;
    double log_sum = 0.0;
    for (double v : s) {
        if (!(v > 0.0)) return 1.0;
        log_sum += std::log(v);
    }
    return std::exp(log_sum / static_cast<double>(s.size()));
}

// Finds the minimal radius where T reaches `threshold` along the ray.
//
// Outward scan from r = 0 in steps of scan_step * r_scale until the first
// step with T >= threshold (T(0) = 0 is known and not evaluated). The
// first bracket is then refined with Brent's method, so the returned root
// is the minimal crossing up to scan resolution even when T is
// non-monotone. If the box face arrives first, the point is clamped there
// with its (sub-threshold) statistic and clamped = true.
inline BoundaryPoint solve_ray(const FittedModel& fm, const RadialFrame& frame,
                               double threshold, const SolverOptions& opts = {}) {
    if (!(threshold > 0.0))
        throw std::domain_error("solve_ray: threshold must be > 0");
    if (frame.dim() != fm.interest_dim())
        throw std::invalid_argument("solve_ray: frame dimension does not match the model");

    const double scale = resolve_r_scale(fm, opts);
    const double step = opts.scan_step * scale;
    const double r_max = max_radius_in_box(fm, frame);

    auto statistic = [&](double r) {
        const double t = radial_lr_statistic(fm, frame, r);
        if (!std::isfinite(t)) {
            const auto p = to_cartesian(frame, r);
            throw NonFiniteStatistic(
                "solve_ray: statistic is non-finite at theta = " +
                detail::format_point({p.data(), static_cast<std::size_t>(frame.dim())}));
        }
        return t;
    };

    auto make_point = [&](double r, double stat, bool clamped) {
        const auto p = to_cartesian(frame, r);
        BoundaryPoint bp;
        bp.theta.assign(p.begin(), p.begin() + frame.dim());
        bp.r = r;
        bp.phi = frame.phi();
        if (frame.dim() == 3) bp.tau = frame.tau();
        bp.statistic = stat;
        bp.clamped = clamped;
        return bp;
    };

    double r_lo = 0.0, t_lo = 0.0;
    double r_hi = 0.0, t_hi = 0.0;
    bool bracketed = false;
    for (int k = 1; k <= opts.scan_cap; ++k) {
        double r = static_cast<double>(k) * step;
        if (r >= r_max) {
            const double t_face = statistic(r_max);
            if (t_face >= threshold) {
                r_hi = r_max;
                t_hi = t_face;
                bracketed = true;
                break;
            }
            return make_point(r_max, t_face, true);
        }
        const double t = statistic(r);
        if (t >= threshold) {
            r_hi = r;
            t_hi = t;
            bracketed = true;
            break;
        }
        r_lo = r;
        t_lo = t;
    }
    if (!bracketed)
        throw ScanLimitReached("solve_ray: no threshold crossing within " +
                               std::to_string(opts.scan_cap) + " scan steps (r reached " +
                               std::to_string(r_lo) + "); the likelihood is too flat along this ray");

    auto res = brent_root([&](double r) { return statistic(r) - threshold; },
                          r_lo, t_lo - threshold, r_hi, t_hi - threshold,
                          opts.r_tolerance * scale);
    const double stat = res.f_at_root + threshold;
    if (std::fabs(stat - threshold) > opts.stat_tolerance)
        throw ConvergenceFailure("solve_ray: root refinement left |T - threshold| = " +
                                 std::to_string(std::fabs(stat - threshold)) +
                                 " above stat_tolerance");
    return make_point(res.root, stat, false);
}

namespace detail {

template <class MakeFrame>
ConfidenceRegion solve_region(const FittedModel& fm, double alpha, int dof,
                              std::size_t n_rays, const SolverOptions& opts,
                              MakeFrame&& make_frame) {
    const ChiSquaredThreshold thr = chi_squared_quantile(alpha, dof);
    const std::uint64_t evals_before = fm.evaluation_count();
    const auto t_start = std::chrono::steady_clock::now();

    std::vector<BoundaryPoint> points(n_rays);
    parallel_for_indexed(n_rays, opts.threads, [&](std::size_t i) {
        const RadialFrame frame = make_frame(i);
        try {
            points[i] = solve_ray(fm, frame, thr.value, opts);
        } catch (const std::exception& e) {
            std::ostringstream os;
            os << "ray failed at phi=" << frame.phi();
            if (frame.dim() == 3) os << ", tau=" << frame.tau();
            os << ": " << e.what();
            throw RayFailure(os.str());
        }
    });

    ConfidenceRegion region;
    region.points = std::move(points);
    region.alpha = alpha;
    region.dof = dof;
    region.threshold = thr.value;
    region.n_evaluations = fm.evaluation_count() - evals_before;
    region.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return region;
}

} // namespace detail

// 2D region: rays at N equally spaced angles phi_j = 2 pi j / N,
// j = 0..N-1, returned in phi order (a closed polygon when consecutive
// points are joined).
inline ConfidenceRegion region_2d(const FittedModel& fm, double alpha, int n_angles,
                                  const SolverOptions& opts = {}) {
    if (fm.interest_dim() != 2)
        throw std::invalid_argument("region_2d: model must have interest_dim == 2");
    if (n_angles < 1)
        throw std::invalid_argument("region_2d: n_angles must be >= 1");
    const auto origin = fm.theta_hat();
    return detail::solve_region(fm, alpha, 2, static_cast<std::size_t>(n_angles), opts,
                                [&](std::size_t j) {
                                    const double phi =
                                        2.0 * std::numbers::pi * static_cast<double>(j) /
                                        static_cast<double>(n_angles);
                                    return RadialFrame::polar(origin, phi);
                                });
}

// 3D region over an angle lattice. LatLong uses phi_i = 2 pi i / n_phi
// crossed with half-offset inclinations tau_k = pi (k + 1/2) / n_tau
// (the offset avoids duplicate pole rays); points come back in (tau, phi)
// lattice order. Fibonacci spreads the same number of rays near-uniformly
// over the sphere.
inline ConfidenceRegion region_3d(const FittedModel& fm, double alpha, int n_phi, int n_tau,
                                  const SolverOptions& opts = {}) {
    if (fm.interest_dim() != 3)
        throw std::invalid_argument("region_3d: model must have interest_dim == 3");
    if (n_phi < 1 || n_tau < 1)
        throw std::invalid_argument("region_3d: n_phi and n_tau must be >= 1");
    const auto origin = fm.theta_hat();
    const std::size_t n = static_cast<std::size_t>(n_phi) * static_cast<std::size_t>(n_tau);

    if (opts.lattice == Lattice3d::Fibonacci) {
        // z descends from near +1 to near -1; successive azimuths advance
        // by the golden angle.
        const double golden_angle = std::numbers::pi * (3.0 - std::sqrt(5.0));
        return detail::solve_region(fm, alpha, 3, n, opts, [&](std::size_t i) {
            const double z = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / static_cast<double>(n);
            const double tau = std::acos(std::min(1.0, std::max(-1.0, z)));
            const double phi = golden_angle * static_cast<double>(i);
            return RadialFrame::spherical(origin, phi, tau);
        });
    }
    return detail::solve_region(fm, alpha, 3, n, opts, [&](std::size_t i) {
        const std::size_t k = i / static_cast<std::size_t>(n_phi);  // tau index
        const std::size_t j = i % static_cast<std::size_t>(n_phi);  // phi index
        const double tau = std::numbers::pi * (static_cast<double>(k) + 0.5) /
                           static_cast<double>(n_tau);
        const double phi = 2.0 * std::numbers::pi * static_cast<double>(j) /
                           static_cast<double>(n_phi);
        return RadialFrame::spherical(origin, phi, tau);
    });
}

} // namespace confreg
