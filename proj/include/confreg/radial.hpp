// Ray coordinates anchored at the MLE: polar (p = 2) and spherical
// (p = 3) directions, the ray-to-parameter-space map, and the radial
// log-likelihood ratio statistic along a ray.
#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>

#include "confreg/errors.hpp"
#include "confreg/likelihood.hpp"

namespace confreg {

// Origin (the MLE) plus a direction: an azimuth phi in [0, 2pi), and for
// p = 3 also an inclination tau in [0, pi]. phi is periodic and is
// reduced modulo 2pi; tau outside [0, pi] is a hard error.
class RadialFrame {
public:
    static RadialFrame polar(std::span<const double> origin, double phi) {
        if (origin.size() != 2)
            throw std::invalid_argument("RadialFrame::polar: origin must have dimension 2");
        RadialFrame f;
        f.dim_ = 2;
        f.origin_ = {origin[0], origin[1], 0.0};
        f.phi_ = normalize_phi(phi);
        f.unit_ = {std::cos(f.phi_), std::sin(f.phi_), 0.0};
        return f;
    }

    static RadialFrame spherical(std::span<const double> origin, double phi, double tau) {
        if (origin.size() != 3)
            throw std::invalid_argument("RadialFrame::spherical: origin must have dimension 3");
        if (!(tau >= 0.0 && tau <= std::numbers::pi))
            throw std::domain_error("RadialFrame::spherical: tau must lie in [0, pi], got " +
                                    std::to_string(tau));
        RadialFrame f;
        f.dim_ = 3;
        f.origin_ = {origin[0], origin[1], origin[2]};
        f.phi_ = normalize_phi(phi);
        f.tau_ = tau;
        const double st = std::sin(tau);
        f.unit_ = {std::cos(f.phi_) * st, std::sin(f.phi_) * st, std::cos(tau)};
        return f;
    }

    int dim() const { return dim_; }
    double phi() const { return phi_; }
    double tau() const { return tau_; }  // meaningful only when dim() == 3
    std::span<const double> origin() const { return {origin_.data(), static_cast<std::size_t>(dim_)}; }
    std::span<const double> unit_vector() const { return {unit_.data(), static_cast<std::size_t>(dim_)}; }

private:
    static double normalize_phi(double phi) {
        if (!std::isfinite(phi))
            throw std::domain_error("RadialFrame: phi must be finite");
        constexpr double two_pi = 2.0 * std::numbers::pi;
        double r = std::fmod(phi, two_pi);
        if (r < 0.0) r += two_pi;
        if (r >= two_pi) r = 0.0;
        return r;
    }

    std::array<double, 3> origin_{};
    std::array<double, 3> unit_{};
    double phi_ = 0.0;
    double tau_ = 0.0;
    int dim_ = 2;
};

// Maps (frame, r) to parameter coordinates: origin + r * unit(direction).
// Only the first frame.dim() entries of the result are meaningful.
inline std::array<double, 3> to_cartesian(const RadialFrame& frame, double r) {
    if (!(r >= 0.0))
        throw std::domain_error("to_cartesian: r must be >= 0, got " + std::to_string(r));
    std::array<double, 3> out{};
    const auto o = frame.origin();
    const auto u = frame.unit_vector();
    for (int i = 0; i < frame.dim(); ++i) out[i] = o[i] + r * u[i];
    return out;
}

// Largest r keeping the mapped point inside the parameter box: the
// minimum over coordinates of the distance to the box face in the ray's
// signed direction; infinite when every face along the ray is infinite.
inline double max_radius_in_box(const FittedModel& fm, const RadialFrame& frame) {
    const Box& box = fm.model().parameter_box;
    const auto o = frame.origin();
    const auto u = frame.unit_vector();
    if (!strictly_inside_box(o, box))
        throw OutOfBox("max_radius_in_box: ray origin is not strictly inside the parameter box");
    double r_max = std::numeric_limits<double>::infinity();
    for (int i = 0; i < frame.dim(); ++i) {
        if (u[i] > 0.0 && std::isfinite(box[i].hi))
            r_max = std::min(r_max, (box[i].hi - o[i]) / u[i]);
        else if (u[i] < 0.0 && std::isfinite(box[i].lo))
            r_max = std::min(r_max, (box[i].lo - o[i]) / u[i]);
    }
    return r_max;
}

// Radial log-likelihood ratio along the ray: T at the mapped point.
// The origin term is the log-likelihood at the MLE (frame-independent),
// so the statistic is exactly 0 at r = 0.
//
// A point overshooting a box face by no more than rounding noise (1e-12
// relative) is snapped onto the face; anything further out is OutOfBox.
inline double radial_lr_statistic(const FittedModel& fm, const RadialFrame& frame, double r) {
    auto point = to_cartesian(frame, r);
    const Box& box = fm.model().parameter_box;
    for (int i = 0; i < frame.dim(); ++i) {
        const auto& b = box[i];
        const double eps = 1e-12 * std::max({1.0, std::fabs(b.lo), std::fabs(b.hi)});
        if (point[i] < b.lo - eps || point[i] > b.hi + eps)
            throw OutOfBox("radial_lr_statistic: ray point " +
                           detail::format_point({point.data(), static_cast<std::size_t>(frame.dim())}) +
                           " at r=" + std::to_string(r) + " leaves the parameter box");
        if (point[i] < b.lo) point[i] = b.lo;
        if (point[i] > b.hi) point[i] = b.hi;
    }
    return lr_statistic(fm, {point.data(), static_cast<std::size_t>(frame.dim())});
}

} // namespace confreg
