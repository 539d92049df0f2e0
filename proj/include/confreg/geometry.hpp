// Small planar geometry kit: point/segment distance, polyline Hausdorff
// distance, and a winding-number point-in-polygon test.
#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

namespace confreg {

using Point2 = std::array<double, 2>;

inline double point_segment_distance(const Point2& p, const Point2& a, const Point2& b) {
    const double vx = b[0] - a[0], vy = b[1] - a[1];
    const double wx = p[0] - a[0], wy = p[1] - a[1];
    const double vv = vx * vx + vy * vy;
    double t = vv > 0.0 ? (wx * vx + wy * vy) / vv : 0.0;
    if (t < 0.0) t = 0.0;
    if (t > 1.0) t = 1.0;
    const double dx = p[0] - (a[0] + t * vx);
    const double dy = p[1] - (a[1] + t * vy);
    return std::sqrt(dx * dx + dy * dy);
}

// Distance from a point to a polyline (closed polylines wrap around).
inline double point_polyline_distance(const Point2& p, std::span<const Point2> poly, bool closed) {
    if (poly.empty()) return std::numeric_limits<double>::infinity();
    if (poly.size() == 1) {
        const double dx = p[0] - poly[0][0], dy = p[1] - poly[0][1];
        return std::sqrt(dx * dx + dy * dy);
    }
    double best = std::numeric_limits<double>::infinity();
    const std::size_t m = poly.size();
    const std::size_t segs = closed ? m : m - 1;
    for (std::size_t i = 0; i < segs; ++i)
        best = std::min(best, point_segment_distance(p, poly[i], poly[(i + 1) % m]));
    return best;
}

// Symmetric Hausdorff distance between two polylines, measured from the
// vertices of each to the segments of the other.
inline double hausdorff_distance(std::span<const Point2> a, bool a_closed,
                                 std::span<const Point2> b, bool b_closed) {
    double h = 0.0;
    for (const auto& p : a) h = std::max(h, point_polyline_distance(p, b, b_closed));
    for (const auto& p : b) h = std::max(h, point_polyline_distance(p, a, a_closed));
    return h;
}

// Winding-number test; points exactly on an edge count as inside.
inline bool point_in_polygon(const Point2& p, std::span<const Point2> poly) {
    if (poly.size() < 3) return false;
    int winding = 0;
    const std::size_t m = poly.size();
    for (std::size_t i = 0; i < m; ++i) {
        const Point2& u = poly[i];
        const Point2& v = poly[(i + 1) % m];
        const double cross = (v[0] - u[0]) * (p[1] - u[1]) - (p[0] - u[0]) * (v[1] - u[1]);
        if (u[1] <= p[1]) {
            if (v[1] > p[1] && cross > 0.0) ++winding;
        } else {
            if (v[1] <= p[1] && cross < 0.0) --winding;
        }
    }
    return winding != 0;
}

} // namespace confreg
