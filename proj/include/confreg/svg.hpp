// Flat SVG rendering of a 2D region boundary: one closed polyline, an
// MLE marker, framed axes with tick labels.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "confreg/geometry.hpp"

namespace confreg {

namespace detail {

inline std::string fmt_svg(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

inline std::string fmt_tick(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

inline std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

} // namespace detail

// Writes the boundary polygon (closed), the MLE marker, and labeled axes.
inline void write_region_svg(std::ostream& out, std::span<const Point2> boundary,
                             const Point2& mle, const std::string& x_label,
                             const std::string& y_label, const std::string& title = "") {
    constexpr double width = 640.0, height = 640.0;
    constexpr double ml = 78.0, mr = 24.0, mt = 42.0, mb = 60.0;

    double x_min = mle[0], x_max = mle[0], y_min = mle[1], y_max = mle[1];
    for (const auto& p : boundary) {
        x_min = std::min(x_min, p[0]);
        x_max = std::max(x_max, p[0]);
        y_min = std::min(y_min, p[1]);
        y_max = std::max(y_max, p[1]);
    }
    double padx = 0.08 * (x_max - x_min), pady = 0.08 * (y_max - y_min);
    if (padx <= 0.0) padx = 1.0;
    if (pady <= 0.0) pady = 1.0;
    x_min -= padx; x_max += padx;
    y_min -= pady; y_max += pady;

    const double pw = width - ml - mr, ph = height - mt - mb;
    auto px = [&](double x) { return ml + (x - x_min) / (x_max - x_min) * pw; };
    auto py = [&](double y) { return mt + (y_max - y) / (y_max - y_min) * ph; };

    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    out << "  <rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height
        << "\" fill=\"white\"/>\n";
    out << "  <rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw << "\" height=\"" << ph
        << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";

    // Ticks: 5 per axis, inside labels below/left of the frame.
    for (int i = 0; i <= 4; ++i) {
        const double fx = x_min + (x_max - x_min) * i / 4.0;
        const double fy = y_min + (y_max - y_min) * i / 4.0;
        const double tx = px(fx), ty = py(fy);
        out << "  <line x1=\"" << detail::fmt_svg(tx) << "\" y1=\"" << detail::fmt_svg(mt + ph)
            << "\" x2=\"" << detail::fmt_svg(tx) << "\" y2=\"" << detail::fmt_svg(mt + ph + 6)
            << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
        out << "  <text x=\"" << detail::fmt_svg(tx) << "\" y=\"" << detail::fmt_svg(mt + ph + 20)
            << "\" font-size=\"12\" text-anchor=\"middle\">" << detail::fmt_tick(fx) << "</text>\n";
        out << "  <line x1=\"" << detail::fmt_svg(ml - 6) << "\" y1=\"" << detail::fmt_svg(ty)
            << "\" x2=\"" << detail::fmt_svg(ml) << "\" y2=\"" << detail::fmt_svg(ty)
            << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
        out << "  <text x=\"" << detail::fmt_svg(ml - 10) << "\" y=\"" << detail::fmt_svg(ty + 4)
            << "\" font-size=\"12\" text-anchor=\"end\">" << detail::fmt_tick(fy) << "</text>\n";
    }

    // Boundary: a single closed polyline (first point repeated).
    out << "  <polyline fill=\"none\" stroke=\"#1f6fb4\" stroke-width=\"1.5\" points=\"";
    for (const auto& p : boundary)
        out << detail::fmt_svg(px(p[0])) << "," << detail::fmt_svg(py(p[1])) << " ";
    if (!boundary.empty())
        out << detail::fmt_svg(px(boundary.front()[0])) << ","
            << detail::fmt_svg(py(boundary.front()[1]));
    out << "\"/>\n";

    // MLE marker: a small cross.
    const double cx = px(mle[0]), cy = py(mle[1]);
    out << "  <line x1=\"" << detail::fmt_svg(cx - 5) << "\" y1=\"" << detail::fmt_svg(cy)
        << "\" x2=\"" << detail::fmt_svg(cx + 5) << "\" y2=\"" << detail::fmt_svg(cy)
        << "\" stroke=\"#c23b22\" stroke-width=\"2\"/>\n";
    out << "  <line x1=\"" << detail::fmt_svg(cx) << "\" y1=\"" << detail::fmt_svg(cy - 5)
        << "\" x2=\"" << detail::fmt_svg(cx) << "\" y2=\"" << detail::fmt_svg(cy + 5)
        << "\" stroke=\"#c23b22\" stroke-width=\"2\"/>\n";

    out << "  <text x=\"" << detail::fmt_svg(ml + pw / 2) << "\" y=\"" << detail::fmt_svg(height - 14)
        << "\" font-size=\"14\" text-anchor=\"middle\">" << detail::xml_escape(x_label)
        << "</text>\n";
    out << "  <text x=\"18\" y=\"" << detail::fmt_svg(mt + ph / 2)
        << "\" font-size=\"14\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
        << detail::fmt_svg(mt + ph / 2) << ")\">" << detail::xml_escape(y_label) << "</text>\n";
    if (!title.empty())
        out << "  <text x=\"" << detail::fmt_svg(width / 2) << "\" y=\"24\" font-size=\"15\" "
            << "text-anchor=\"middle\">" << detail::xml_escape(title) << "</text>\n";
    out << "</svg>\n";
}

} // namespace confreg
