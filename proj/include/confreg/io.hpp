// CSV ingestion (headered, comma-separated, '.' decimal) and boundary /
// grid exports.
#pragma once

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "confreg/boundary.hpp"
#include "confreg/dataset.hpp"
#include "confreg/errors.hpp"
#include "confreg/grid.hpp"

namespace confreg {

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur.push_back(ch);
        }
    }
    fields.push_back(cur);
    return fields;
}

inline std::string trim(std::string s) {
    const auto first = s.find_first_not_of(" \t");
    const auto last = s.find_last_not_of(" \t");
    if (first == std::string::npos) return "";
    return s.substr(first, last - first + 1);
}

inline double parse_double(const std::string& field, std::size_t line_no) {
    const std::string t = trim(field);
    double v = 0.0;
    const auto* begin = t.data();
    const auto* end = t.data() + t.size();
    const auto res = std::from_chars(begin, end, v);
    if (res.ec != std::errc{} || res.ptr != end)
        throw DataError("CSV line " + std::to_string(line_no) + ": cannot parse number '" + t + "'");
    return v;
}

// %.17g round-trips doubles exactly and keeps output byte-stable.
inline std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace detail

// Reads a headered numeric CSV into a Dataset.
inline Dataset read_dataset_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line))
        throw DataError("CSV: empty input");
    auto header = detail::split_csv_line(line);
    for (auto& h : header) h = detail::trim(h);
    if (!header.empty() && !header.front().empty() && header.front().front() == '\xEF')
        header.front() = header.front().substr(3);  // strip UTF-8 BOM

    std::vector<std::vector<double>> cols(header.size());
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (detail::trim(line).empty()) continue;
        const auto fields = detail::split_csv_line(line);
        if (fields.size() != header.size())
            throw DataError("CSV line " + std::to_string(line_no) + ": expected " +
                            std::to_string(header.size()) + " fields, got " +
                            std::to_string(fields.size()));
        for (std::size_t i = 0; i < fields.size(); ++i)
            cols[i].push_back(detail::parse_double(fields[i], line_no));
    }
    return Dataset(std::move(header), std::move(cols));
}

inline Dataset read_dataset_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw DataError("cannot open data file '" + path + "'");
    return read_dataset_csv(in);
}

// Boundary CSV: index, phi, [tau,] r, parameter coordinates by name,
// statistic, clamped (0/1).
inline void write_boundary_csv(std::ostream& out, const ConfidenceRegion& region,
                               const std::vector<std::string>& interest_names) {
    const bool has_tau = region.dof == 3;
    out << "index,phi";
    if (has_tau) out << ",tau";
    out << ",r";
    for (const auto& name : interest_names) out << "," << name;
    out << ",statistic,clamped\n";
    for (std::size_t i = 0; i < region.points.size(); ++i) {
        const auto& p = region.points[i];
        out << i << "," << detail::fmt_double(p.phi);
        if (has_tau) out << "," << detail::fmt_double(p.tau.value_or(0.0));
        out << "," << detail::fmt_double(p.r);
        for (double v : p.theta) out << "," << detail::fmt_double(v);
        out << "," << detail::fmt_double(p.statistic) << "," << (p.clamped ? 1 : 0) << "\n";
    }
}

// Grid export: one row per lattice point, columns x, y, t.
inline void write_grid_csv(std::ostream& out, const GridValues& grid) {
    out << "x,y,t\n";
    const int n = grid.n();
    for (int iy = 0; iy < n; ++iy)
        for (int ix = 0; ix < n; ++ix)
            out << detail::fmt_double(grid.spec().x_at(ix)) << ","
                << detail::fmt_double(grid.spec().y_at(iy)) << ","
                << detail::fmt_double(grid.value(ix, iy)) << "\n";
}

} // namespace confreg
