// Grid-evaluation baseline: T over a rectangular lattice plus level-set
// contour extraction with 16-case marching squares.
#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "confreg/errors.hpp"
#include "confreg/likelihood.hpp"
#include "confreg/parallel.hpp"

namespace confreg {

struct GridSpec {
    std::array<double, 2> lower{};
    std::array<double, 2> upper{};
    int n_per_axis = 2;

    void validate() const {
        if (n_per_axis < 2)
            throw std::invalid_argument("GridSpec: n_per_axis must be >= 2");
        for (int i = 0; i < 2; ++i)
            if (!(lower[i] < upper[i]))
                throw std::invalid_argument("GridSpec: lower must be < upper per axis");
    }
    double dx() const { return (upper[0] - lower[0]) / (n_per_axis - 1); }
    double dy() const { return (upper[1] - lower[1]) / (n_per_axis - 1); }
    double x_at(int ix) const { return lower[0] + ix * dx(); }
    double y_at(int iy) const { return lower[1] + iy * dy(); }
};

// T over the lattice, row-major: rows are y, columns are x.
class GridValues {
public:
    GridValues(GridSpec spec, std::vector<double> values)
        : spec_(spec), values_(std::move(values)) {
        spec_.validate();
        const std::size_t expect =
            static_cast<std::size_t>(spec_.n_per_axis) * static_cast<std::size_t>(spec_.n_per_axis);
        if (values_.size() != expect)
            throw std::invalid_argument("GridValues: expected " + std::to_string(expect) + " values");
    }

    const GridSpec& spec() const { return spec_; }
    int n() const { return spec_.n_per_axis; }
    double value(int ix, int iy) const {
        return values_[static_cast<std::size_t>(iy) * n() + ix];
    }
    const std::vector<double>& values() const { return values_; }

private:
    GridSpec spec_;
    std::vector<double> values_;
};

// Evaluates T at each of the n^2 lattice points (one counted
// log-likelihood evaluation per point in plug-in mode). Rows are
// evaluated in parallel when threads > 1.
inline GridValues evaluate_grid(const FittedModel& fm, const GridSpec& spec, int threads = 1) {
    spec.validate();
    if (fm.interest_dim() != 2)
        throw std::invalid_argument("evaluate_grid: model must have interest_dim == 2");
    const Box& box = fm.model().parameter_box;
    const std::array<double, 2> corners_lo{spec.lower[0], spec.lower[1]};
    const std::array<double, 2> corners_hi{spec.upper[0], spec.upper[1]};
    if (!inside_box(corners_lo, box) || !inside_box(corners_hi, box))
        throw OutOfBox("evaluate_grid: grid exceeds the parameter box");

    const int n = spec.n_per_axis;
    std::vector<double> values(static_cast<std::size_t>(n) * n);
    parallel_for_indexed(static_cast<std::size_t>(n), threads, [&](std::size_t iy) {
        const double y = spec.y_at(static_cast<int>(iy));
        for (int ix = 0; ix < n; ++ix) {
            const std::array<double, 2> theta{spec.x_at(ix), y};
            values[iy * static_cast<std::size_t>(n) + ix] = lr_statistic(fm, theta);
        }
    });
    return GridValues(spec, std::move(values));
}

struct ContourSegment {
    std::array<double, 2> a{};
    std::array<double, 2> b{};
};

// Level-set polyline: raw cell segments plus loops/chains assembled by
// endpoint matching. Chains are open where the contour leaves the grid;
// touches_border flags that case (the region was not fully captured).
struct ContourPolyline {
    std::vector<ContourSegment> segments;
    std::vector<std::vector<std::array<double, 2>>> closed_loops;
    std::vector<std::vector<std::array<double, 2>>> open_chains;
    bool touches_border = false;
};

namespace detail {

// Snap key for endpoint matching (1e-9 tolerance).
inline std::pair<std::int64_t, std::int64_t> snap_key(const std::array<double, 2>& p) {
    return {static_cast<std::int64_t>(std::llround(p[0] * 1e9)),
            static_cast<std::int64_t>(std::llround(p[1] * 1e9))};
}

} // namespace detail

// Standard 16-case marching squares with linear interpolation along cell
// edges. A corner counts as "above" when its value is strictly greater
// than the level. The two ambiguous saddle cases (diagonally opposite
// corners above) are resolved by the cell-center average: when the
// center is above, the above-corners connect through the cell.
inline ContourPolyline marching_squares(const GridValues& grid, double level) {
    const GridSpec& spec = grid.spec();
    const int n = spec.n_per_axis;
    ContourPolyline out;

    auto interp = [&](double xa, double ya, double va, double xb, double yb,
                      double vb) -> std::array<double, 2> {
        const double t = (level - va) / (vb - va);
        return {xa + t * (xb - xa), ya + t * (yb - ya)};
    };

    for (int iy = 0; iy + 1 < n; ++iy) {
        for (int ix = 0; ix + 1 < n; ++ix) {
            const double x0 = spec.x_at(ix), x1 = spec.x_at(ix + 1);
            const double y0 = spec.y_at(iy), y1 = spec.y_at(iy + 1);
            // Corners: 0 = (x0,y0), 1 = (x1,y0), 2 = (x1,y1), 3 = (x0,y1).
            const double v0 = grid.value(ix, iy);
            const double v1 = grid.value(ix + 1, iy);
            const double v2 = grid.value(ix + 1, iy + 1);
            const double v3 = grid.value(ix, iy + 1);
            const int c = (v0 > level ? 1 : 0) | (v1 > level ? 2 : 0) |
                          (v2 > level ? 4 : 0) | (v3 > level ? 8 : 0);
            if (c == 0 || c == 15) continue;

            // Edge crossing points (computed lazily per case).
            auto bottom = [&] { return interp(x0, y0, v0, x1, y0, v1); };
            auto right = [&] { return interp(x1, y0, v1, x1, y1, v2); };
            auto top = [&] { return interp(x0, y1, v3, x1, y1, v2); };
            auto left = [&] { return interp(x0, y0, v0, x0, y1, v3); };
            auto emit = [&](std::array<double, 2> a, std::array<double, 2> b) {
                out.segments.push_back({a, b});
            };

            switch (c) {
                case 1: case 14: emit(left(), bottom()); break;
                case 2: case 13: emit(bottom(), right()); break;
                case 3: case 12: emit(left(), right()); break;
                case 4: case 11: emit(right(), top()); break;
                case 6: case 9:  emit(bottom(), top()); break;
                case 7: case 8:  emit(left(), top()); break;
                case 5: {  // corners 0 and 2 above
                    const double center = 0.25 * (v0 + v1 + v2 + v3);
                    if (center > level) { emit(left(), top()); emit(bottom(), right()); }
                    else                { emit(left(), bottom()); emit(right(), top()); }
                    break;
                }
                case 10: {  // corners 1 and 3 above
                    const double center = 0.25 * (v0 + v1 + v2 + v3);
                    if (center > level) { emit(left(), bottom()); emit(right(), top()); }
                    else                { emit(left(), top()); emit(bottom(), right()); }
                    break;
                }
                default: break;
            }
        }
    }

    // Assemble segments into chains by snapped-endpoint matching.
    using Key = std::pair<std::int64_t, std::int64_t>;
    std::map<Key, std::vector<std::pair<std::size_t, int>>> adj;  // -> (segment, end)
    for (std::size_t s = 0; s < out.segments.size(); ++s) {
        adj[detail::snap_key(out.segments[s].a)].push_back({s, 0});
        adj[detail::snap_key(out.segments[s].b)].push_back({s, 1});
    }

    std::vector<bool> used(out.segments.size(), false);
    auto walk = [&](std::size_t start_seg) {
        std::vector<std::array<double, 2>> chain;
        used[start_seg] = true;
        chain.push_back(out.segments[start_seg].a);
        chain.push_back(out.segments[start_seg].b);
        // Extend forward from the tail, then backward from the head.
        for (int pass = 0; pass < 2; ++pass) {
            for (;;) {
                const Key key = detail::snap_key(pass == 0 ? chain.back() : chain.front());
                const auto it = adj.find(key);
                std::size_t next_seg = static_cast<std::size_t>(-1);
                int next_end = 0;
                if (it != adj.end())
                    for (const auto& [s, end] : it->second)
                        if (!used[s]) { next_seg = s; next_end = end; break; }
                if (next_seg == static_cast<std::size_t>(-1)) break;
                used[next_seg] = true;
                const auto& seg = out.segments[next_seg];
                const auto& far = next_end == 0 ? seg.b : seg.a;
                if (pass == 0) chain.push_back(far);
                else chain.insert(chain.begin(), far);
            }
        }
        return chain;
    };

    for (std::size_t s = 0; s < out.segments.size(); ++s) {
        if (used[s]) continue;
        auto chain = walk(s);
        if (chain.size() >= 3 &&
            detail::snap_key(chain.front()) == detail::snap_key(chain.back())) {
            chain.pop_back();  // store loops without the repeated closing vertex
            out.closed_loops.push_back(std::move(chain));
        } else {
            out.open_chains.push_back(std::move(chain));
        }
    }

    // Border contact check: any segment endpoint on the grid's outer frame.
    const double ex = 1e-12 * std::max(1.0, std::max(std::fabs(spec.lower[0]), std::fabs(spec.upper[0])));
    const double ey = 1e-12 * std::max(1.0, std::max(std::fabs(spec.lower[1]), std::fabs(spec.upper[1])));
    for (const auto& seg : out.segments) {
        for (const auto& p : {seg.a, seg.b}) {
            if (std::fabs(p[0] - spec.lower[0]) <= ex || std::fabs(p[0] - spec.upper[0]) <= ex ||
                std::fabs(p[1] - spec.lower[1]) <= ey || std::fabs(p[1] - spec.upper[1]) <= ey) {
                out.touches_border = true;
                break;
            }
        }
        if (out.touches_border) break;
    }
    return out;
}

} // namespace confreg
