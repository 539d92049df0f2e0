// Model abstraction: a log-likelihood over interest and nuisance
// parameters together with parameter-space boxes and optional analytic
// helpers (MLE, starting point, per-axis scale proxies).
#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "confreg/dataset.hpp"

namespace confreg {

// Per-coordinate lower/upper bound; either side may be infinite.
struct ParamBounds {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
};

using Box = std::vector<ParamBounds>;

inline bool inside_box(std::span<const double> x, const Box& box) {
    for (std::size_t i = 0; i < x.size(); ++i)
        if (!(x[i] >= box[i].lo && x[i] <= box[i].hi)) return false;
    return true;
}

inline bool strictly_inside_box(std::span<const double> x, const Box& box) {
    for (std::size_t i = 0; i < x.size(); ++i)
        if (!(x[i] > box[i].lo && x[i] < box[i].hi)) return false;
    return true;
}

using LogLikelihoodFn = std::function<double(std::span<const double> interest,
                                             std::span<const double> nuisance,
                                             const Dataset& data)>;

// Returns (interest MLE, nuisance MLE) for a dataset.
using MleFn = std::function<std::pair<std::vector<double>, std::vector<double>>(const Dataset&)>;

// Per-interest-axis standard-error proxies; feeds the solver's radial scale.
using ScaleFn = std::function<std::vector<double>(const Dataset&,
                                                  std::span<const double> theta_hat,
                                                  std::span<const double> nu_hat)>;

struct LikelihoodModel {
    std::string name;
    int interest_dim = 2;  // p, region dimension; 2 or 3
    int nuisance_dim = 0;  // q
    LogLikelihoodFn log_likelihood;
    Box parameter_box;  // size p
    Box nuisance_box;   // size q
    MleFn analytic_mle;      // optional; bypasses the simplex maximizer
    MleFn initial_guess;     // optional; start point for the maximizer
    ScaleFn interest_scale;  // optional
    std::vector<std::string> data_columns;
    std::vector<std::string> interest_names;
    std::vector<std::string> nuisance_names;

    void validate() const {
        if (interest_dim != 2 && interest_dim != 3)
            throw std::invalid_argument("model '" + name + "': interest_dim must be 2 or 3");
        if (nuisance_dim < 0)
            throw std::invalid_argument("model '" + name + "': nuisance_dim must be >= 0");
        if (!log_likelihood)
            throw std::invalid_argument("model '" + name + "': log_likelihood is not set");
        if (parameter_box.size() != static_cast<std::size_t>(interest_dim))
            throw std::invalid_argument("model '" + name + "': parameter_box size must equal interest_dim");
        if (nuisance_box.size() != static_cast<std::size_t>(nuisance_dim))
            throw std::invalid_argument("model '" + name + "': nuisance_box size must equal nuisance_dim");
        for (const auto& b : parameter_box)
            if (!(b.lo < b.hi))
                throw std::invalid_argument("model '" + name + "': parameter_box requires lo < hi");
        for (const auto& b : nuisance_box)
            if (!(b.lo < b.hi))
                throw std::invalid_argument("model '" + name + "': nuisance_box requires lo < hi");
        if (interest_names.size() != static_cast<std::size_t>(interest_dim))
            throw std::invalid_argument("model '" + name + "': interest_names size must equal interest_dim");
        if (nuisance_names.size() != static_cast<std::size_t>(nuisance_dim))
            throw std::invalid_argument("model '" + name + "': nuisance_names size must equal nuisance_dim");
    }
};

} // namespace confreg
