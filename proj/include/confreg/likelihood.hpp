// Fitting, profile log-likelihood, and the log-likelihood ratio
// statistic T(theta) = -2 [profile(theta) - profile(theta_hat)].
#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <memory>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "confreg/dataset.hpp"
#include "confreg/errors.hpp"
#include "confreg/model.hpp"
#include "confreg/nelder_mead.hpp"

namespace confreg {

enum class ProfileMode { PlugIn, FullProfile };

namespace detail {

// Proposals outside the box are clamped to its interior shrunk by a
// 1e-12 relative margin, keeping log-likelihoods finite near faces.
inline void clamp_to_box(std::span<double> x, const Box& box) {
    for (std::size_t i = 0; i < x.size(); ++i) {
        const auto& b = box[i];
        const double margin = 1e-12 * std::max({1.0, std::fabs(b.lo), std::fabs(b.hi)});
        const double lo = std::isfinite(b.lo) ? b.lo + margin : b.lo;
        const double hi = std::isfinite(b.hi) ? b.hi - margin : b.hi;
        if (x[i] < lo) x[i] = lo;
        if (x[i] > hi) x[i] = hi;
    }
}

// Parameters drifting past this magnitude mean the maximizer is chasing
// an unbounded likelihood.
constexpr double unbounded_magnitude = 1e8;

inline std::string format_point(std::span<const double> x) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x[i];
    os << ")";
    return os.str();
}

} // namespace detail

// A model bound to a dataset with MLEs computed. Immutable after fit
// except for the log-likelihood evaluation counter, which is atomic so
// rays may be solved concurrently.
class FittedModel {
public:
    FittedModel(LikelihoodModel model, Dataset data,
                std::vector<double> theta_hat, std::vector<double> nu_hat,
                double loglik_at_mle, ProfileMode mode,
                std::vector<double> interest_scales)
        : model_(std::move(model)),
          data_(std::move(data)),
          theta_hat_(std::move(theta_hat)),
          nu_hat_(std::move(nu_hat)),
          loglik_at_mle_(loglik_at_mle),
          mode_(mode),
          interest_scales_(std::move(interest_scales)),
          evals_(std::make_unique<std::atomic<std::uint64_t>>(0)) {}

    const LikelihoodModel& model() const { return model_; }
    const Dataset& data() const { return data_; }
    const std::vector<double>& theta_hat() const { return theta_hat_; }
    const std::vector<double>& nu_hat() const { return nu_hat_; }
    double loglik_at_mle() const { return loglik_at_mle_; }
    ProfileMode profile_mode() const { return mode_; }
    int interest_dim() const { return model_.interest_dim; }
    int nuisance_dim() const { return model_.nuisance_dim; }

    // Per-axis standard-error proxies; empty when the model supplies none.
    const std::vector<double>& interest_scales() const { return interest_scales_; }

    // Total log-likelihood evaluations consumed since fit.
    std::uint64_t evaluation_count() const { return evals_->load(std::memory_order_relaxed); }

    double counted_log_likelihood(std::span<const double> theta,
                                  std::span<const double> nu) const {
        evals_->fetch_add(1, std::memory_order_relaxed);
        return model_.log_likelihood(theta, nu, data_);
    }

private:
    LikelihoodModel model_;
    Dataset data_;
    std::vector<double> theta_hat_;
    std::vector<double> nu_hat_;
    double loglik_at_mle_;
    ProfileMode mode_;
    std::vector<double> interest_scales_;
    std::unique_ptr<std::atomic<std::uint64_t>> evals_;
};

namespace detail {

inline std::vector<double> default_start(const Box& box) {
    std::vector<double> x(box.size());
    for (std::size_t i = 0; i < box.size(); ++i) {
        const auto& b = box[i];
        const bool lo_fin = std::isfinite(b.lo);
        const bool hi_fin = std::isfinite(b.hi);
        if (lo_fin && hi_fin) x[i] = 0.5 * (b.lo + b.hi);
        else if (lo_fin) x[i] = b.lo + 1.0;
        else if (hi_fin) x[i] = b.hi - 1.0;
        else x[i] = 0.0;
    }
    return x;
}

// Maximizes f over the box from `start` with jittered restarts. Throws
// ConvergenceFailure when no restart converges. Returns (argmax, max).
inline std::pair<std::vector<double>, double> maximize_with_restarts(
    const std::function<double(std::span<const double>)>& neg_objective_input,
    std::vector<double> start, const Box& box, const std::string& what) {

    auto guarded = [&](std::span<const double> x) {
        for (double v : x)
            if (std::fabs(v) > unbounded_magnitude)
                throw DegenerateData(what + ": log-likelihood appears unbounded (parameter magnitude exceeded 1e8 near " +
                                     format_point(x) + ")");
        return neg_objective_input(x);
    };
    auto clamp = [&](std::span<double> x) { clamp_to_box(x, box); };

    clamp_to_box(start, box);
    {
        const double f0 = neg_objective_input(start);
        if (!std::isfinite(f0))
            throw DegenerateData(what + ": log-likelihood is non-finite at the start point " +
                                 format_point(start));
    }

    constexpr int restarts = 3;
    std::mt19937_64 rng(0x9e3779b97f4a7c15ull);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);

    bool any_converged = false;
    std::vector<double> best_x;
    double best_f = std::numeric_limits<double>::infinity();
    for (int r = 0; r < restarts; ++r) {
        std::vector<double> x0 = start;
        if (r > 0)
            for (double& v : x0) v += 0.1 * std::max(1.0, std::fabs(v)) * unif(rng);
        NelderMeadOptions opts;
        auto res = nelder_mead_minimize(guarded, std::move(x0), opts, clamp);
        if (res.converged && res.value < best_f) {
            any_converged = true;
            best_f = res.value;
            best_x = std::move(res.x);
        }
    }
    if (!any_converged)
        throw ConvergenceFailure(what + ": simplex maximizer failed to converge within 10000 iterations on every restart");
    return {std::move(best_x), -best_f};
}

} // namespace detail

// Computes the MLE of (interest, nuisance) and returns the fitted model.
// Uses the model's analytic MLE when available, otherwise the simplex
// maximizer over the joint parameter vector.
inline FittedModel fit(const LikelihoodModel& model, Dataset data,
                       ProfileMode mode = ProfileMode::PlugIn) {
    model.validate();
    for (const auto& c : model.data_columns)
        if (!data.has_column(c))
            throw DataError("model '" + model.name + "' requires data column '" + c + "'");

    const std::size_t p = static_cast<std::size_t>(model.interest_dim);
    const std::size_t q = static_cast<std::size_t>(model.nuisance_dim);

    std::vector<double> theta_hat, nu_hat;
    double ll_hat = 0.0;

    if (model.analytic_mle) {
        auto [th, nu] = model.analytic_mle(data);
        theta_hat = std::move(th);
        nu_hat = std::move(nu);
        if (theta_hat.size() != p || nu_hat.size() != q)
            throw std::invalid_argument("model '" + model.name + "': analytic_mle returned wrong dimensions");
        ll_hat = model.log_likelihood(theta_hat, nu_hat, data);
    } else {
        std::vector<double> start;
        if (model.initial_guess) {
            auto [th, nu] = model.initial_guess(data);
            start = std::move(th);
            start.insert(start.end(), nu.begin(), nu.end());
        } else {
            start = detail::default_start(model.parameter_box);
            auto nu0 = detail::default_start(model.nuisance_box);
            start.insert(start.end(), nu0.begin(), nu0.end());
        }
        Box joint_box = model.parameter_box;
        joint_box.insert(joint_box.end(), model.nuisance_box.begin(), model.nuisance_box.end());

        auto neg = [&](std::span<const double> x) {
            return -model.log_likelihood(x.subspan(0, p), x.subspan(p, q), data);
        };
        auto [x, ll] = detail::maximize_with_restarts(neg, std::move(start), joint_box,
                                                      "fit('" + model.name + "')");
        theta_hat.assign(x.begin(), x.begin() + p);
        nu_hat.assign(x.begin() + p, x.end());
        ll_hat = ll;
    }

    if (!std::isfinite(ll_hat))
        throw DegenerateData("fit('" + model.name + "'): log-likelihood is non-finite at the MLE");
    if (!strictly_inside_box(theta_hat, model.parameter_box) ||
        !strictly_inside_box(nu_hat, model.nuisance_box))
        throw DegenerateData("fit('" + model.name + "'): MLE lies on the parameter-space boundary at " +
                             detail::format_point(theta_hat) + " / " + detail::format_point(nu_hat));

    std::vector<double> scales;
    if (model.interest_scale) scales = model.interest_scale(data, theta_hat, nu_hat);

    return FittedModel(model, std::move(data), std::move(theta_hat), std::move(nu_hat),
                       ll_hat, mode, std::move(scales));
}

// Nuisance maximizer nu_hat(theta) for a fixed theta. PlugIn mode keeps
// the global nuisance MLE; FullProfile re-maximizes from it.
inline std::vector<double> profile_nuisance(const FittedModel& fm, std::span<const double> theta) {
    if (theta.size() != static_cast<std::size_t>(fm.interest_dim()))
        throw std::invalid_argument("profile_nuisance: theta has wrong dimension");
    if (!inside_box(theta, fm.model().parameter_box))
        throw OutOfBox("profile_nuisance: theta " + detail::format_point(theta) +
                       " is outside the parameter box");
    if (fm.nuisance_dim() == 0 || fm.profile_mode() == ProfileMode::PlugIn)
        return fm.nu_hat();
    auto neg = [&](std::span<const double> nu) {
        return -fm.counted_log_likelihood(theta, nu);
    };
    auto [nu, ll] = detail::maximize_with_restarts(neg, fm.nu_hat(), fm.model().nuisance_box,
                                                   "profile('" + fm.model().name + "')");
    (void)ll;
    return nu;
}

// Profile log-likelihood at theta. PlugIn substitutes the global
// nuisance MLE; FullProfile re-maximizes over the nuisance parameters.
// With no nuisance parameters this is the plain log-likelihood.
inline double profile_loglik(const FittedModel& fm, std::span<const double> theta) {
    if (theta.size() != static_cast<std::size_t>(fm.interest_dim()))
        throw std::invalid_argument("profile_loglik: theta has wrong dimension");
    if (!inside_box(theta, fm.model().parameter_box))
        throw OutOfBox("profile_loglik: theta " + detail::format_point(theta) +
                       " is outside the parameter box");
    if (fm.nuisance_dim() == 0)
        return fm.counted_log_likelihood(theta, {});
    if (fm.profile_mode() == ProfileMode::PlugIn)
        return fm.counted_log_likelihood(theta, fm.nu_hat());
    auto neg = [&](std::span<const double> nu) {
        return -fm.counted_log_likelihood(theta, nu);
    };
    auto [nu, ll] = detail::maximize_with_restarts(neg, fm.nu_hat(), fm.model().nuisance_box,
                                                   "profile('" + fm.model().name + "')");
    (void)nu;
    return ll;
}

// Log-likelihood ratio statistic T(theta); exactly 0 at the MLE.
inline double lr_statistic(const FittedModel& fm, std::span<const double> theta) {
    const double pl = profile_loglik(fm, theta);
    bool at_mle = true;
    for (std::size_t i = 0; i < theta.size(); ++i)
        if (theta[i] != fm.theta_hat()[i]) { at_mle = false; break; }
    if (at_mle) return 0.0;
    return -2.0 * (pl - fm.loglik_at_mle());
}

} // namespace confreg
