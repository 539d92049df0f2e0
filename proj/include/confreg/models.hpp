// Built-in likelihood models (bivariate/trivariate normal mean vectors,
// simple linear regression), their closed-form statistics, a name
// registry for the CLI, and seeded synthetic-data generators.
#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "confreg/dataset.hpp"
#include "confreg/errors.hpp"
#include "confreg/model.hpp"

namespace confreg {

inline constexpr std::uint64_t kDefaultSeed = 42;

// ---------------------------------------------------------------------
// Bivariate normal, inference on the mean vector (mu_x, mu_y) with
// nuisance (sigma2_x, sigma2_y, rho).
// ---------------------------------------------------------------------

struct BivariateNormalMle {
    double mu_x = 0.0, mu_y = 0.0;
    double sigma2_x = 1.0, sigma2_y = 1.0;  // n-denominator variances
    double rho = 0.0;
};

inline BivariateNormalMle bivariate_normal_mle(const Dataset& data) {
    const auto& x = data.col("x");
    const auto& y = data.col("y");
    const double n = static_cast<double>(data.n());
    BivariateNormalMle m;
    for (std::size_t i = 0; i < x.size(); ++i) { m.mu_x += x[i]; m.mu_y += y[i]; }
    m.mu_x /= n;
    m.mu_y /= n;
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - m.mu_x, dy = y[i] - m.mu_y;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    m.sigma2_x = sxx / n;
    m.sigma2_y = syy / n;
    if (!(m.sigma2_x > 0.0) || !(m.sigma2_y > 0.0))
        throw DegenerateData("bivariate normal: zero sample variance");
    m.rho = sxy / n / std::sqrt(m.sigma2_x * m.sigma2_y);
    if (!(std::fabs(m.rho) < 1.0))
        throw DegenerateData("bivariate normal: |rho| = 1 (perfectly collinear data)");
    return m;
}

// Closed-form mean-vector LR statistic of the bivariate normal with
// plug-in covariance MLEs:
//   T(mu) = n / (1 - rho^2) [ dx^2/s2x + dy^2/s2y - 2 rho dx dy/(sx sy) ],
// with dx = mu_x_hat - mu_x and dy = mu_y_hat - mu_y.
inline double bivariate_normal_lr(const BivariateNormalMle& m, std::size_t n,
                                  double mu_x, double mu_y) {
    const double dx = (m.mu_x - mu_x) / std::sqrt(m.sigma2_x);
    const double dy = (m.mu_y - mu_y) / std::sqrt(m.sigma2_y);
    return static_cast<double>(n) / (1.0 - m.rho * m.rho) *
           (dx * dx + dy * dy - 2.0 * m.rho * dx * dy);
}

inline LikelihoodModel bivariate_normal_model() {
    LikelihoodModel m;
    m.name = "bvnorm";
    m.interest_dim = 2;
    m.nuisance_dim = 3;
    m.data_columns = {"x", "y"};
    m.interest_names = {"mu_x", "mu_y"};
    m.nuisance_names = {"sigma2_x", "sigma2_y", "rho"};
    m.parameter_box = Box(2);  // means unbounded
    m.nuisance_box = {ParamBounds{0.0, std::numeric_limits<double>::infinity()},
                      ParamBounds{0.0, std::numeric_limits<double>::infinity()},
                      ParamBounds{-1.0, 1.0}};
    m.log_likelihood = [](std::span<const double> theta, std::span<const double> nu,
                          const Dataset& data) {
        const double mu_x = theta[0], mu_y = theta[1];
        const double s2x = nu[0], s2y = nu[1], rho = nu[2];
        if (!(s2x > 0.0) || !(s2y > 0.0) || !(std::fabs(rho) < 1.0))
            return -std::numeric_limits<double>::infinity();
        const auto& x = data.col("x");
        const auto& y = data.col("y");
        const double n = static_cast<double>(data.n());
        const double one_m_r2 = 1.0 - rho * rho;
        const double sx = std::sqrt(s2x), sy = std::sqrt(s2y);
        double quad = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double zx = (x[i] - mu_x) / sx;
            const double zy = (y[i] - mu_y) / sy;
            quad += zx * zx + zy * zy - 2.0 * rho * zx * zy;
        }
        return -n * std::log(2.0 * std::numbers::pi) -
               0.5 * n * std::log(s2x * s2y * one_m_r2) - 0.5 * quad / one_m_r2;
    };
    m.analytic_mle = [](const Dataset& data) {
        const auto mle = bivariate_normal_mle(data);
        return std::pair<std::vector<double>, std::vector<double>>(
            {mle.mu_x, mle.mu_y}, {mle.sigma2_x, mle.sigma2_y, mle.rho});
    };
    m.initial_guess = [](const Dataset& data) {
        // Moment guesses with rho = 0; the maximizer does the rest.
        const auto& x = data.col("x");
        const auto& y = data.col("y");
        const double n = static_cast<double>(data.n());
        double mx = 0.0, my = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) { mx += x[i]; my += y[i]; }
        mx /= n;
        my /= n;
        double sxx = 0.0, syy = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            sxx += (x[i] - mx) * (x[i] - mx);
            syy += (y[i] - my) * (y[i] - my);
        }
        return std::pair<std::vector<double>, std::vector<double>>(
            {mx, my}, {std::max(sxx / n, 1e-8), std::max(syy / n, 1e-8), 0.0});
    };
    m.interest_scale = [](const Dataset& data, std::span<const double>,
                          std::span<const double> nu) {
        const double rn = std::sqrt(static_cast<double>(data.n()));
        return std::vector<double>{std::sqrt(nu[0]) / rn, std::sqrt(nu[1]) / rn};
    };
    return m;
}

// ---------------------------------------------------------------------
// Trivariate normal, inference on the mean vector with nuisance
// (3 variances, 3 correlations).
// ---------------------------------------------------------------------

namespace detail {

// Cholesky of a symmetric 3x3; returns false when not positive definite.
inline bool cholesky3(const std::array<std::array<double, 3>, 3>& a,
                      std::array<std::array<double, 3>, 3>& l) {
    l = {};
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j <= i; ++j) {
            double s = a[i][j];
            for (int k = 0; k < j; ++k) s -= l[i][k] * l[j][k];
            if (i == j) {
                if (!(s > 0.0)) return false;
                l[i][i] = std::sqrt(s);
            } else {
                l[i][j] = s / l[j][j];
            }
        }
    }
    return true;
}

inline std::array<std::array<double, 3>, 3> covariance_from(std::span<const double> nu) {
    const double s1 = std::sqrt(nu[0]), s2 = std::sqrt(nu[1]), s3 = std::sqrt(nu[2]);
    const double rxy = nu[3], rxz = nu[4], ryz = nu[5];
    return {{{nu[0], rxy * s1 * s2, rxz * s1 * s3},
             {rxy * s1 * s2, nu[1], ryz * s2 * s3},
             {rxz * s1 * s3, ryz * s2 * s3, nu[2]}}};
}

} // namespace detail

struct TrivariateNormalMle {
    std::array<double, 3> mean{};
    std::array<std::array<double, 3>, 3> cov{};  // n-denominator
};

inline TrivariateNormalMle trivariate_normal_mle(const Dataset& data) {
    const std::array<const std::vector<double>*, 3> cols{&data.col("x"), &data.col("y"),
                                                         &data.col("z")};
    const double n = static_cast<double>(data.n());
    TrivariateNormalMle m;
    for (int j = 0; j < 3; ++j) {
        for (double v : *cols[j]) m.mean[j] += v;
        m.mean[j] /= n;
    }
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            double s = 0.0;
            for (std::size_t i = 0; i < cols[a]->size(); ++i)
                s += ((*cols[a])[i] - m.mean[a]) * ((*cols[b])[i] - m.mean[b]);
            m.cov[a][b] = s / n;
        }
    std::array<std::array<double, 3>, 3> l;
    if (!detail::cholesky3(m.cov, l))
        throw DegenerateData("trivariate normal: singular sample covariance");
    return m;
}

// Closed-form mean-vector LR statistic with plug-in covariance:
// T(mu) = n (mu_hat - mu)^T Sigma_hat^{-1} (mu_hat - mu).
inline double trivariate_normal_lr(const TrivariateNormalMle& m, std::size_t n,
                                   std::span<const double> mu) {
    std::array<std::array<double, 3>, 3> l;
    if (!detail::cholesky3(m.cov, l))
        throw DegenerateData("trivariate normal: singular covariance");
    std::array<double, 3> d{m.mean[0] - mu[0], m.mean[1] - mu[1], m.mean[2] - mu[2]};
    // Solve L w = d; then T = n ||w||^2.
    std::array<double, 3> w{};
    for (int i = 0; i < 3; ++i) {
        double s = d[i];
        for (int k = 0; k < i; ++k) s -= l[i][k] * w[k];
        w[i] = s / l[i][i];
    }
    return static_cast<double>(n) * (w[0] * w[0] + w[1] * w[1] + w[2] * w[2]);
}

inline LikelihoodModel trivariate_normal_model() {
    LikelihoodModel m;
    m.name = "tvnorm";
    m.interest_dim = 3;
    m.nuisance_dim = 6;
    m.data_columns = {"x", "y", "z"};
    m.interest_names = {"mu_x", "mu_y", "mu_z"};
    m.nuisance_names = {"sigma2_x", "sigma2_y", "sigma2_z", "rho_xy", "rho_xz", "rho_yz"};
    m.parameter_box = Box(3);
    const auto inf = std::numeric_limits<double>::infinity();
    m.nuisance_box = {ParamBounds{0.0, inf}, ParamBounds{0.0, inf}, ParamBounds{0.0, inf},
                      ParamBounds{-1.0, 1.0}, ParamBounds{-1.0, 1.0}, ParamBounds{-1.0, 1.0}};
    m.log_likelihood = [](std::span<const double> theta, std::span<const double> nu,
                          const Dataset& data) {
        if (!(nu[0] > 0.0) || !(nu[1] > 0.0) || !(nu[2] > 0.0))
            return -std::numeric_limits<double>::infinity();
        const auto cov = detail::covariance_from(nu);
        std::array<std::array<double, 3>, 3> l;
        if (!detail::cholesky3(cov, l))
            return -std::numeric_limits<double>::infinity();
        const double log_det = 2.0 * (std::log(l[0][0]) + std::log(l[1][1]) + std::log(l[2][2]));
        const std::array<const std::vector<double>*, 3> cols{&data.col("x"), &data.col("y"),
                                                             &data.col("z")};
        const double n = static_cast<double>(data.n());
        double quad = 0.0;
        for (std::size_t i = 0; i < cols[0]->size(); ++i) {
            const std::array<double, 3> d{(*cols[0])[i] - theta[0], (*cols[1])[i] - theta[1],
                                          (*cols[2])[i] - theta[2]};
            std::array<double, 3> w{};
            for (int a = 0; a < 3; ++a) {
                double s = d[a];
                for (int k = 0; k < a; ++k) s -= l[a][k] * w[k];
                w[a] = s / l[a][a];
            }
            quad += w[0] * w[0] + w[1] * w[1] + w[2] * w[2];
        }
        return -1.5 * n * std::log(2.0 * std::numbers::pi) - 0.5 * n * log_det - 0.5 * quad;
    };
    m.analytic_mle = [](const Dataset& data) {
        const auto mle = trivariate_normal_mle(data);
        std::vector<double> nu(6);
        nu[0] = mle.cov[0][0];
        nu[1] = mle.cov[1][1];
        nu[2] = mle.cov[2][2];
        nu[3] = mle.cov[0][1] / std::sqrt(nu[0] * nu[1]);
        nu[4] = mle.cov[0][2] / std::sqrt(nu[0] * nu[2]);
        nu[5] = mle.cov[1][2] / std::sqrt(nu[1] * nu[2]);
        return std::pair<std::vector<double>, std::vector<double>>(
            {mle.mean[0], mle.mean[1], mle.mean[2]}, std::move(nu));
    };
    m.interest_scale = [](const Dataset& data, std::span<const double>,
                          std::span<const double> nu) {
        const double rn = std::sqrt(static_cast<double>(data.n()));
        return std::vector<double>{std::sqrt(nu[0]) / rn, std::sqrt(nu[1]) / rn,
                                   std::sqrt(nu[2]) / rn};
    };
    return m;
}

// ---------------------------------------------------------------------
// Simple linear regression y = b0 + b1 x + eps, eps ~ N(0, sigma2);
// interest (b0, b1), nuisance sigma2.
// ---------------------------------------------------------------------

inline double regression_rss(const Dataset& data, double b0, double b1) {
    const auto& x = data.col("x");
    const auto& y = data.col("y");
    double rss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double e = y[i] - b0 - b1 * x[i];
        rss += e * e;
    }
    return rss;
}

inline LikelihoodModel linear_regression_model() {
    LikelihoodModel m;
    m.name = "linreg";
    m.interest_dim = 2;
    m.nuisance_dim = 1;
    m.data_columns = {"x", "y"};
    m.interest_names = {"beta0", "beta1"};
    m.nuisance_names = {"sigma2"};
    m.parameter_box = Box(2);
    m.nuisance_box = {ParamBounds{0.0, std::numeric_limits<double>::infinity()}};
    m.log_likelihood = [](std::span<const double> theta, std::span<const double> nu,
                          const Dataset& data) {
        const double s2 = nu[0];
        if (!(s2 > 0.0)) return -std::numeric_limits<double>::infinity();
        const double n = static_cast<double>(data.n());
        const double rss = regression_rss(data, theta[0], theta[1]);
        return -0.5 * n * std::log(2.0 * std::numbers::pi * s2) - 0.5 * rss / s2;
    };
    m.analytic_mle = [](const Dataset& data) {
        const auto& x = data.col("x");
        const auto& y = data.col("y");
        const double n = static_cast<double>(data.n());
        double mx = 0.0, my = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) { mx += x[i]; my += y[i]; }
        mx /= n;
        my /= n;
        double sxx = 0.0, sxy = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            sxx += (x[i] - mx) * (x[i] - mx);
            sxy += (x[i] - mx) * (y[i] - my);
        }
        if (!(sxx > 0.0))
            throw DegenerateData("linear regression: all x values are equal");
        const double b1 = sxy / sxx;
        const double b0 = my - b1 * mx;
        const double s2 = regression_rss(data, b0, b1) / n;
        if (!(s2 > 0.0))
            throw DegenerateData("linear regression: zero residual variance (data lie on a line)");
        return std::pair<std::vector<double>, std::vector<double>>({b0, b1}, {s2});
    };
    m.initial_guess = [](const Dataset& data) {
        const auto& y = data.col("y");
        const double n = static_cast<double>(data.n());
        double my = 0.0;
        for (double v : y) my += v;
        my /= n;
        double vy = 0.0;
        for (double v : y) vy += (v - my) * (v - my);
        return std::pair<std::vector<double>, std::vector<double>>(
            {0.0, 0.0}, {std::max(vy / n + my * my, 1e-4)});
    };
    m.interest_scale = [](const Dataset& data, std::span<const double>,
                          std::span<const double> nu) {
        const auto& x = data.col("x");
        const double n = static_cast<double>(data.n());
        double mx = 0.0, sx2 = 0.0;
        for (double v : x) mx += v;
        mx /= n;
        double sxx = 0.0;
        for (double v : x) { sxx += (v - mx) * (v - mx); sx2 += v * v; }
        const double s = std::sqrt(nu[0]);
        // Standard errors of the OLS intercept and slope.
        return std::vector<double>{s * std::sqrt(sx2 / (n * sxx)), s / std::sqrt(sxx)};
    };
    return m;
}

// ---------------------------------------------------------------------
// Registry and synthetic data.
// ---------------------------------------------------------------------

inline std::vector<std::string> model_names() { return {"bvnorm", "tvnorm", "linreg"}; }

inline LikelihoodModel make_model(std::string_view name) {
    if (name == "bvnorm") return bivariate_normal_model();
    if (name == "tvnorm") return trivariate_normal_model();
    if (name == "linreg") return linear_regression_model();
    throw std::invalid_argument("unknown model '" + std::string(name) +
                                "' (available: bvnorm, tvnorm, linreg)");
}

// Deterministic standard-normal stream: explicit Box-Muller over a
// mt19937_64 so draws are identical across platforms and library
// versions (std::normal_distribution is implementation-defined).
class GaussianSampler {
public:
    explicit GaussianSampler(std::uint64_t seed) : rng_(seed) {}

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform01();
        const double u2 = uniform01();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

private:
    double uniform01() {  // open interval (0, 1)
        return (static_cast<double>(rng_() >> 11) + 0.5) * 0x1.0p-53;
    }
    std::mt19937_64 rng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

inline Dataset generate_bivariate_normal(std::size_t n, double mu_x, double mu_y,
                                         double sigma2_x, double sigma2_y, double rho,
                                         std::uint64_t seed = kDefaultSeed) {
    GaussianSampler g(seed);
    const double sx = std::sqrt(sigma2_x), sy = std::sqrt(sigma2_y);
    const double c = std::sqrt(1.0 - rho * rho);
    std::vector<double> xs(n), ys(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double z1 = g.next(), z2 = g.next();
        xs[i] = mu_x + sx * z1;
        ys[i] = mu_y + sy * (rho * z1 + c * z2);
    }
    return Dataset({"x", "y"}, {std::move(xs), std::move(ys)});
}

inline Dataset generate_trivariate_normal(std::size_t n, std::array<double, 3> mu,
                                          double sigma2, double rho_pairwise,
                                          std::uint64_t seed = kDefaultSeed) {
    // Cholesky of the equicorrelation matrix (all off-diagonals rho).
    const double r = rho_pairwise;
    std::array<std::array<double, 3>, 3> corr{{{1, r, r}, {r, 1, r}, {r, r, 1}}};
    std::array<std::array<double, 3>, 3> l;
    if (!detail::cholesky3(corr, l))
        throw std::invalid_argument("generate_trivariate_normal: correlation matrix not positive definite");
    GaussianSampler g(seed);
    const double s = std::sqrt(sigma2);
    std::vector<std::vector<double>> cols(3, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
        const std::array<double, 3> z{g.next(), g.next(), g.next()};
        for (int a = 0; a < 3; ++a) {
            double v = 0.0;
            for (int k = 0; k <= a; ++k) v += l[a][k] * z[k];
            cols[a][i] = mu[a] + s * v;
        }
    }
    return Dataset({"x", "y", "z"}, {std::move(cols[0]), std::move(cols[1]), std::move(cols[2])});
}

inline Dataset generate_linear_regression(std::size_t n, double b0, double b1, double sigma2,
                                          std::uint64_t seed = kDefaultSeed) {
    GaussianSampler g(seed);
    const double s = std::sqrt(sigma2);
    std::vector<double> xs(n), ys(n);
    for (std::size_t i = 0; i < n; ++i) {
        xs[i] = 10.0 * static_cast<double>(i) / static_cast<double>(n - 1);
        ys[i] = b0 + b1 * xs[i] + s * g.next();
    }
    return Dataset({"x", "y"}, {std::move(xs), std::move(ys)});
}

// Multiplies every column by `factor` (the spread-scaling experiment).
inline Dataset scale_columns(const Dataset& data, double factor) {
    std::vector<std::vector<double>> cols;
    cols.reserve(data.n_columns());
    for (std::size_t i = 0; i < data.n_columns(); ++i) {
        auto c = data.col(i);
        for (double& v : c) v *= factor;
        cols.push_back(std::move(c));
    }
    return Dataset(data.names(), std::move(cols));
}

} // namespace confreg
