#pragma once

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "tsbreak/series.hpp"
#include "tsbreak/synth.hpp"

namespace testutil {

inline constexpr double kPi = std::numbers::pi;

// Fig-2-style series: a*t + b + sin(2*pi*t/d) + N(0, sigma^2).
inline tsbreak::GeneratorSpec sine_trend_spec(int T, std::uint64_t seed,
                                              double sigma = 0.1) {
    tsbreak::GeneratorSpec spec;
    spec.T = T;
    spec.trend_pieces = {{1, T, 0.03, -0.5}};
    spec.seasonal = tsbreak::SeasonalSpec{10, 1.0, 0.0, {}};
    spec.sigma = sigma;
    spec.seed = seed;
    return spec;
}

inline tsbreak::TimeSeries random_series(int T, std::uint64_t seed,
                                         double scale = 1.0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-scale, scale);
    std::vector<double> values(static_cast<std::size_t>(T));
    for (auto& v : values) v = dist(rng);
    return tsbreak::TimeSeries(std::move(values));
}

// Independent simple-regression oracle: solve the 2-column least squares
// with a rank-revealing QR instead of running sums.
struct LineFit {
    double ssr;
    double a; // slope
    double b; // intercept
};

inline LineFit line_fit_oracle(const tsbreak::TimeSeries& y, int i, int j) {
    const int n = j - i + 1;
    Eigen::MatrixXd X(n, 2);
    Eigen::VectorXd v(n);
    for (int t = i; t <= j; ++t) {
        X(t - i, 0) = static_cast<double>(t);
        X(t - i, 1) = 1.0;
        v(t - i) = y.at(t);
    }
    const Eigen::VectorXd coef = X.colPivHouseholderQr().solve(v);
    const double ssr = (v - X * coef).squaredNorm();
    return {ssr, coef(0), coef(1)};
}

// Relative closeness with an absolute floor for near-zero references.
inline bool close_rel(double actual, double expected, double rtol,
                      double floor = 1e-12) {
    return std::abs(actual - expected) <=
           rtol * std::max({std::abs(actual), std::abs(expected), floor / rtol});
}

inline double centered_rmse(const std::vector<double>& fitted,
                            const std::vector<double>& truth) {
    double mf = 0.0, mt = 0.0;
    for (double v : fitted) mf += v;
    for (double v : truth) mt += v;
    mf /= static_cast<double>(fitted.size());
    mt /= static_cast<double>(truth.size());
    double ss = 0.0;
    for (std::size_t k = 0; k < fitted.size(); ++k) {
        const double d = (fitted[k] - mf) - (truth[k] - mt);
        ss += d * d;
    }
    return std::sqrt(ss / static_cast<double>(fitted.size()));
}

} // namespace testutil
