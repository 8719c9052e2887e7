#include "tsbreak/classical.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "tsbreak/errors.hpp"

namespace tsbreak {

MovingAverageSpec MovingAverageSpec::for_size(int q) {
    if (q < 1) {
        throw std::invalid_argument("MovingAverageSpec: q must be >= 1");
    }
    MovingAverageSpec spec;
    spec.q = q;
    if (q % 2 == 1) {
        spec.weights.assign(static_cast<std::size_t>(q), 1.0);
    } else {
        spec.weights.assign(static_cast<std::size_t>(q) + 1, 1.0);
        spec.weights.front() = 0.5;
        spec.weights.back() = 0.5;
    }
    return spec;
}

std::vector<IndexedValue> moving_average(const TimeSeries& y, int q) {
    if (y.has_missing()) {
        throw std::invalid_argument("moving_average: series has missing values");
    }
    if (q > y.size()) {
        throw InsufficientDataError("moving_average: q=" + std::to_string(q) +
                                    " exceeds series length " +
                                    std::to_string(y.size()));
    }
    const auto spec = MovingAverageSpec::for_size(q);
    const int half = q / 2;
    const int first = half + 1;
    const int last = y.size() - half;
    if (first > last) {
        throw InsufficientDataError("moving_average: no index admits a full window");
    }

    std::vector<IndexedValue> out;
    out.reserve(static_cast<std::size_t>(last - first + 1));
    for (int t = first; t <= last; ++t) {
        double acc = 0.0;
        for (std::size_t w = 0; w < spec.weights.size(); ++w) {
            acc += spec.weights[w] * y.at(t - half + static_cast<int>(w));
        }
        out.push_back({t, acc / q});
    }
    return out;
}

std::vector<double> seasonal_averages(const std::vector<IndexedValue>& detrended,
                                      int q, bool center) {
    if (q < 1) {
        throw std::invalid_argument("seasonal_averages: q must be >= 1");
    }
    if (detrended.empty()) {
        throw InsufficientDataError("seasonal_averages: empty input");
    }
    std::vector<double> sums(static_cast<std::size_t>(q), 0.0);
    std::vector<int> counts(static_cast<std::size_t>(q), 0);
    for (const auto& point : detrended) {
        const int k = (point.t - 1) % q; // 0-based phase
        sums[static_cast<std::size_t>(k)] += point.value;
        counts[static_cast<std::size_t>(k)] += 1;
    }
    std::vector<double> s(static_cast<std::size_t>(q));
    for (int k = 0; k < q; ++k) {
        if (counts[static_cast<std::size_t>(k)] == 0) {
            throw InsufficientDataError("seasonal_averages: phase " +
                                        std::to_string(k + 1) + " has no samples");
        }
        s[static_cast<std::size_t>(k)] =
            sums[static_cast<std::size_t>(k)] / counts[static_cast<std::size_t>(k)];
    }
    if (center) {
        double mean = 0.0;
        for (double v : s) mean += v;
        mean /= q;
        for (double& v : s) v -= mean;
    }
    return s;
}

std::vector<double> refit_trend(const TimeSeries& deseasonalized, int degree) {
    if (degree < 0) {
        throw std::invalid_argument("refit_trend: degree must be >= 0");
    }
    const int T = deseasonalized.size();
    if (T < degree + 1) {
        throw InsufficientDataError("refit_trend: need at least degree+1 samples");
    }
    if (deseasonalized.has_missing()) {
        throw std::invalid_argument("refit_trend: series has missing values");
    }

    Eigen::MatrixXd V(T, degree + 1);
    Eigen::VectorXd b(T);
    for (int t = 1; t <= T; ++t) {
        double power = 1.0;
        for (int k = 0; k <= degree; ++k) {
            V(t - 1, k) = power;
            power *= t;
        }
        b(t - 1) = deseasonalized.at(t);
    }
    Eigen::VectorXd coeffs = V.colPivHouseholderQr().solve(b);
    return {coeffs.data(), coeffs.data() + coeffs.size()};
}

DecompositionModel classical_decompose(const TimeSeries& y, int q, int degree,
                                       bool seasonal_on_raw) {
    if (degree < 0 || degree > 1) {
        throw std::invalid_argument(
            "classical_decompose: trend segments are linear; degree must be 0 or 1");
    }
    const int T = y.size();

    std::vector<IndexedValue> seasonal_input;
    if (seasonal_on_raw) {
        seasonal_input.reserve(static_cast<std::size_t>(T));
        for (int t = 1; t <= T; ++t) {
            seasonal_input.push_back({t, y.at(t)});
        }
    } else {
        const auto smoothed = moving_average(y, q);
        seasonal_input.reserve(smoothed.size());
        for (const auto& point : smoothed) {
            seasonal_input.push_back({point.t, y.at(point.t) - point.value});
        }
    }
    const auto s = seasonal_averages(seasonal_input, q, /*center=*/!seasonal_on_raw);

    std::vector<double> deseasonalized(static_cast<std::size_t>(T));
    for (int t = 1; t <= T; ++t) {
        deseasonalized[static_cast<std::size_t>(t - 1)] =
            y.at(t) - s[static_cast<std::size_t>((t - 1) % q)];
    }
    const auto coeffs = refit_trend(TimeSeries(deseasonalized), degree);
    const double slope = degree >= 1 ? coeffs[1] : 0.0;
    const double intercept = coeffs[0];

    std::vector<TrendSegment> trend{{1, T, slope, intercept}};
    std::vector<SeasonalBlock> seasonal{{1, T, q, s}};
    return assemble_model(y, std::move(trend), std::move(seasonal), /*lambda=*/0.0);
}

} // namespace tsbreak
