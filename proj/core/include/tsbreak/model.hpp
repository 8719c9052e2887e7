#pragma once

#include <vector>

#include "tsbreak/series.hpp"

namespace tsbreak {

// Segmentation boundaries 0 = b_0 < b_1 < ... < b_m = T. Segment k (1-based)
// covers the 1-based index range [b_{k-1}+1, b_k].
class Partition {
public:
    // Validates the boundary sequence; every segment must span at least
    // h_min samples.
    explicit Partition(std::vector<int> boundaries, int h_min = 1);

    int num_segments() const { return static_cast<int>(boundaries_.size()) - 1; }
    int series_length() const { return boundaries_.back(); }

    // Inclusive 1-based range of segment k, k in [1, num_segments()].
    std::pair<int, int> segment(int k) const;

    const std::vector<int>& boundaries() const { return boundaries_; }

    // Interior break points b_1..b_{m-1}.
    std::vector<int> break_points() const;

    bool operator==(const Partition& other) const = default;

private:
    std::vector<int> boundaries_;
};

// One linear trend piece over the inclusive 1-based range [start, end]:
// fitted value at t is a*t + b.
struct TrendSegment {
    int start = 0;
    int end = 0;
    double a = 0.0; // slope per time step
    double b = 0.0; // intercept

    double value_at(int t) const { return a * static_cast<double>(t) + b; }
};

// One seasonal regime over [start, end] with period d and per-phase values
// s[0..d-1]. The phase restarts at the block start: value at t is
// s[(t - start) mod d].
struct SeasonalBlock {
    int start = 0;
    int end = 0;
    int d = 0;
    std::vector<double> s;

    int phase(int t) const { return (t - start) % d; }
    double value_at(int t) const { return s[static_cast<std::size_t>(phase(t))]; }
};

// A complete fitted decomposition: trend segments and seasonal blocks each
// tile 1..T (the seasonal list may be empty, meaning a zero seasonal
// component). Residuals are stored explicitly so the reconstruction identity
// Y_t = trend(t) + seasonal(t) + residuals[t-1] is testable on its own.
struct DecompositionModel {
    std::vector<TrendSegment> trend;
    std::vector<SeasonalBlock> seasonal;
    std::vector<double> residuals;
    double objective = 0.0;
    double lambda = 0.0;
    int param_count = 0;

    int series_length() const { return static_cast<int>(residuals.size()); }
    double trend_at(int t) const;
    double seasonal_at(int t) const;
};

// Builds a model from fitted components: computes residuals against y,
// sets param_count = 2*#segments + sum of block periods and
// objective = ||residuals||_2 + lambda * param_count. Throws
// std::invalid_argument if the components do not tile 1..T.
DecompositionModel assemble_model(const TimeSeries& y,
                                  std::vector<TrendSegment> trend,
                                  std::vector<SeasonalBlock> seasonal,
                                  double lambda);

// Fitted value trend(t) + seasonal(t); throws std::out_of_range unless
// 1 <= t <= T.
double evaluate_model(const DecompositionModel& model, int t);

// Euclidean norm (not squared) of y_t - fitted(t) over t = 1..T. Throws
// std::invalid_argument if y has missing values (impute first).
double residual_norm(const TimeSeries& y, const DecompositionModel& model);

} // namespace tsbreak
