#pragma once

#include <utility>
#include <vector>

#include "tsbreak/model.hpp"
#include "tsbreak/series.hpp"

namespace tsbreak {

struct SegmentFit {
    double ssr = 0.0;
    double a = 0.0; // slope
    double b = 0.0; // intercept
};

// Closed-form simple linear regression of Y_t on t over the 1-based
// inclusive range [i, j]; returns the minimized sum of squared residuals
// and the minimizing (slope, intercept). Requires j - i + 1 >= 2.
SegmentFit segment_ssr(const TimeSeries& y, int i, int j);

// Triangular table of single-segment SSR values for all admissible (i, j)
// with j - i + 1 >= h_min, built in O(T^2) by updating running sums
// incrementally in j. Keeps a copy of the series so solutions can be
// refit without the caller re-supplying it.
class SsrTable {
public:
    SsrTable(const TimeSeries& y, int h_min);

    double at(int i, int j) const; // 1-based, j - i + 1 >= h_min
    int series_length() const { return T_; }
    int h_min() const { return h_min_; }
    const std::vector<double>& series_values() const { return values_; }

private:
    int T_ = 0;
    int h_min_ = 2;
    std::vector<double> values_;
    std::vector<double> ssr_; // row-major T x T, admissible entries only
};

inline SsrTable build_ssr_table(const TimeSeries& y, int h_min) {
    return SsrTable(y, h_min);
}

struct BreakSolution {
    int m = 0;                         // number of segments
    Partition breaks;                  // boundaries {0, t*_1, ..., T}
    double ssr_total = 0.0;
    std::vector<TrendSegment> segments;
    double objective = 0.0;            // sqrt(ssr_total) + 2*m*lambda
    double lambda = 0.0;
};

// Exact global minimizer of total SSR over all partitions into m segments
// respecting the table's h_min, by forward dynamic programming with
// backpointers. Ties in the inner minimization break toward the smallest
// break index. Throws InfeasibleError when m segments of length h_min do
// not fit in T.
BreakSolution dp_optimal_breaks(const SsrTable& table, int m);

struct BreakSearchResult {
    BreakSolution best;
    std::vector<std::pair<int, double>> objective_curve; // (m, sqrt(SSR)+2m*lambda)
};

// Evaluates the optimal segmentation for each m = 1..m_max and selects the
// one minimizing sqrt(SSR) + 2*m*lambda; ties break toward smaller m.
// Requires lambda > 0, m_max <= floor(T/h_min) and m_max <= floor(T/2).
BreakSearchResult select_num_breaks_full(const TimeSeries& y, double lambda,
                                         int m_max, int h_min);
BreakSolution select_num_breaks(const TimeSeries& y, double lambda, int m_max,
                                int h_min);

} // namespace tsbreak
