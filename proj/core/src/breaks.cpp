#include "tsbreak/breaks.hpp"

#include <cassert>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "accum.hpp"
#include "tsbreak/errors.hpp"

namespace tsbreak {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Least-squares line through (t, y_t), t = i..j, from the running sums
//   n, St = sum t, Stt = sum t^2, Sy = sum y, Sty = sum t*y, Syy = sum y^2.
// SSR = Syy - a*Sty - b*Sy follows from the normal equations; the
// subtraction can go slightly negative from rounding, so clamp at 0.
SegmentFit fit_from_sums(double n, double St, double Stt, double Sy, double Sty,
                         double Syy) {
    const double denom = n * Stt - St * St; // n * sum (t - tbar)^2, > 0 for n >= 2
    const double a = (n * Sty - St * Sy) / denom;
    const double b = (Sy - a * St) / n;
    double ssr = Syy - a * Sty - b * Sy;
    if (ssr < 0.0) ssr = 0.0;
    return {ssr, a, b};
}

struct DpTables {
    int T = 0;
    int m_max = 0;
    // cost[k][tau]: minimal total SSR for the first tau samples split into k
    // segments; backptr[k][tau]: last break of an optimal split (smallest on
    // ties).
    std::vector<std::vector<double>> cost;
    std::vector<std::vector<int>> backptr;
};

DpTables run_dp(const SsrTable& table, int m_max) {
    const int T = table.series_length();
    const int h = table.h_min();

    DpTables dp;
    dp.T = T;
    dp.m_max = m_max;
    dp.cost.assign(static_cast<std::size_t>(m_max) + 1,
                   std::vector<double>(static_cast<std::size_t>(T) + 1, kInf));
    dp.backptr.assign(static_cast<std::size_t>(m_max) + 1,
                      std::vector<int>(static_cast<std::size_t>(T) + 1, -1));

    for (int tau = h; tau <= T; ++tau) {
        dp.cost[1][static_cast<std::size_t>(tau)] = table.at(1, tau);
    }
    for (int k = 2; k <= m_max; ++k) {
        auto& cost_k = dp.cost[static_cast<std::size_t>(k)];
        auto& back_k = dp.backptr[static_cast<std::size_t>(k)];
        const auto& cost_prev = dp.cost[static_cast<std::size_t>(k - 1)];
        for (int tau = k * h; tau <= T; ++tau) {
            double best = kInf;
            int best_j = -1;
            // j = end of the prefix; must leave >= h samples for the last
            // segment and cover >= (k-1)*h for the first k-1.
            for (int j = (k - 1) * h; j <= tau - h; ++j) {
                const double candidate =
                    cost_prev[static_cast<std::size_t>(j)] + table.at(j + 1, tau);
                if (candidate < best) {
                    best = candidate;
                    best_j = j;
                }
            }
            cost_k[static_cast<std::size_t>(tau)] = best;
            back_k[static_cast<std::size_t>(tau)] = best_j;
        }
    }
    return dp;
}

BreakSolution extract_solution(const SsrTable& table, const DpTables& dp, int m,
                               double lambda) {
    std::vector<int> boundaries(static_cast<std::size_t>(m) + 1);
    boundaries[static_cast<std::size_t>(m)] = dp.T;
    for (int k = m; k >= 2; --k) {
        const int tau = boundaries[static_cast<std::size_t>(k)];
        boundaries[static_cast<std::size_t>(k - 1)] =
            dp.backptr[static_cast<std::size_t>(k)][static_cast<std::size_t>(tau)];
    }
    boundaries[0] = 0;

    BreakSolution solution{.m = m,
                           .breaks = Partition(boundaries, table.h_min()),
                           .ssr_total = dp.cost[static_cast<std::size_t>(m)]
                                               [static_cast<std::size_t>(dp.T)],
                           .segments = {},
                           .objective = 0.0,
                           .lambda = lambda};
    const TimeSeries y(table.series_values());
    solution.segments.reserve(static_cast<std::size_t>(m));
    for (int k = 1; k <= m; ++k) {
        const auto [start, end] = solution.breaks.segment(k);
        const SegmentFit fit = segment_ssr(y, start, end);
        solution.segments.push_back({start, end, fit.a, fit.b});
    }
    solution.objective = std::sqrt(solution.ssr_total) + 2.0 * m * lambda;
    return solution;
}

} // namespace

SegmentFit segment_ssr(const TimeSeries& y, int i, int j) {
    if (i < 1 || j > y.size() || i > j) {
        throw std::out_of_range("segment_ssr: range [" + std::to_string(i) + ", " +
                                std::to_string(j) + "] invalid for T=" +
                                std::to_string(y.size()));
    }
    const int n = j - i + 1;
    if (n < 2) {
        throw InsufficientDataError("segment_ssr: need at least 2 samples");
    }
    detail::KahanSum Sy, Sty, Syy;
    double St = 0.0, Stt = 0.0;
    for (int t = i; t <= j; ++t) {
        const double v = y.at(t);
        St += t;
        Stt += static_cast<double>(t) * t;
        Sy.add(v);
        Sty.add(t * v);
        Syy.add(v * v);
    }
    return fit_from_sums(n, St, Stt, Sy.value(), Sty.value(), Syy.value());
}

SsrTable::SsrTable(const TimeSeries& y, int h_min)
    : T_(y.size()), h_min_(h_min), values_(y.values()) {
    if (h_min < 2) {
        throw std::invalid_argument("SsrTable: h_min must be >= 2");
    }
    if (y.has_missing()) {
        throw std::invalid_argument("SsrTable: series has missing values");
    }
    ssr_.assign(static_cast<std::size_t>(T_) * static_cast<std::size_t>(T_),
                std::numeric_limits<double>::quiet_NaN());

    for (int i = 1; i <= T_ - h_min_ + 1; ++i) {
        detail::KahanSum Sy, Sty, Syy;
        double St = 0.0, Stt = 0.0;
        int n = 0;
        double* row = ssr_.data() + static_cast<std::size_t>(i - 1) * T_;
        for (int j = i; j <= T_; ++j) {
            const double v = values_[static_cast<std::size_t>(j - 1)];
            St += j;
            Stt += static_cast<double>(j) * j;
            Sy.add(v);
            Sty.add(j * v);
            Syy.add(v * v);
            ++n;
            if (n >= h_min_) {
                row[j - 1] =
                    fit_from_sums(n, St, Stt, Sy.value(), Sty.value(), Syy.value()).ssr;
            }
        }
    }
}

double SsrTable::at(int i, int j) const {
    assert(i >= 1 && j <= T_ && j - i + 1 >= h_min_);
    return ssr_[static_cast<std::size_t>(i - 1) * T_ + static_cast<std::size_t>(j - 1)];
}

BreakSolution dp_optimal_breaks(const SsrTable& table, int m) {
    const int T = table.series_length();
    if (m < 1 || static_cast<long long>(m) * table.h_min() > T) {
        throw InfeasibleError("dp_optimal_breaks: m=" + std::to_string(m) +
                              " segments of length >= " +
                              std::to_string(table.h_min()) + " do not fit in T=" +
                              std::to_string(T));
    }
    const DpTables dp = run_dp(table, m);
    return extract_solution(table, dp, m, /*lambda=*/0.0);
}

BreakSearchResult select_num_breaks_full(const TimeSeries& y, double lambda,
                                         int m_max, int h_min) {
    if (lambda <= 0.0) {
        throw std::invalid_argument("select_num_breaks: lambda must be > 0");
    }
    const int T = y.size();
    if (m_max < 1 || m_max * h_min > T || m_max > T / 2) {
        throw std::invalid_argument("select_num_breaks: m_max=" + std::to_string(m_max) +
                                    " violates m_max <= floor(T/h_min) and <= floor(T/2)");
    }
    const SsrTable table(y, h_min);
    const DpTables dp = run_dp(table, m_max);

    std::vector<std::pair<int, double>> curve;
    curve.reserve(static_cast<std::size_t>(m_max));
    int best_m = 1;
    double best = kInf;
    for (int m = 1; m <= m_max; ++m) {
        const double total =
            dp.cost[static_cast<std::size_t>(m)][static_cast<std::size_t>(T)];
        const double objective = std::sqrt(total) + 2.0 * m * lambda;
        curve.emplace_back(m, objective);
        if (objective < best) {
            best = objective;
            best_m = m;
        }
    }
    return {extract_solution(table, dp, best_m, lambda), std::move(curve)};
}

BreakSolution select_num_breaks(const TimeSeries& y, double lambda, int m_max,
                                int h_min) {
    return select_num_breaks_full(y, lambda, m_max, h_min).best;
}

} // namespace tsbreak
