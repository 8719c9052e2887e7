#include "tsbreak/synth.hpp"

#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

#include "tsbreak/errors.hpp"
#include "tsbreak/regularized.hpp"

namespace tsbreak {

namespace {

// Number of partitions of T into m ordered segments, each of length >= h:
// C(T - m*h + m - 1, m - 1). Returns > limit early to avoid overflow.
double count_partitions(int T, int m, int h, double limit) {
    const int n = T - m * h + m - 1;
    const int k = m - 1;
    double count = 1.0;
    for (int i = 1; i <= k; ++i) {
        count *= static_cast<double>(n - k + i) / static_cast<double>(i);
        if (count > limit) return count;
    }
    return count;
}

// True when `lhs` precedes `rhs` in the dynamic program's tie order: the
// later break points are compared first, smaller wins.
bool reversed_less(const std::vector<int>& lhs, const std::vector<int>& rhs) {
    for (std::size_t k = lhs.size(); k-- > 0;) {
        if (lhs[k] != rhs[k]) return lhs[k] < rhs[k];
    }
    return false;
}

struct Enumerator {
    const TimeSeries& y;
    int m;
    int h;
    std::vector<int> breaks; // interior breaks t_1..t_{m-1}
    std::vector<int> best_breaks;
    double best_ssr = std::numeric_limits<double>::infinity();

    void visit() {
        double total = 0.0;
        int start = 1;
        for (int k = 0; k < m; ++k) {
            const int end = k + 1 < m ? breaks[static_cast<std::size_t>(k)]
                                      : y.size();
            total += segment_ssr(y, start, end).ssr;
            start = end + 1;
        }
        if (total < best_ssr ||
            (total == best_ssr && reversed_less(breaks, best_breaks))) {
            best_ssr = total;
            best_breaks = breaks;
        }
    }

    void recurse(int k) {
        if (k == m - 1) {
            visit();
            return;
        }
        const int lo = k == 0 ? h : breaks[static_cast<std::size_t>(k - 1)] + h;
        const int hi = y.size() - (m - 1 - k) * h;
        for (int t = lo; t <= hi; ++t) {
            breaks[static_cast<std::size_t>(k)] = t;
            recurse(k + 1);
        }
    }
};

} // namespace

double GaussianSampler::next() {
    // 53-bit uniforms; u1 in (0, 1] so the log is finite.
    const double u1 =
        (static_cast<double>(rng_() >> 11) + 1.0) * 0x1.0p-53;
    const double u2 = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
}

TimeSeries gen_series(const GeneratorSpec& spec) {
    if (spec.T < 1) {
        throw std::invalid_argument("gen_series: T must be >= 1");
    }
    if (spec.sigma < 0.0) {
        throw std::invalid_argument("gen_series: sigma must be >= 0");
    }
    int expected_start = 1;
    for (const auto& piece : spec.trend_pieces) {
        if (piece.start != expected_start || piece.end < piece.start) {
            throw std::invalid_argument(
                "gen_series: trend pieces must tile 1..T without gaps or overlaps");
        }
        expected_start = piece.end + 1;
    }
    if (expected_start != spec.T + 1) {
        throw std::invalid_argument("gen_series: trend pieces do not cover 1..T");
    }
    if (spec.seasonal) {
        const auto& s = *spec.seasonal;
        if (s.d < 1) {
            throw std::invalid_argument("gen_series: seasonal period must be >= 1");
        }
        if (!s.values.empty() && s.values.size() != static_cast<std::size_t>(s.d)) {
            throw std::invalid_argument(
                "gen_series: explicit seasonal values must have length d");
        }
    }

    std::vector<double> values(static_cast<std::size_t>(spec.T), 0.0);
    for (const auto& piece : spec.trend_pieces) {
        for (int t = piece.start; t <= piece.end; ++t) {
            values[static_cast<std::size_t>(t - 1)] = piece.a * t + piece.b;
        }
    }
    if (spec.seasonal) {
        const auto& s = *spec.seasonal;
        for (int t = 1; t <= spec.T; ++t) {
            double v = 0.0;
            if (!s.values.empty()) {
                v = s.values[static_cast<std::size_t>((t - 1) % s.d)];
            } else {
                v = s.amplitude *
                    std::sin(2.0 * std::numbers::pi * t / s.d + s.phase);
            }
            values[static_cast<std::size_t>(t - 1)] += v;
        }
    }
    if (spec.sigma > 0.0) {
        GaussianSampler noise(spec.seed);
        for (int t = 1; t <= spec.T; ++t) {
            values[static_cast<std::size_t>(t - 1)] += spec.sigma * noise.next();
        }
    }
    return TimeSeries(std::move(values), spec.label);
}

BreakSolution brute_force_breaks(const TimeSeries& y, int m, int h_min,
                                 std::int64_t max_partitions) {
    const int T = y.size();
    if (h_min < 2) {
        throw std::invalid_argument("brute_force_breaks: h_min must be >= 2");
    }
    if (m < 1 || static_cast<long long>(m) * h_min > T) {
        throw InfeasibleError("brute_force_breaks: m segments do not fit in T");
    }
    const double count =
        count_partitions(T, m, h_min, static_cast<double>(max_partitions));
    if (count > static_cast<double>(max_partitions)) {
        throw InfeasibleError("brute_force_breaks: " + std::to_string(count) +
                              " partitions exceed the guard of " +
                              std::to_string(max_partitions));
    }

    Enumerator e{y, m, h_min,
                 std::vector<int>(static_cast<std::size_t>(m - 1), 0),
                 std::vector<int>(static_cast<std::size_t>(m - 1), T + 1),
                 std::numeric_limits<double>::infinity()};
    e.recurse(0);

    std::vector<int> boundaries;
    boundaries.reserve(static_cast<std::size_t>(m) + 1);
    boundaries.push_back(0);
    boundaries.insert(boundaries.end(), e.best_breaks.begin(), e.best_breaks.end());
    boundaries.push_back(T);

    BreakSolution solution{.m = m,
                           .breaks = Partition(boundaries, h_min),
                           .ssr_total = e.best_ssr,
                           .segments = {},
                           .objective = std::sqrt(e.best_ssr),
                           .lambda = 0.0};
    for (int k = 1; k <= m; ++k) {
        const auto [start, end] = solution.breaks.segment(k);
        const SegmentFit fit = segment_ssr(y, start, end);
        solution.segments.push_back({start, end, fit.a, fit.b});
    }
    return solution;
}

JointModel brute_force_joint(const TimeSeries& y, double lambda,
                             const JointOracleBounds& bounds) {
    const int T = y.size();
    if (T > 40 || bounds.m_max > 2 || bounds.p_max > 12) {
        throw InfeasibleError("brute_force_joint: guard exceeded (T <= 40, m <= 2, "
                              "p <= 12 required)");
    }
    if (lambda <= 0.0) {
        throw std::invalid_argument("brute_force_joint: lambda must be > 0");
    }
    if (bounds.m_max < 1 || bounds.h_min < 2 || bounds.h_min > T) {
        throw std::invalid_argument("brute_force_joint: invalid bounds");
    }
    const int p_max = std::min(bounds.p_max, T);
    const Eigen::VectorXd yv = [&] {
        Eigen::VectorXd v(T);
        for (int t = 1; t <= T; ++t) v(t - 1) = y.at(t);
        return v;
    }();

    struct Best {
        double objective = std::numeric_limits<double>::infinity();
        int m = 0;
        int p = 0;
        std::vector<int> boundaries;
        Eigen::VectorXd delta;
    } best;

    // Scan order (m asc, breaks lexicographic, p asc) with strict-improvement
    // updates fixes the tie-break deterministically.
    std::vector<std::vector<int>> partitions;
    for (int m = 1; m <= std::min(bounds.m_max, T / bounds.h_min); ++m) {
        partitions.clear();
        if (m == 1) {
            partitions.push_back({0, T});
        } else {
            for (int t1 = bounds.h_min; t1 <= T - bounds.h_min; ++t1) {
                partitions.push_back({0, t1, T});
            }
        }
        for (const auto& boundaries : partitions) {
            const Partition partition(boundaries, bounds.h_min);
            for (int p = 0; p <= p_max; ++p) {
                const DesignMatrix Q =
                    build_joint_design(partition, {{1, T, p}});
                const Eigen::VectorXd delta = min_norm_least_squares(Q, yv);
                const double objective = (yv - Q * delta).norm() +
                                         lambda * static_cast<double>(Q.cols());
                if (objective < best.objective) {
                    best = {objective, m, p, boundaries, delta};
                }
            }
        }
    }

    const Partition partition(best.boundaries, bounds.h_min);
    std::vector<TrendSegment> trend;
    for (int k = 1; k <= best.m; ++k) {
        const auto [start, end] = partition.segment(k);
        // Joint design stores (intercept, slope) per segment.
        trend.push_back({start, end, best.delta(2 * (k - 1) + 1),
                         best.delta(2 * (k - 1))});
    }
    std::vector<SeasonalBlock> seasonal;
    if (best.p >= 1) {
        std::vector<double> s(best.delta.data() + 2 * best.m,
                              best.delta.data() + 2 * best.m + best.p);
        seasonal.push_back({1, T, best.p, std::move(s)});
    }
    JointModel out{assemble_model(y, std::move(trend), std::move(seasonal), lambda),
                   0, true, best.objective, {}};
    out.model.objective = best.objective;
    return out;
}

} // namespace tsbreak
