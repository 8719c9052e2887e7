#include "tsbreak/joint.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace tsbreak {

namespace {

struct SweepState {
    int p = 0;
    std::vector<double> seasonal_values; // per-phase, size p
    BreakSolution breaks;
    std::vector<double> trend_fit; // length T
    double objective = 0.0;
};

std::vector<double> seasonal_curve(int T, int p,
                                   const std::vector<double>& phase_values) {
    std::vector<double> s(static_cast<std::size_t>(T), 0.0);
    if (p >= 1) {
        for (int t = 1; t <= T; ++t) {
            s[static_cast<std::size_t>(t - 1)] =
                phase_values[static_cast<std::size_t>((t - 1) % p)];
        }
    }
    return s;
}

JointModel finalize(const TimeSeries& y, const JointConfig& config,
                    const SweepState& state, int iterations, bool converged,
                    std::vector<JointIteration> history) {
    const int T = y.size();
    std::vector<TrendSegment> trend = state.breaks.segments;
    std::vector<SeasonalBlock> seasonal;
    if (state.p >= 1) {
        seasonal.push_back({1, T, state.p, state.seasonal_values});
    }
    JointModel out{assemble_model(y, std::move(trend), std::move(seasonal),
                                  config.lambda),
                   iterations, converged, state.objective, std::move(history)};
    out.model.objective = state.objective;
    return out;
}

} // namespace

DesignMatrix build_joint_design(const Partition& trend_partition,
                                const std::vector<SeasonalSpan>& seasonal_spans) {
    const int T = trend_partition.series_length();
    const int m = trend_partition.num_segments();

    int seasonal_cols = 0;
    int expected_start = 1;
    for (const auto& span : seasonal_spans) {
        if (span.start != expected_start || span.end < span.start || span.d < 0 ||
            span.d > span.end - span.start + 1) {
            throw std::invalid_argument("build_joint_design: invalid seasonal span");
        }
        expected_start = span.end + 1;
        seasonal_cols += span.d;
    }
    if (!seasonal_spans.empty() && expected_start != T + 1) {
        throw std::invalid_argument(
            "build_joint_design: seasonal spans do not tile 1..T of the partition");
    }

    DesignMatrix Q = DesignMatrix::Zero(T, 2 * m + seasonal_cols);
    for (int k = 1; k <= m; ++k) {
        const auto [start, end] = trend_partition.segment(k);
        for (int t = start; t <= end; ++t) {
            Q(t - 1, 2 * (k - 1)) = 1.0;
            Q(t - 1, 2 * (k - 1) + 1) = static_cast<double>(t);
        }
    }
    int col = 2 * m;
    for (const auto& span : seasonal_spans) {
        if (span.d >= 1) {
            for (int t = span.start; t <= span.end; ++t) {
                Q(t - 1, col + (t - span.start) % span.d) = 1.0;
            }
        }
        col += span.d;
    }
    return Q;
}

double joint_objective(const TimeSeries& y, const DesignMatrix& Q,
                       const Eigen::VectorXd& delta, double lambda) {
    return penalized_objective(y, Q, delta, lambda);
}

JointModel iterative_detect(const TimeSeries& y, const JointConfig& config) {
    if (y.has_missing()) {
        throw std::invalid_argument("iterative_detect: series has missing values");
    }
    if (config.lambda <= 0.0 || config.trend_tol <= 0.0 || config.max_iters < 1 ||
        config.h_min < 2) {
        throw std::invalid_argument("iterative_detect: invalid configuration");
    }
    const int T = y.size();
    const int p_max = config.p_max < 0 ? T / 2 : config.p_max;
    const int m_max = std::min({config.m_max, T / config.h_min, T / 2});
    if (m_max < 1) {
        throw std::invalid_argument("iterative_detect: series too short for h_min");
    }
    if (config.fixed_period &&
        (*config.fixed_period < 0 || *config.fixed_period > T)) {
        throw std::invalid_argument("iterative_detect: fixed_period outside [0, T]");
    }

    std::vector<double> trend(static_cast<std::size_t>(T), 0.0); // Step 0
    std::vector<JointIteration> history;
    std::optional<SweepState> prev;

    for (int iter = 1; iter <= config.max_iters; ++iter) {
        // Step 1: seasonal fit on Y - trend (single block anchored at t=1).
        std::vector<double> detrended(static_cast<std::size_t>(T));
        for (int t = 1; t <= T; ++t) {
            detrended[static_cast<std::size_t>(t - 1)] =
                y.at(t) - trend[static_cast<std::size_t>(t - 1)];
        }
        const TimeSeries detrended_series(detrended);

        int p = 0;
        std::vector<double> phase_values;
        if (config.fixed_period) {
            p = *config.fixed_period;
            const DesignMatrix Q = build_design_matrix(T, p);
            const Eigen::VectorXd delta = min_norm_least_squares(Q, detrended_series);
            phase_values.assign(delta.data() + 2, delta.data() + 2 + p);
        } else {
            const PeriodSearchResult res =
                search_period(detrended_series, config.lambda, p_max);
            p = res.p_star;
            phase_values.assign(res.delta.data() + 2, res.delta.data() + 2 + p);
        }
        const std::vector<double> seasonal = seasonal_curve(T, p, phase_values);

        // Step 2: segmented trend fit on Y - seasonal.
        std::vector<double> adjusted(static_cast<std::size_t>(T));
        for (int t = 1; t <= T; ++t) {
            adjusted[static_cast<std::size_t>(t - 1)] =
                y.at(t) - seasonal[static_cast<std::size_t>(t - 1)];
        }
        BreakSolution breaks = select_num_breaks(TimeSeries(adjusted), config.lambda,
                                                 m_max, config.h_min);

        std::vector<double> trend_fit(static_cast<std::size_t>(T), 0.0);
        for (const auto& seg : breaks.segments) {
            for (int t = seg.start; t <= seg.end; ++t) {
                trend_fit[static_cast<std::size_t>(t - 1)] = seg.value_at(t);
            }
        }

        double fit_ss = 0.0;
        for (int t = 1; t <= T; ++t) {
            const double r = y.at(t) - seasonal[static_cast<std::size_t>(t - 1)] -
                             trend_fit[static_cast<std::size_t>(t - 1)];
            fit_ss += r * r;
        }
        const double objective =
            std::sqrt(fit_ss) + config.lambda * (2.0 * breaks.m + p);

        SweepState cur{p, std::move(phase_values), std::move(breaks),
                       std::move(trend_fit), objective};
        history.push_back({cur.breaks.breaks.break_points(), p, objective});

        // Alternating sweeps over a combinatorial space can cycle; keep the
        // last improving iterate if the objective ever goes up.
        if (prev && cur.objective > prev->objective + 1e-9) {
            history.pop_back();
            return finalize(y, config, *prev, iter - 1, false, std::move(history));
        }

        bool converged = false;
        if (prev && cur.breaks.breaks == prev->breaks.breaks) {
            double max_change = 0.0;
            for (int t = 0; t < T; ++t) {
                max_change = std::max(
                    max_change, std::abs(cur.trend_fit[static_cast<std::size_t>(t)] -
                                         prev->trend_fit[static_cast<std::size_t>(t)]));
            }
            converged = max_change <= config.trend_tol;
        }

        if (converged) {
            return finalize(y, config, cur, iter, true, std::move(history));
        }

        trend = cur.trend_fit;
        prev = std::move(cur);
    }

    return finalize(y, config, *prev, config.max_iters, false, std::move(history));
}

} // namespace tsbreak
