#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "tsbreak/breaks.hpp"
#include "tsbreak/model.hpp"
#include "tsbreak/regularized.hpp"
#include "tsbreak/series.hpp"

namespace tsbreak {

// One seasonal regime for design-matrix construction. d = 0 means the span
// contributes no seasonal columns (season-free).
struct SeasonalSpan {
    int start = 0; // 1-based inclusive
    int end = 0;
    int d = 0;
};

// Horizontal concatenation of the block-diagonal trend design (per segment:
// columns (1, t), so the per-segment coefficient pair is (intercept, slope))
// and the block-diagonal seasonal design (per span: identity-cycling phase
// indicators). Column count = 2m + sum of span periods. The spans must tile
// 1..T of the partition; an empty span list means no seasonal columns.
DesignMatrix build_joint_design(const Partition& trend_partition,
                                const std::vector<SeasonalSpan>& seasonal_spans);

// ||y - Q delta||_2 plus lambda times the column count of Q (= 2m + sum d_i).
double joint_objective(const TimeSeries& y, const DesignMatrix& Q,
                       const Eigen::VectorXd& delta, double lambda);

struct JointConfig {
    double lambda = 0.1;              // > 0
    int max_iters = 50;
    double trend_tol = 1e-6;          // max |trend change| between iterations
    int p_max = -1;                   // candidate period bound; -1 = floor(T/2)
    int m_max = 10;                   // clamped to floor(T/h_min) and floor(T/2)
    int h_min = 2;
    std::optional<int> fixed_period;  // skip the period search when known
};

struct JointIteration {
    std::vector<int> break_points; // interior breaks t*_1..t*_{m-1}
    int p = 0;
    double objective = 0.0;
};

struct JointModel {
    DecompositionModel model;
    int iterations = 0;
    bool converged = false;
    double objective = 0.0;
    std::vector<JointIteration> history;
};

// Alternating detection of trend breaks in a seasonal series:
//   Step 0: trend = 0.
//   Step 1: period search / seasonal fit on Y - trend.
//   Step 2: segmented trend fit on Y - seasonal; update trend.
// Repeats until the break set stabilizes and the fitted trend moves by at
// most trend_tol, or max_iters is reached (returned with converged=false).
// If the objective ever increases between sweeps the previous iterate is
// returned. Requires y without missing values.
JointModel iterative_detect(const TimeSeries& y, const JointConfig& config);

} // namespace tsbreak
