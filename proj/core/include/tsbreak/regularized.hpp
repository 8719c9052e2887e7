#pragma once

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "tsbreak/model.hpp"
#include "tsbreak/series.hpp"

namespace tsbreak {

using DesignMatrix = Eigen::MatrixXd;

// Relative singular-value cutoff for rank decisions in the minimum-norm
// solver. The trend/seasonal design is structurally rank deficient (the
// seasonal indicator columns sum to the intercept column), so the cutoff
// must be detected reliably at double precision.
inline constexpr double kRankRtol = 1e-10;

// T x (p+2) design with row t = [t, 1, e_k], where e_k is the seasonal
// indicator for phase k = ((t-1) mod p) + 1. p = 0 yields the two trend
// columns only.
DesignMatrix build_design_matrix(int T, int p);

// Minimum-Euclidean-norm least-squares solution via SVD; singular values
// below kRankRtol times the largest are treated as zero.
Eigen::VectorXd min_norm_least_squares(const DesignMatrix& Q,
                                       const Eigen::VectorXd& y);
Eigen::VectorXd min_norm_least_squares(const DesignMatrix& Q,
                                       const TimeSeries& y);

// ||y - Q delta||_2 (not squared) plus lambda times the number of model
// parameters, counted as the column count of Q.
double penalized_objective(const TimeSeries& y, const DesignMatrix& Q,
                           const Eigen::VectorXd& delta, double lambda);

struct PeriodSearchResult {
    int p_star = 0;                    // 0 = no seasonal component
    Eigen::VectorXd delta;             // (a, b, s_1..s_p_star)
    std::vector<std::pair<int, double>> objective_curve; // (p, J) for all candidates
    double lambda = 0.0;
};

// Two-step period selection: for each p in 0..p_max solve the unpenalized
// least squares, then return the p minimizing the penalized objective.
// Ties break toward smaller p. The full objective curve is recorded.
PeriodSearchResult search_period(const TimeSeries& y, double lambda, int p_max);

// Expands a search result into a full decomposition model (one trend
// segment and, for p_star >= 1, one seasonal block anchored at t = 1).
DecompositionModel to_model(const TimeSeries& y, const PeriodSearchResult& result);

} // namespace tsbreak
