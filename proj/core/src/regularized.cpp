#include "tsbreak/regularized.hpp"

#include <limits>
#include <stdexcept>
#include <string>

namespace tsbreak {

namespace {

Eigen::VectorXd to_vector(const TimeSeries& y) {
    Eigen::VectorXd v(y.size());
    for (int t = 1; t <= y.size(); ++t) {
        v(t - 1) = y.at(t);
    }
    return v;
}

} // namespace

DesignMatrix build_design_matrix(int T, int p) {
    if (T < 1) {
        throw std::invalid_argument("build_design_matrix: T must be >= 1");
    }
    if (p < 0 || p > T) {
        throw std::out_of_range("build_design_matrix: p=" + std::to_string(p) +
                                " outside [0, T=" + std::to_string(T) + "]");
    }
    DesignMatrix Q = DesignMatrix::Zero(T, p + 2);
    for (int t = 1; t <= T; ++t) {
        Q(t - 1, 0) = static_cast<double>(t);
        Q(t - 1, 1) = 1.0;
        if (p >= 1) {
            Q(t - 1, 2 + (t - 1) % p) = 1.0;
        }
    }
    return Q;
}

Eigen::VectorXd min_norm_least_squares(const DesignMatrix& Q,
                                       const Eigen::VectorXd& y) {
    if (Q.rows() != y.size()) {
        throw std::invalid_argument("min_norm_least_squares: dimension mismatch");
    }
    // JacobiSVD rather than BDCSVD: Eigen 3.4.0's divide-and-conquer kernel
    // mis-deflates on these indicator designs once cols >= 16, returning a
    // wrong subspace (residuals above the trend-only fit).
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(Q,
                                          Eigen::ComputeThinU | Eigen::ComputeThinV);
    svd.setThreshold(kRankRtol);
    return svd.solve(y);
}

Eigen::VectorXd min_norm_least_squares(const DesignMatrix& Q, const TimeSeries& y) {
    if (y.has_missing()) {
        throw std::invalid_argument("min_norm_least_squares: series has missing values");
    }
    return min_norm_least_squares(Q, to_vector(y));
}

double penalized_objective(const TimeSeries& y, const DesignMatrix& Q,
                           const Eigen::VectorXd& delta, double lambda) {
    if (lambda < 0.0) {
        throw std::invalid_argument("penalized_objective: lambda must be >= 0");
    }
    if (Q.rows() != y.size() || Q.cols() != delta.size()) {
        throw std::invalid_argument("penalized_objective: dimension mismatch");
    }
    const double fit = (to_vector(y) - Q * delta).norm();
    return fit + lambda * static_cast<double>(Q.cols());
}

PeriodSearchResult search_period(const TimeSeries& y, double lambda, int p_max) {
    if (lambda <= 0.0) {
        throw std::invalid_argument("search_period: lambda must be > 0");
    }
    const int T = y.size();
    if (p_max < 0 || p_max > T) {
        throw std::out_of_range("search_period: p_max outside [0, T]");
    }
    if (y.has_missing()) {
        throw std::invalid_argument("search_period: series has missing values");
    }
    const Eigen::VectorXd yv = to_vector(y);

    PeriodSearchResult result;
    result.lambda = lambda;
    result.objective_curve.reserve(static_cast<std::size_t>(p_max) + 1);

    double best = std::numeric_limits<double>::infinity();
    for (int p = 0; p <= p_max; ++p) {
        const DesignMatrix Q = build_design_matrix(T, p);
        const Eigen::VectorXd delta = min_norm_least_squares(Q, yv);
        const double objective =
            (yv - Q * delta).norm() + lambda * static_cast<double>(Q.cols());
        result.objective_curve.emplace_back(p, objective);
        if (objective < best) {
            best = objective;
            result.p_star = p;
            result.delta = delta;
        }
    }
    return result;
}

DecompositionModel to_model(const TimeSeries& y, const PeriodSearchResult& result) {
    const int T = y.size();
    const int p = result.p_star;
    std::vector<TrendSegment> trend{{1, T, result.delta(0), result.delta(1)}};
    std::vector<SeasonalBlock> seasonal;
    if (p >= 1) {
        std::vector<double> s(result.delta.data() + 2, result.delta.data() + 2 + p);
        seasonal.push_back({1, T, p, std::move(s)});
    }
    return assemble_model(y, std::move(trend), std::move(seasonal), result.lambda);
}

} // namespace tsbreak
