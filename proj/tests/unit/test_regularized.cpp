#include <doctest.h>

#include <cmath>
#include <cstring>
#include <vector>

#include "helpers.hpp"
#include "tsbreak/regularized.hpp"
#include "tsbreak/synth.hpp"

using namespace tsbreak;

TEST_CASE("design matrix layouts") {
    SUBCASE("T=4, p=2") {
        const DesignMatrix Q = build_design_matrix(4, 2);
        const double expected[4][4] = {{1, 1, 1, 0},
                                       {2, 1, 0, 1},
                                       {3, 1, 1, 0},
                                       {4, 1, 0, 1}};
        REQUIRE(Q.rows() == 4);
        REQUIRE(Q.cols() == 4);
        for (int r = 0; r < 4; ++r) {
            for (int c = 0; c < 4; ++c) {
                CHECK(Q(r, c) == expected[r][c]);
            }
        }
    }
    SUBCASE("T=3, p=0 is trend-only") {
        const DesignMatrix Q = build_design_matrix(3, 0);
        REQUIRE(Q.cols() == 2);
        for (int t = 1; t <= 3; ++t) {
            CHECK(Q(t - 1, 0) == t);
            CHECK(Q(t - 1, 1) == 1.0);
        }
    }
    SUBCASE("T=5, p=5 has an identity seasonal block") {
        const DesignMatrix Q = build_design_matrix(5, 5);
        REQUIRE(Q.cols() == 7);
        CHECK(Q.rightCols(5).isIdentity(0.0));
    }
    SUBCASE("p > T is rejected") {
        CHECK_THROWS_AS(build_design_matrix(3, 4), std::out_of_range);
    }
}

TEST_CASE("minimum-norm solve of an identity system") {
    DesignMatrix Q = DesignMatrix::Identity(2, 2);
    Eigen::VectorXd y(2);
    y << 3.0, 7.0;
    const Eigen::VectorXd delta = min_norm_least_squares(Q, y);
    CHECK(delta(0) == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(delta(1) == doctest::Approx(7.0).epsilon(1e-14));
}

TEST_CASE("minimum-norm solve reproduces an exactly representable series") {
    const DesignMatrix Q = build_design_matrix(4, 2);
    Eigen::VectorXd truth(4);
    truth << 0.5, 1.0, 0.2, -0.2; // (a, b, s1, s2)
    const Eigen::VectorXd y = Q * truth;
    const Eigen::VectorXd delta = min_norm_least_squares(Q, y);
    CHECK((y - Q * delta).norm() <= 1e-10);
}

TEST_CASE("fitted values are invariant under the intercept/seasonal gauge") {
    const int T = 30, p = 6;
    const DesignMatrix Q = build_design_matrix(T, p);
    const TimeSeries y = testutil::random_series(T, 23);
    Eigen::VectorXd delta = min_norm_least_squares(Q, y);
    for (double c : {-2.0, 0.7, 13.5}) {
        Eigen::VectorXd shifted = delta;
        shifted(1) += c;
        for (int k = 0; k < p; ++k) shifted(2 + k) -= c;
        CHECK((Q * shifted - Q * delta).norm() <= 1e-12 * (1.0 + std::abs(c) * Q.norm()));
    }
}

TEST_CASE("residuals are orthogonal to the column space") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        const int T = 20 + static_cast<int>(seed) * 5;
        const int p = static_cast<int>(seed % 5);
        const DesignMatrix Q = build_design_matrix(T, p);
        Eigen::VectorXd y(T);
        const TimeSeries ys = testutil::random_series(T, 100 + seed);
        for (int t = 1; t <= T; ++t) y(t - 1) = ys.at(t);
        const Eigen::VectorXd delta = min_norm_least_squares(Q, y);
        CHECK((Q.transpose() * (y - Q * delta)).lpNorm<Eigen::Infinity>() <= 1e-8);
    }
}

TEST_CASE("penalized objective is residual norm plus parameter count") {
    const int T = 40, p = 10;
    const DesignMatrix Q = build_design_matrix(T, p);
    Eigen::VectorXd truth = Eigen::VectorXd::Zero(p + 2);
    truth(0) = 0.25;
    truth(1) = -1.0;
    for (int k = 0; k < p; ++k) truth(2 + k) = std::sin(0.7 * k);
    const Eigen::VectorXd yv = Q * truth;
    const TimeSeries y(std::vector<double>(yv.data(), yv.data() + T));
    const Eigen::VectorXd delta = min_norm_least_squares(Q, y);
    CHECK(penalized_objective(y, Q, delta, 0.1) ==
          doctest::Approx(1.2).epsilon(1e-9));
}

TEST_CASE("p=T with a free constant split yields a zero-residual witness") {
    const TimeSeries y({0.5, 2.0, -1.25, 3.0, 0.0});
    const int T = y.size();
    const DesignMatrix Q = build_design_matrix(T, T);
    for (double c : {0.0, 1.0, -4.5}) {
        Eigen::VectorXd delta = Eigen::VectorXd::Zero(T + 2);
        delta(1) = c;
        for (int t = 1; t <= T; ++t) delta(2 + (t - 1) % T) = y.at(t) - c;
        CHECK(penalized_objective(y, Q, delta, 0.0) <= 1e-12);
    }
}

TEST_CASE("objective curve attains its minimum at the true period") {
    const TimeSeries y = gen_series(testutil::sine_trend_spec(100, 101));
    const auto result = search_period(y, 0.1, 50);
    CHECK(result.p_star == 10);
    int argmin = -1;
    double best = 1e300;
    for (const auto& [p, J] : result.objective_curve) {
        if (J < best) {
            best = J;
            argmin = p;
        }
    }
    CHECK(argmin == 10);
}

TEST_CASE("period selection is stable across lambda and T") {
    for (double lambda : {0.02, 0.1, 0.4}) {
        const TimeSeries y = gen_series(testutil::sine_trend_spec(100, 7));
        CHECK(search_period(y, lambda, 50).p_star == 10);
    }
    for (int T : {80, 200}) {
        const TimeSeries y = gen_series(testutil::sine_trend_spec(T, 7));
        CHECK(search_period(y, 0.1, T / 2).p_star == 10);
    }
}

TEST_CASE("a pure line selects no seasonal component") {
    std::vector<double> values(60);
    for (int t = 1; t <= 60; ++t) values[static_cast<std::size_t>(t - 1)] = 2.0 * t + 1.0;
    const auto result = search_period(TimeSeries(values), 0.1, 30);
    CHECK(result.p_star == 0);
}

TEST_CASE("search is deterministic and p_star is the literal curve argmin") {
    const TimeSeries y = gen_series(testutil::sine_trend_spec(100, 55));
    const auto r1 = search_period(y, 0.1, 50);
    const auto r2 = search_period(y, 0.1, 50);
    REQUIRE(r1.objective_curve.size() == r2.objective_curve.size());
    for (std::size_t i = 0; i < r1.objective_curve.size(); ++i) {
        CHECK(std::memcmp(&r1.objective_curve[i].second,
                          &r2.objective_curve[i].second, sizeof(double)) == 0);
    }
    // Smaller p wins ties: a constant series fits exactly at every p.
    const auto flat = search_period(TimeSeries(std::vector<double>(24, 3.0)), 0.1, 12);
    CHECK(flat.p_star == 0);
}

TEST_CASE("seasonal columns never hurt the fit") {
    const TimeSeries y = testutil::random_series(36, 8);
    const auto result = search_period(y, 0.1, 18);
    const auto residual_at = [&](std::size_t idx) {
        const auto& [p, J] = result.objective_curve[idx];
        return J - 0.1 * (p + 2);
    };
    const double base = residual_at(0);
    for (std::size_t i = 1; i < result.objective_curve.size(); ++i) {
        CHECK(residual_at(i) <= base + 1e-10);
    }
}

TEST_CASE("to_model reconstructs the series") {
    const TimeSeries y = gen_series(testutil::sine_trend_spec(100, 3));
    const auto result = search_period(y, 0.1, 50);
    const auto model = to_model(y, result);
    CHECK(model.param_count == result.p_star + 2);
    for (int t = 1; t <= y.size(); ++t) {
        CHECK(std::abs(y.at(t) - evaluate_model(model, t) -
                       model.residuals[static_cast<std::size_t>(t - 1)]) <= 1e-10);
    }
}
