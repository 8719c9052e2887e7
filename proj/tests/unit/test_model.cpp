#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "helpers.hpp"
#include "tsbreak/model.hpp"
#include "tsbreak/regularized.hpp"
#include "tsbreak/synth.hpp"

using namespace tsbreak;

TEST_CASE("Partition validates boundaries") {
    CHECK_NOTHROW(Partition({0, 3, 7}, 2));
    CHECK_THROWS_AS(Partition({1, 7}, 1), std::invalid_argument);
    CHECK_THROWS_AS(Partition({0, 3, 3, 7}, 1), std::invalid_argument);
    CHECK_THROWS_AS(Partition({0, 4, 5}, 2), std::invalid_argument); // short tail
    const Partition p({0, 3, 7}, 2);
    CHECK(p.num_segments() == 2);
    CHECK(p.series_length() == 7);
    CHECK(p.segment(1) == std::pair{1, 3});
    CHECK(p.segment(2) == std::pair{4, 7});
    CHECK(p.break_points() == std::vector<int>{3});
}

TEST_CASE("evaluate_model on a constant model") {
    const TimeSeries y({5.0, 5.0, 5.0, 5.0});
    const auto model = assemble_model(y, {{1, 4, 0.0, 5.0}}, {}, 0.0);
    CHECK(evaluate_model(model, 3) == 5.0);
    CHECK_THROWS_AS(evaluate_model(model, 0), std::out_of_range);
    CHECK_THROWS_AS(evaluate_model(model, 5), std::out_of_range);
}

TEST_CASE("evaluate_model combines trend and seasonal") {
    // Slope-1 line plus a period-2 block [+1, -1]: at t=4 the phase is
    // ((4-1) mod 2)+1 = 2, so the value is 4 + (-1) = 3.
    const TimeSeries y({2.0, 1.0, 4.0, 3.0});
    const auto model = assemble_model(y, {{1, 4, 1.0, 0.0}},
                                      {{1, 4, 2, {1.0, -1.0}}}, 0.0);
    CHECK(evaluate_model(model, 4) == 3.0);
    CHECK(evaluate_model(model, 1) == 2.0);
}

TEST_CASE("evaluate_model matches scalar recomputation on a fitted model") {
    const TimeSeries y = gen_series(testutil::sine_trend_spec(100, 21));
    const auto search = search_period(y, 0.1, 50);
    const auto model = to_model(y, search);
    REQUIRE(search.p_star >= 1);
    const double a = search.delta(0);
    const double b = search.delta(1);
    const int phase = (10 - 1) % search.p_star;
    const double expected = a * 10.0 + b + search.delta(2 + phase);
    CHECK(evaluate_model(model, 10) == doctest::Approx(expected).epsilon(1e-15));
}

TEST_CASE("residual_norm basics") {
    const TimeSeries y({1.0, 2.0, 3.0});
    const auto exact = assemble_model(y, {{1, 3, 1.0, 0.0}}, {}, 0.0);
    CHECK(residual_norm(y, exact) == 0.0);

    const TimeSeries bumped({2.0, 2.0, 3.0}); // unit perturbation at t=1
    CHECK(residual_norm(bumped, exact) == doctest::Approx(1.0).epsilon(1e-15));

    const TimeSeries with_missing({1.0, 2.0, 3.0},
                                  std::vector<bool>{false, true, false});
    CHECK_THROWS_AS(residual_norm(with_missing, exact), std::invalid_argument);
}

TEST_CASE("residual_norm against a direct summation oracle") {
    const auto spec = testutil::sine_trend_spec(100, 77);
    const TimeSeries y = gen_series(spec);
    // The generating model itself.
    const auto truth = assemble_model(
        y, {{1, 100, 0.03, -0.5}},
        {{1, 100, 10,
          [] {
              std::vector<double> s(10);
              for (int k = 1; k <= 10; ++k) {
                  s[static_cast<std::size_t>(k - 1)] =
                      std::sin(2.0 * testutil::kPi * k / 10.0);
              }
              return s;
          }()}},
        0.0);
    double ss = 0.0;
    for (int t = 1; t <= 100; ++t) {
        const double fit = 0.03 * t - 0.5 + std::sin(2.0 * testutil::kPi * t / 10.0);
        ss += (y.at(t) - fit) * (y.at(t) - fit);
    }
    CHECK(residual_norm(y, truth) == doctest::Approx(std::sqrt(ss)).epsilon(1e-12));
    // sigma * sqrt(T) in expectation at sigma=0.1, T=100: loose sanity band.
    CHECK(residual_norm(y, truth) > 0.5);
    CHECK(residual_norm(y, truth) < 2.0);
}

TEST_CASE("assemble_model validates tiling and counts parameters") {
    const TimeSeries y({1.0, 2.0, 3.0, 4.0});
    CHECK_THROWS_AS(assemble_model(y, {{1, 3, 0.0, 0.0}}, {}, 0.0),
                    std::invalid_argument); // gap at t=4
    CHECK_THROWS_AS(assemble_model(y, {{1, 4, 0.0, 0.0}}, {{1, 3, 2, {0.0, 0.0}}}, 0.0),
                    std::invalid_argument); // seasonal gap
    CHECK_THROWS_AS(assemble_model(y, {{1, 4, 0.0, 0.0}}, {{1, 4, 3, {0.0, 0.0}}}, 0.0),
                    std::invalid_argument); // d != len(s)

    const auto model = assemble_model(y, {{1, 2, 0.0, 1.0}, {3, 4, 0.0, 2.0}},
                                      {{1, 4, 2, {0.5, -0.5}}}, 0.1);
    CHECK(model.param_count == 2 * 2 + 2);
    // Reconstruction identity holds exactly by construction.
    for (int t = 1; t <= 4; ++t) {
        CHECK(y.at(t) == model.trend_at(t) + model.seasonal_at(t) +
                             model.residuals[static_cast<std::size_t>(t - 1)]);
    }
}
