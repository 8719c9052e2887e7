#include <doctest.h>

#include <limits>
#include <stdexcept>

#include "tsbreak/series.hpp"

using tsbreak::TimeSeries;

TEST_CASE("TimeSeries rejects empty input") {
    CHECK_THROWS_AS(TimeSeries(std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("TimeSeries rejects mask length mismatch") {
    CHECK_THROWS_AS(TimeSeries({1.0, 2.0}, std::vector<bool>{true}),
                    std::invalid_argument);
}

TEST_CASE("TimeSeries rejects non-finite observed values") {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const double inf = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(TimeSeries({1.0, nan}), std::invalid_argument);
    CHECK_THROWS_AS(TimeSeries({inf}), std::invalid_argument);
    // A masked cell may hold any payload.
    CHECK_NOTHROW(TimeSeries({1.0, nan}, std::vector<bool>{false, true}));
}

TEST_CASE("TimeSeries 1-based access and mask queries") {
    const TimeSeries y({4.0, 5.0, 6.0}, std::vector<bool>{false, true, false}, "x");
    CHECK(y.size() == 3);
    CHECK(y.at(1) == 4.0);
    CHECK(y.at(3) == 6.0);
    CHECK(y.is_missing(2));
    CHECK_FALSE(y.is_missing(1));
    CHECK(y.has_missing());
    CHECK(y.missing_count() == 1);
    CHECK(y.label() == "x");
    CHECK_THROWS_AS(y.at(0), std::out_of_range);
    CHECK_THROWS_AS(y.at(4), std::out_of_range);
}

TEST_CASE("TimeSeries without mask reports no missing values") {
    const TimeSeries y({1.0});
    CHECK_FALSE(y.has_missing());
    CHECK(y.missing_count() == 0);
}
