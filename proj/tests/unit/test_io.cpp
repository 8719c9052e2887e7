#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "helpers.hpp"
#include "tsbreak/errors.hpp"
#include "tsbreak/io.hpp"
#include "tsbreak/regularized.hpp"

using namespace tsbreak;

namespace {

struct TempFile {
    std::filesystem::path path;

    explicit TempFile(const std::string& name, const std::string& contents = "") {
        path = std::filesystem::temp_directory_path() / name;
        if (!contents.empty()) {
            std::ofstream out(path);
            out << contents;
        }
    }
    ~TempFile() { std::filesystem::remove(path); }
    std::string str() const { return path.string(); }
};

} // namespace

TEST_CASE("load_csv parses values and missing cells") {
    const TempFile file("tsbreak_io_basic.csv", "t,y\n1,1.0\n2,\n3,3.0\n");
    const Dataset ds = load_csv(file.str());
    REQUIRE(ds.series.size() == 1);
    const auto& y = ds.series[0];
    CHECK(y.label() == "y");
    CHECK(y.size() == 3);
    CHECK(y.at(1) == 1.0);
    CHECK(y.is_missing(2));
    CHECK(y.at(3) == 3.0);
    CHECK(ds.source_path == file.str());
}

TEST_CASE("load_csv honors NA sentinels and column selection") {
    const TempFile file("tsbreak_io_na.csv", "t,a,b\n1,NA,4\n2,2.5,NA\n");
    CsvOptions opt;
    opt.columns = {"b"};
    const Dataset ds = load_csv(file.str(), opt);
    REQUIRE(ds.series.size() == 1);
    CHECK(ds.series[0].label() == "b");
    CHECK(ds.series[0].at(1) == 4.0);
    CHECK(ds.series[0].is_missing(2));

    CsvOptions missing_column;
    missing_column.columns = {"zzz"};
    CHECK_THROWS_AS(load_csv(file.str(), missing_column), FormatError);
}

TEST_CASE("load_csv row-mean mode averages non-missing cells per row") {
    const TempFile file("tsbreak_io_mean.csv",
                        "t,s1,s2,s3\n1,1.0,2.0,3.0\n2,NA,4.0,\n3,NA,NA,NA\n");
    CsvOptions opt;
    opt.row_mean = true;
    const Dataset ds = load_csv(file.str(), opt);
    REQUIRE(ds.series.size() == 1);
    const auto& y = ds.series[0];
    CHECK(y.at(1) == doctest::Approx(2.0));
    CHECK(y.at(2) == doctest::Approx(4.0));
    CHECK(y.is_missing(3));
}

TEST_CASE("load_csv reports bad cells and ragged rows with locations") {
    const TempFile bad("tsbreak_io_bad.csv", "t,y\n1,oops\n");
    CHECK_THROWS_WITH_AS(load_csv(bad.str()),
                         doctest::Contains("row 2"), FormatError);
    const TempFile ragged("tsbreak_io_ragged.csv", "t,y\n1,2.0\n3\n");
    CHECK_THROWS_AS(load_csv(ragged.str()), FormatError);
    CHECK_THROWS_AS(load_csv("/nonexistent/path.csv"), FormatError);
}

TEST_CASE("series CSV round-trips bit-exactly") {
    const TimeSeries original = testutil::random_series(64, 51, 1e3);
    const TempFile file("tsbreak_io_roundtrip.csv");
    write_series_csv(file.str(), original);
    const Dataset ds = load_csv(file.str());
    REQUIRE(ds.series.size() == 1);
    CHECK(ds.series[0].values() == original.values());
}

TEST_CASE("imputation fills with the temporal average and logs every cell") {
    Dataset ds;
    ds.series.emplace_back(std::vector<double>{1.0, 0.0, 3.0},
                           std::vector<bool>{false, true, false}, "y");
    const Dataset filled = impute_temporal_average(std::move(ds));
    CHECK(filled.series[0].at(2) == doctest::Approx(2.0));
    CHECK_FALSE(filled.series[0].has_missing());
    REQUIRE(filled.imputation_log.size() == 1);
    CHECK(filled.imputation_log[0].series == "y");
    CHECK(filled.imputation_log[0].index == 2);
    CHECK(filled.imputation_log[0].value == doctest::Approx(2.0));
}

TEST_CASE("imputation is the identity on complete series") {
    Dataset ds;
    ds.series.emplace_back(std::vector<double>{5.0, 6.0}, "y");
    const Dataset out = impute_temporal_average(std::move(ds));
    CHECK(out.series[0].values() == std::vector<double>{5.0, 6.0});
    CHECK(out.imputation_log.empty());
}

TEST_CASE("imputation of a nearly-empty series uses the lone value") {
    Dataset ds;
    ds.series.emplace_back(std::vector<double>{5.0, 0.0},
                           std::vector<bool>{false, true}, "y");
    const Dataset out = impute_temporal_average(std::move(ds));
    CHECK(out.series[0].values() == std::vector<double>{5.0, 5.0});
}

TEST_CASE("imputation rejects fully-missing series by name") {
    Dataset ds;
    ds.series.emplace_back(std::vector<double>{0.0, 0.0},
                           std::vector<bool>{true, true}, "sea7");
    CHECK_THROWS_WITH_AS(impute_temporal_average(std::move(ds)),
                         doctest::Contains("sea7"), InsufficientDataError);
}

TEST_CASE("plot data re-parses to the fitted values exactly") {
    const TimeSeries y = gen_series(testutil::sine_trend_spec(50, 33));
    const auto model = to_model(y, search_period(y, 0.1, 25));
    const TempFile file("tsbreak_io_plot.tsv");
    write_plot_tsv(file.str(), y, model);

    std::ifstream in(file.str());
    std::string header;
    std::getline(in, header);
    CHECK(header == "t\tobserved\ttrend\tseasonal\tresidual");
    int t = 0;
    double observed = 0, trend = 0, seasonal = 0, residual = 0;
    int rows = 0;
    while (in >> t >> observed >> trend >> seasonal >> residual) {
        ++rows;
        CHECK(observed == y.at(t));
        CHECK(trend == model.trend_at(t));
        CHECK(seasonal == model.seasonal_at(t));
        CHECK(residual == model.residuals[static_cast<std::size_t>(t - 1)]);
    }
    CHECK(rows == 50);
}

TEST_CASE("file digest matches a reference fnv-1a implementation") {
    const std::string contents = "t,y\n1,2.0\n";
    const TempFile file("tsbreak_io_hash.csv", contents);
    std::uint64_t expected = 0xcbf29ce484222325ULL;
    for (unsigned char ch : contents) {
        expected ^= ch;
        expected *= 0x100000001b3ULL;
    }
    char hex[17];
    std::snprintf(hex, sizeof(hex), "%016llx",
                  static_cast<unsigned long long>(expected));
    CHECK(fnv1a64_file(file.str()) == hex);
}
