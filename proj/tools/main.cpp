#include <chrono>
#include <cstdint>
#include <ctime>
#include <future>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "report.hpp"
#include "tsbreak/classical.hpp"
#include "tsbreak/errors.hpp"
#include "tsbreak/io.hpp"
#include "tsbreak/joint.hpp"
#include "tsbreak/synth.hpp"
#include "tsbreak/version.hpp"

namespace {

using tsbreak::cli::json;
using Clock = std::chrono::steady_clock;

struct InputOptions {
    std::string path;
    std::string delimiter = ",";
    std::vector<std::string> na_values = {"", "NA"};
    std::string time_column = "t";
    std::vector<std::string> columns;
    bool row_mean = false;
};

struct OutputOptions {
    std::string report_path = "-";
    std::string plot_path;
};

void add_input_options(CLI::App* cmd, InputOptions& opt) {
    cmd->add_option("input", opt.path, "Input CSV file (one header row)")
        ->required();
    cmd->add_option("--delimiter", opt.delimiter, "Cell delimiter")
        ->capture_default_str();
    cmd->add_option("--na", opt.na_values,
                    "Missing-value sentinels (empty cells always count)");
    cmd->add_option("--time-column", opt.time_column,
                    "Header name of the time-index column to skip")
        ->capture_default_str();
    cmd->add_option("--columns", opt.columns,
                    "Value columns to load (default: all but the time column)");
    cmd->add_flag("--row-mean", opt.row_mean,
                  "Collapse the value columns into one series of row means");
}

void add_output_options(CLI::App* cmd, OutputOptions& opt) {
    cmd->add_option("-o,--output", opt.report_path,
                    "Report path ('-' = stdout)")
        ->capture_default_str();
    cmd->add_option("--plot", opt.plot_path,
                    "Write tab-separated plot data (t, observed, trend, "
                    "seasonal, residual)");
}

json input_config_json(const InputOptions& opt) {
    return {{"delimiter", opt.delimiter},
            {"na", opt.na_values},
            {"time_column", opt.time_column},
            {"columns", opt.columns},
            {"row_mean", opt.row_mean}};
}

tsbreak::Dataset load_input(const InputOptions& opt) {
    if (opt.delimiter.size() != 1) {
        throw tsbreak::FormatError("--delimiter must be a single character");
    }
    tsbreak::CsvOptions csv;
    csv.delimiter = opt.delimiter[0];
    csv.na_values = opt.na_values;
    csv.time_column = opt.time_column;
    csv.columns = opt.columns;
    csv.row_mean = opt.row_mean;
    return tsbreak::impute_temporal_average(tsbreak::load_csv(opt.path, csv));
}

std::string utc_timestamp() {
    const std::time_t now = std::time(nullptr);
    char buf[32];
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string plot_path_for(const std::string& base, const std::string& label,
                          bool multi) {
    if (!multi) return base;
    const auto dot = base.find_last_of('.');
    if (dot == std::string::npos) return base + "_" + label;
    return base.substr(0, dot) + "_" + label + base.substr(dot);
}

// Runs `solve` on every series (in parallel when there is more than one) and
// returns results in input order plus per-series wall times.
template <typename Fn>
std::pair<json, json> process_series(const tsbreak::Dataset& dataset, Fn solve) {
    const std::size_t n = dataset.series.size();
    std::vector<json> results(n);
    std::vector<double> millis(n);
    auto task = [&](std::size_t i) {
        const auto start = Clock::now();
        results[i] = solve(dataset.series[i], i);
        millis[i] =
            std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    };
    if (n == 1) {
        task(0);
    } else {
        std::vector<std::future<void>> futures;
        futures.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            futures.push_back(std::async(std::launch::async, task, i));
        }
        for (auto& f : futures) f.get();
    }
    return {json(results), json(millis)};
}

json make_report(const std::string& command, json config, json extras,
                 const Clock::time_point& start) {
    json report{{"schema_version", 1},
                {"tool", {{"name", "tsbreak"}, {"version", tsbreak::kVersion}}},
                {"command", command},
                {"config", std::move(config)}};
    report.update(extras);
    report["timing"] = {
        {"started_utc", utc_timestamp()},
        {"total_ms",
         std::chrono::duration<double, std::milli>(Clock::now() - start).count()}};
    return report;
}

// ---------------------------------------------------------------------------
// synth

struct SynthOptions {
    std::string output;
    std::string report_path;
    bool fig2 = false;
    int T = 100;
    double sigma = 0.0;
    std::uint64_t seed = 0;
    std::vector<std::string> trend;
    int period = 0;
    double amplitude = 1.0;
    double phase = 0.0;
    std::vector<double> values;
    std::string label = "y";
};

tsbreak::TrendPiece parse_trend_piece(const std::string& text) {
    tsbreak::TrendPiece piece;
    char extra = 0;
    if (std::sscanf(text.c_str(), "%d:%d:%lf:%lf%c", &piece.start, &piece.end,
                    &piece.a, &piece.b, &extra) != 4) {
        throw tsbreak::FormatError("--trend expects start:end:a:b, got '" + text +
                                   "'");
    }
    return piece;
}

int run_synth(const SynthOptions& opt) {
    const auto start = Clock::now();
    tsbreak::GeneratorSpec spec;
    spec.seed = opt.seed;
    spec.label = opt.label;
    if (opt.fig2) {
        // Demo preset: linear trend 0.03t - 0.5 plus a unit period-10
        // sinusoid and sigma = 0.1 noise over T = 100.
        spec.T = 100;
        spec.trend_pieces = {{1, 100, 0.03, -0.5}};
        spec.seasonal = tsbreak::SeasonalSpec{10, 1.0, 0.0, {}};
        spec.sigma = 0.1;
    } else {
        spec.T = opt.T;
        spec.sigma = opt.sigma;
        if (opt.trend.empty()) {
            spec.trend_pieces = {{1, opt.T, 0.0, 0.0}};
        } else {
            for (const auto& text : opt.trend) {
                spec.trend_pieces.push_back(parse_trend_piece(text));
            }
        }
        if (opt.period >= 1) {
            spec.seasonal = tsbreak::SeasonalSpec{opt.period, opt.amplitude,
                                                  opt.phase, opt.values};
        }
    }

    const tsbreak::TimeSeries series = tsbreak::gen_series(spec);
    tsbreak::write_series_csv(opt.output, series);

    if (!opt.report_path.empty()) {
        json pieces = json::array();
        for (const auto& piece : spec.trend_pieces) {
            pieces.push_back({{"start", piece.start},
                              {"end", piece.end},
                              {"a", piece.a},
                              {"b", piece.b}});
        }
        json seasonal;
        if (spec.seasonal) {
            seasonal = {{"d", spec.seasonal->d},
                        {"amplitude", spec.seasonal->amplitude},
                        {"phase", spec.seasonal->phase},
                        {"values", spec.seasonal->values}};
        }
        json config{{"fig2", opt.fig2},
                    {"T", spec.T},
                    {"sigma", spec.sigma},
                    {"trend_pieces", pieces},
                    {"seasonal", seasonal},
                    {"label", spec.label},
                    {"noise_algorithm", tsbreak::kNoiseAlgorithm}};
        json extras{{"seed", spec.seed},
                    {"output",
                     {{"path", opt.output},
                      {"fnv1a64", tsbreak::fnv1a64_file(opt.output)}}}};
        tsbreak::cli::write_report(opt.report_path,
                                   make_report("synth", config, extras, start));
    }
    return 0;
}

// ---------------------------------------------------------------------------
// decompose

struct DecomposeOptions {
    InputOptions input;
    OutputOptions output;
    bool regularized = false;
    bool classical = false;
    double lambda = 0.1;
    int p_max = -1;
    bool full_period_range = false;
    int q = 0;
    int degree = 1;
    bool seasonal_on_raw = false;
    std::uint64_t seed = 0;
};

int run_decompose(const DecomposeOptions& opt) {
    const auto start = Clock::now();
    if (opt.classical && opt.q < 1) {
        throw tsbreak::FormatError("decompose --classical requires --q >= 1");
    }
    const bool classical = opt.classical;
    const tsbreak::Dataset dataset = load_input(opt.input);
    const bool multi = dataset.series.size() > 1;

    auto [results, per_series_ms] = process_series(
        dataset, [&](const tsbreak::TimeSeries& y, std::size_t) -> json {
            json result{{"series", y.label()}};
            tsbreak::DecompositionModel model;
            if (classical) {
                model = tsbreak::classical_decompose(y, opt.q, opt.degree,
                                                     opt.seasonal_on_raw);
                result["method"] = "classical";
                result["q"] = opt.q;
                result["degree"] = opt.degree;
            } else {
                const int p_max = opt.full_period_range
                                      ? y.size()
                                      : (opt.p_max < 0 ? y.size() / 2 : opt.p_max);
                const auto search = tsbreak::search_period(y, opt.lambda, p_max);
                model = tsbreak::to_model(y, search);
                result["method"] = "regularized";
                result["p_max"] = p_max;
                result.update(tsbreak::cli::period_search_to_json(search));
            }
            result["model"] = tsbreak::cli::model_to_json(model);
            if (!opt.output.plot_path.empty()) {
                tsbreak::write_plot_tsv(
                    plot_path_for(opt.output.plot_path, y.label(), multi), y, model);
            }
            return result;
        });

    json config{{"method", classical ? "classical" : "regularized"},
                {"lambda", opt.lambda},
                {"p_max", opt.p_max},
                {"full_period_range", opt.full_period_range},
                {"q", opt.q},
                {"degree", opt.degree},
                {"seasonal_on_raw", opt.seasonal_on_raw}};
    config.update(input_config_json(opt.input));
    json extras{{"input", tsbreak::cli::input_to_json(dataset)},
                {"results", results},
                {"seed", opt.seed}};
    json report = make_report("decompose", config, extras, start);
    report["timing"]["per_series_ms"] = per_series_ms;
    tsbreak::cli::write_report(opt.output.report_path, report);
    return 0;
}

// ---------------------------------------------------------------------------
// breaks

struct BreaksOptions {
    InputOptions input;
    OutputOptions output;
    double lambda = 0.1;
    int m_max = 10;
    int h_min = 2;
    std::uint64_t seed = 0;
};

int effective_m_max(int requested, int T, int h_min) {
    const int cap = std::min(T / h_min, T / 2);
    if (cap < 1) {
        throw tsbreak::InsufficientDataError(
            "series too short for one segment of length h_min");
    }
    return std::min(requested, cap);
}

int run_breaks(const BreaksOptions& opt) {
    const auto start = Clock::now();
    const tsbreak::Dataset dataset = load_input(opt.input);
    const bool multi = dataset.series.size() > 1;

    auto [results, per_series_ms] = process_series(
        dataset, [&](const tsbreak::TimeSeries& y, std::size_t) -> json {
            const int m_max = effective_m_max(opt.m_max, y.size(), opt.h_min);
            const auto search =
                tsbreak::select_num_breaks_full(y, opt.lambda, m_max, opt.h_min);
            json result{{"series", y.label()}, {"m_max", m_max}};
            result.update(tsbreak::cli::break_solution_to_json(search.best));
            json curve = json::array();
            for (const auto& [m, objective] : search.objective_curve) {
                curve.push_back({m, objective});
            }
            result["objective_curve"] = curve;
            if (!opt.output.plot_path.empty()) {
                const auto model = tsbreak::assemble_model(
                    y, search.best.segments, {}, opt.lambda);
                tsbreak::write_plot_tsv(
                    plot_path_for(opt.output.plot_path, y.label(), multi), y, model);
            }
            return result;
        });

    json config{{"lambda", opt.lambda}, {"m_max", opt.m_max}, {"h_min", opt.h_min}};
    config.update(input_config_json(opt.input));
    json extras{{"input", tsbreak::cli::input_to_json(dataset)},
                {"results", results},
                {"seed", opt.seed}};
    json report = make_report("breaks", config, extras, start);
    report["timing"]["per_series_ms"] = per_series_ms;
    tsbreak::cli::write_report(opt.output.report_path, report);
    return 0;
}

// ---------------------------------------------------------------------------
// joint

struct JointOptions {
    InputOptions input;
    OutputOptions output;
    double lambda = 0.1;
    int period = -1; // fixed period; -1 = search
    int p_max = -1;
    int m_max = 10;
    int h_min = 2;
    int max_iters = 50;
    double trend_tol = 1e-6;
    std::uint64_t seed = 0;
};

int run_joint(const JointOptions& opt) {
    const auto start = Clock::now();
    const tsbreak::Dataset dataset = load_input(opt.input);
    const bool multi = dataset.series.size() > 1;

    auto [results, per_series_ms] = process_series(
        dataset, [&](const tsbreak::TimeSeries& y, std::size_t) -> json {
            tsbreak::JointConfig config;
            config.lambda = opt.lambda;
            config.max_iters = opt.max_iters;
            config.trend_tol = opt.trend_tol;
            config.p_max = opt.p_max;
            config.m_max = opt.m_max;
            config.h_min = opt.h_min;
            if (opt.period >= 0) {
                config.fixed_period = opt.period;
            }
            const auto detected = tsbreak::iterative_detect(y, config);
            json result{{"series", y.label()}};
            result.update(tsbreak::cli::joint_model_to_json(detected));
            if (!opt.output.plot_path.empty()) {
                tsbreak::write_plot_tsv(
                    plot_path_for(opt.output.plot_path, y.label(), multi), y,
                    detected.model);
            }
            return result;
        });

    json config{{"lambda", opt.lambda},
                {"period", opt.period},
                {"p_max", opt.p_max},
                {"m_max", opt.m_max},
                {"h_min", opt.h_min},
                {"max_iters", opt.max_iters},
                {"trend_tol", opt.trend_tol}};
    config.update(input_config_json(opt.input));
    json extras{{"input", tsbreak::cli::input_to_json(dataset)},
                {"results", results},
                {"seed", opt.seed}};
    json report = make_report("joint", config, extras, start);
    report["timing"]["per_series_ms"] = per_series_ms;
    tsbreak::cli::write_report(opt.output.report_path, report);
    return 0;
}

// ---------------------------------------------------------------------------
// oracle

struct OracleOptions {
    InputOptions input;
    OutputOptions output;
    std::string mode; // "breaks" or "joint"
    int m = 2;
    int h_min = 2;
    double lambda = 0.1;
    int p_max = 12;
    int m_max = 2;
    std::int64_t max_partitions = 10'000'000;
    std::uint64_t seed = 0;
};

int run_oracle(const OracleOptions& opt) {
    const auto start = Clock::now();
    const tsbreak::Dataset dataset = load_input(opt.input);

    auto [results, per_series_ms] = process_series(
        dataset, [&](const tsbreak::TimeSeries& y, std::size_t) -> json {
            json result{{"series", y.label()}};
            if (opt.mode == "breaks") {
                const auto solution = tsbreak::brute_force_breaks(
                    y, opt.m, opt.h_min, opt.max_partitions);
                result.update(tsbreak::cli::break_solution_to_json(solution));
            } else {
                tsbreak::JointOracleBounds bounds{opt.m_max, opt.p_max, opt.h_min};
                const auto solution =
                    tsbreak::brute_force_joint(y, opt.lambda, bounds);
                result.update(tsbreak::cli::joint_model_to_json(solution));
            }
            return result;
        });

    json config{{"mode", opt.mode},        {"m", opt.m},
                {"h_min", opt.h_min},      {"lambda", opt.lambda},
                {"p_max", opt.p_max},      {"m_max", opt.m_max},
                {"max_partitions", opt.max_partitions}};
    config.update(input_config_json(opt.input));
    json extras{{"input", tsbreak::cli::input_to_json(dataset)},
                {"results", results},
                {"seed", opt.seed}};
    json report = make_report("oracle", config, extras, start);
    report["timing"]["per_series_ms"] = per_series_ms;
    tsbreak::cli::write_report(opt.output.report_path, report);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Seasonal-trend decomposition and structural break detection"};
    app.set_version_flag("--version", tsbreak::kVersion);
    app.set_config("--config", "",
                   "Config file mirroring the flags one-to-one, with one "
                   "section per subcommand");
    app.require_subcommand(1);
    const auto with_config = [](CLI::App* cmd) {
        cmd->fallthrough();
        cmd->configurable();
    };

    SynthOptions synth;
    auto* synth_cmd =
        app.add_subcommand("synth", "Generate a synthetic series as CSV");
    with_config(synth_cmd);
    synth_cmd->add_option("-o,--output", synth.output, "Output CSV path")
        ->required();
    synth_cmd->add_option("--report", synth.report_path,
                          "Also write a generation report");
    synth_cmd->add_flag("--fig2", synth.fig2,
                        "Demo preset: 0.03t - 0.5 + sin(2*pi*t/10) + "
                        "N(0, 0.1^2), T=100");
    synth_cmd->add_option("--T", synth.T, "Series length")->capture_default_str();
    synth_cmd->add_option("--sigma", synth.sigma, "Noise standard deviation")
        ->capture_default_str();
    synth_cmd->add_option("--seed", synth.seed, "Noise seed")
        ->capture_default_str();
    synth_cmd->add_option("--trend", synth.trend,
                          "Trend piece start:end:a:b (repeatable; pieces must "
                          "tile 1..T)");
    synth_cmd->add_option("--period", synth.period, "Seasonal period d (0 = none)")
        ->capture_default_str();
    synth_cmd->add_option("--amplitude", synth.amplitude,
                          "Sinusoid amplitude (ignored with --values)")
        ->capture_default_str();
    synth_cmd->add_option("--phase", synth.phase, "Sinusoid phase in radians")
        ->capture_default_str();
    synth_cmd->add_option("--values", synth.values,
                          "Explicit per-phase seasonal values (length d)");
    synth_cmd->add_option("--label", synth.label, "Series label / CSV header")
        ->capture_default_str();

    DecomposeOptions decompose;
    auto* decompose_cmd = app.add_subcommand(
        "decompose", "Seasonal-trend decomposition of each series");
    with_config(decompose_cmd);
    add_input_options(decompose_cmd, decompose.input);
    add_output_options(decompose_cmd, decompose.output);
    auto* reg_flag = decompose_cmd->add_flag("--reg", decompose.regularized,
                                             "Regularized period search (default)");
    decompose_cmd->add_flag("--classical", decompose.classical,
                            "Moving-average decomposition with filter size q")
        ->excludes(reg_flag);
    decompose_cmd->add_option("--lambda", decompose.lambda,
                              "Regularization weight")
        ->capture_default_str();
    decompose_cmd->add_option("--pmax", decompose.p_max,
                              "Largest candidate period (-1 = T/2)")
        ->capture_default_str();
    decompose_cmd->add_flag("--full-period-range", decompose.full_period_range,
                            "Search periods up to T instead of T/2");
    decompose_cmd->add_option("--q", decompose.q, "Moving-average filter size")
        ->capture_default_str();
    decompose_cmd->add_option("--degree", decompose.degree,
                              "Trend polynomial degree (0 or 1)")
        ->capture_default_str();
    decompose_cmd->add_flag("--seasonal-on-raw", decompose.seasonal_on_raw,
                            "Average raw observations (uncentered) in the "
                            "seasonal step");
    decompose_cmd->add_option("--seed", decompose.seed, "Echoed into the report")
        ->capture_default_str();

    BreaksOptions breaks;
    auto* breaks_cmd = app.add_subcommand(
        "breaks", "Trend structural-break detection per series");
    with_config(breaks_cmd);
    add_input_options(breaks_cmd, breaks.input);
    add_output_options(breaks_cmd, breaks.output);
    breaks_cmd->add_option("--lambda", breaks.lambda, "Regularization weight")
        ->capture_default_str();
    breaks_cmd->add_option("--mmax", breaks.m_max, "Largest segment count")
        ->capture_default_str();
    breaks_cmd->add_option("--hmin", breaks.h_min, "Minimum segment length")
        ->capture_default_str();
    breaks_cmd->add_option("--seed", breaks.seed, "Echoed into the report")
        ->capture_default_str();

    JointOptions joint;
    auto* joint_cmd = app.add_subcommand(
        "joint", "Iterative seasonal decomposition + trend break detection");
    with_config(joint_cmd);
    add_input_options(joint_cmd, joint.input);
    add_output_options(joint_cmd, joint.output);
    joint_cmd->add_option("--lambda", joint.lambda, "Regularization weight")
        ->capture_default_str();
    joint_cmd->add_option("--period", joint.period,
                          "Fix the seasonal period (default: search)");
    joint_cmd->add_option("--pmax", joint.p_max,
                          "Largest candidate period (-1 = T/2)")
        ->capture_default_str();
    joint_cmd->add_option("--mmax", joint.m_max, "Largest segment count")
        ->capture_default_str();
    joint_cmd->add_option("--hmin", joint.h_min, "Minimum segment length")
        ->capture_default_str();
    joint_cmd->add_option("--max-iters", joint.max_iters, "Iteration cap")
        ->capture_default_str();
    joint_cmd->add_option("--tol", joint.trend_tol,
                          "Convergence tolerance on the fitted trend")
        ->capture_default_str();
    joint_cmd->add_option("--seed", joint.seed, "Echoed into the report")
        ->capture_default_str();

    OracleOptions oracle;
    auto* oracle_cmd = app.add_subcommand(
        "oracle", "Exhaustive-enumeration reference solvers (small inputs)");
    with_config(oracle_cmd);
    add_input_options(oracle_cmd, oracle.input);
    add_output_options(oracle_cmd, oracle.output);
    oracle_cmd
        ->add_option("--mode", oracle.mode, "breaks: segmentation; joint: "
                                            "segmentation + seasonal fit")
        ->required()
        ->check(CLI::IsMember({"breaks", "joint"}));
    oracle_cmd->add_option("--m", oracle.m, "Exact segment count (breaks mode)")
        ->capture_default_str();
    oracle_cmd->add_option("--hmin", oracle.h_min, "Minimum segment length")
        ->capture_default_str();
    oracle_cmd->add_option("--lambda", oracle.lambda,
                           "Regularization weight (joint mode)")
        ->capture_default_str();
    oracle_cmd->add_option("--pmax", oracle.p_max,
                           "Largest candidate period (joint mode, <= 12)")
        ->capture_default_str();
    oracle_cmd->add_option("--mmax", oracle.m_max,
                           "Largest segment count (joint mode, <= 2)")
        ->capture_default_str();
    oracle_cmd->add_option("--max-partitions", oracle.max_partitions,
                           "Enumeration guard (breaks mode)")
        ->capture_default_str();
    oracle_cmd->add_option("--seed", oracle.seed, "Echoed into the report")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (synth_cmd->parsed()) return run_synth(synth);
        if (decompose_cmd->parsed()) return run_decompose(decompose);
        if (breaks_cmd->parsed()) return run_breaks(breaks);
        if (joint_cmd->parsed()) return run_joint(joint);
        if (oracle_cmd->parsed()) return run_oracle(oracle);
    } catch (const std::exception& e) {
        std::cerr << "tsbreak: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
