#include "report.hpp"

#include <cmath>
#include <fstream>
#include <iostream>

#include "tsbreak/errors.hpp"

namespace tsbreak::cli {

namespace {

json residual_diagnostics(const DecompositionModel& model) {
    double ss = 0.0;
    double max_abs = 0.0;
    for (double r : model.residuals) {
        ss += r * r;
        max_abs = std::max(max_abs, std::abs(r));
    }
    const double n = static_cast<double>(model.residuals.size());
    return {{"norm", std::sqrt(ss)},
            {"rms", std::sqrt(ss / n)},
            {"max_abs", max_abs}};
}

} // namespace

json segment_to_json(const TrendSegment& segment) {
    return {{"start", segment.start},
            {"end", segment.end},
            {"a", segment.a},
            {"b", segment.b}};
}

json model_to_json(const DecompositionModel& model) {
    json trend = json::array();
    for (const auto& segment : model.trend) {
        trend.push_back(segment_to_json(segment));
    }
    json seasonal = json::array();
    for (const auto& block : model.seasonal) {
        seasonal.push_back({{"start", block.start},
                            {"end", block.end},
                            {"d", block.d},
                            {"s", block.s}});
    }
    return {{"trend", trend},
            {"seasonal", seasonal},
            {"param_count", model.param_count},
            {"objective", model.objective},
            {"lambda", model.lambda},
            {"residual", residual_diagnostics(model)}};
}

json break_solution_to_json(const BreakSolution& solution) {
    json segments = json::array();
    for (const auto& segment : solution.segments) {
        segments.push_back(segment_to_json(segment));
    }
    return {{"m", solution.m},
            {"break_points", solution.breaks.break_points()},
            {"ssr_total", solution.ssr_total},
            {"objective", solution.objective},
            {"lambda", solution.lambda},
            {"segments", segments}};
}

json joint_model_to_json(const JointModel& result) {
    json history = json::array();
    for (const auto& it : result.history) {
        history.push_back({{"break_points", it.break_points},
                           {"p", it.p},
                           {"objective", it.objective}});
    }
    std::vector<int> break_points;
    for (std::size_t k = 1; k < result.model.trend.size(); ++k) {
        break_points.push_back(result.model.trend[k].start - 1);
    }
    return {{"m", static_cast<int>(result.model.trend.size())},
            {"p", result.model.seasonal.empty() ? 0 : result.model.seasonal[0].d},
            {"break_points", break_points},
            {"iterations", result.iterations},
            {"converged", result.converged},
            {"objective", result.objective},
            {"history", history},
            {"model", model_to_json(result.model)}};
}

json period_search_to_json(const PeriodSearchResult& result) {
    json curve = json::array();
    for (const auto& [p, objective] : result.objective_curve) {
        curve.push_back({p, objective});
    }
    json delta = json::array();
    for (Eigen::Index i = 0; i < result.delta.size(); ++i) {
        delta.push_back(result.delta(i));
    }
    return {{"p_star", result.p_star},
            {"lambda", result.lambda},
            {"objective_curve", curve},
            {"delta", delta}};
}

json input_to_json(const Dataset& dataset) {
    json log = json::array();
    for (const auto& record : dataset.imputation_log) {
        log.push_back({{"series", record.series},
                       {"t", record.index},
                       {"value", record.value}});
    }
    json labels = json::array();
    for (const auto& series : dataset.series) {
        labels.push_back(series.label());
    }
    return {{"path", dataset.source_path},
            {"fnv1a64", fnv1a64_file(dataset.source_path)},
            {"series", labels},
            {"imputation_log", log}};
}

void write_report(const std::string& path, const json& report) {
    const std::string text = report.dump(2) + "\n";
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) {
        throw FormatError("write_report: cannot open '" + path + "' for writing");
    }
    out << text;
}

} // namespace tsbreak::cli
