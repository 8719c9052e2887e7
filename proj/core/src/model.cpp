#include "tsbreak/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace tsbreak {

namespace {

void check_tiling(const std::vector<std::pair<int, int>>& ranges, int T,
                  const char* what) {
    int expected_start = 1;
    for (const auto& [start, end] : ranges) {
        if (start != expected_start || end < start) {
            throw std::invalid_argument(std::string(what) +
                                        ": ranges must tile 1..T without gaps or overlaps");
        }
        expected_start = end + 1;
    }
    if (expected_start != T + 1) {
        throw std::invalid_argument(std::string(what) + ": ranges do not cover 1.." +
                                    std::to_string(T));
    }
}

} // namespace

Partition::Partition(std::vector<int> boundaries, int h_min)
    : boundaries_(std::move(boundaries)) {
    if (h_min < 1) {
        throw std::invalid_argument("Partition: h_min must be >= 1");
    }
    if (boundaries_.size() < 2 || boundaries_.front() != 0) {
        throw std::invalid_argument("Partition: boundaries must start at 0 and end at T");
    }
    for (std::size_t k = 1; k < boundaries_.size(); ++k) {
        const int len = boundaries_[k] - boundaries_[k - 1];
        if (len <= 0) {
            throw std::invalid_argument("Partition: boundaries must be strictly increasing");
        }
        if (len < h_min) {
            throw std::invalid_argument("Partition: segment " + std::to_string(k) +
                                        " shorter than h_min=" + std::to_string(h_min));
        }
    }
}

std::pair<int, int> Partition::segment(int k) const {
    if (k < 1 || k > num_segments()) {
        throw std::out_of_range("Partition::segment: k out of range");
    }
    return {boundaries_[static_cast<std::size_t>(k - 1)] + 1,
            boundaries_[static_cast<std::size_t>(k)]};
}

std::vector<int> Partition::break_points() const {
    return {boundaries_.begin() + 1, boundaries_.end() - 1};
}

double DecompositionModel::trend_at(int t) const {
    for (const auto& seg : trend) {
        if (t >= seg.start && t <= seg.end) {
            return seg.value_at(t);
        }
    }
    throw std::out_of_range("DecompositionModel::trend_at: t=" + std::to_string(t) +
                            " not covered by any segment");
}

double DecompositionModel::seasonal_at(int t) const {
    if (seasonal.empty()) {
        if (t < 1 || t > series_length()) {
            throw std::out_of_range("DecompositionModel::seasonal_at: t out of range");
        }
        return 0.0;
    }
    for (const auto& block : seasonal) {
        if (t >= block.start && t <= block.end) {
            return block.value_at(t);
        }
    }
    throw std::out_of_range("DecompositionModel::seasonal_at: t=" + std::to_string(t) +
                            " not covered by any block");
}

DecompositionModel assemble_model(const TimeSeries& y,
                                  std::vector<TrendSegment> trend,
                                  std::vector<SeasonalBlock> seasonal,
                                  double lambda) {
    const int T = y.size();

    std::vector<std::pair<int, int>> trend_ranges;
    trend_ranges.reserve(trend.size());
    for (const auto& seg : trend) {
        trend_ranges.emplace_back(seg.start, seg.end);
    }
    check_tiling(trend_ranges, T, "assemble_model trend");

    int seasonal_params = 0;
    if (!seasonal.empty()) {
        std::vector<std::pair<int, int>> block_ranges;
        block_ranges.reserve(seasonal.size());
        for (const auto& block : seasonal) {
            if (block.d < 1 || block.s.size() != static_cast<std::size_t>(block.d) ||
                block.d > block.end - block.start + 1) {
                throw std::invalid_argument("assemble_model: invalid seasonal block");
            }
            block_ranges.emplace_back(block.start, block.end);
            seasonal_params += block.d;
        }
        check_tiling(block_ranges, T, "assemble_model seasonal");
    }

    DecompositionModel model;
    model.trend = std::move(trend);
    model.seasonal = std::move(seasonal);
    model.lambda = lambda;
    model.param_count = 2 * static_cast<int>(model.trend.size()) + seasonal_params;

    model.residuals.resize(static_cast<std::size_t>(T));
    double ss = 0.0, comp = 0.0; // compensated sum of squares
    for (int t = 1; t <= T; ++t) {
        const double r = y.at(t) - model.trend_at(t) - model.seasonal_at(t);
        model.residuals[static_cast<std::size_t>(t - 1)] = r;
        const double term = r * r - comp;
        const double next = ss + term;
        comp = (next - ss) - term;
        ss = next;
    }
    model.objective = std::sqrt(ss) + lambda * model.param_count;
    return model;
}

double evaluate_model(const DecompositionModel& model, int t) {
    if (t < 1 || t > model.series_length()) {
        throw std::out_of_range("evaluate_model: t=" + std::to_string(t) +
                                " outside [1, " +
                                std::to_string(model.series_length()) + "]");
    }
    return model.trend_at(t) + model.seasonal_at(t);
}

double residual_norm(const TimeSeries& y, const DecompositionModel& model) {
    if (y.has_missing()) {
        throw std::invalid_argument("residual_norm: series has missing values; impute first");
    }
    if (y.size() != model.series_length()) {
        throw std::invalid_argument("residual_norm: series/model length mismatch");
    }
    double ss = 0.0, comp = 0.0;
    for (int t = 1; t <= y.size(); ++t) {
        const double r = y.at(t) - evaluate_model(model, t);
        const double term = r * r - comp;
        const double next = ss + term;
        comp = (next - ss) - term;
        ss = next;
    }
    return std::sqrt(ss);
}

} // namespace tsbreak
