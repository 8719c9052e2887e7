#include "tsbreak/series.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace tsbreak {

TimeSeries::TimeSeries(std::vector<double> values, std::string label)
    : values_(std::move(values)), label_(std::move(label)) {
    validate();
}

TimeSeries::TimeSeries(std::vector<double> values, std::vector<bool> missing_mask,
                       std::string label)
    : values_(std::move(values)), mask_(std::move(missing_mask)),
      label_(std::move(label)) {
    validate();
}

void TimeSeries::validate() const {
    if (values_.empty()) {
        throw std::invalid_argument("TimeSeries: length must be >= 1");
    }
    if (!mask_.empty() && mask_.size() != values_.size()) {
        throw std::invalid_argument("TimeSeries: mask length " +
                                    std::to_string(mask_.size()) +
                                    " != series length " +
                                    std::to_string(values_.size()));
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        const bool missing = !mask_.empty() && mask_[i];
        if (!missing && !std::isfinite(values_[i])) {
            throw std::invalid_argument(
                "TimeSeries: non-finite value at t=" + std::to_string(i + 1));
        }
    }
}

double TimeSeries::at(int t) const {
    if (t < 1 || t > size()) {
        throw std::out_of_range("TimeSeries::at: t=" + std::to_string(t) +
                                " outside [1, " + std::to_string(size()) + "]");
    }
    return values_[static_cast<std::size_t>(t - 1)];
}

bool TimeSeries::is_missing(int t) const {
    if (t < 1 || t > size()) {
        throw std::out_of_range("TimeSeries::is_missing: t=" + std::to_string(t) +
                                " outside [1, " + std::to_string(size()) + "]");
    }
    return !mask_.empty() && mask_[static_cast<std::size_t>(t - 1)];
}

bool TimeSeries::has_missing() const {
    return std::find(mask_.begin(), mask_.end(), true) != mask_.end();
}

int TimeSeries::missing_count() const {
    return static_cast<int>(std::count(mask_.begin(), mask_.end(), true));
}

} // namespace tsbreak
