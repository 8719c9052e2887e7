#pragma once

#include <string>
#include <vector>

namespace tsbreak {

// Ordered real-valued observations indexed t = 1..T, with an optional
// missing-value mask. Immutable after construction; non-missing entries are
// guaranteed finite.
class TimeSeries {
public:
    explicit TimeSeries(std::vector<double> values, std::string label = {});
    TimeSeries(std::vector<double> values, std::vector<bool> missing_mask,
               std::string label = {});

    int size() const { return static_cast<int>(values_.size()); }

    // 1-based access, t in [1, T].
    double at(int t) const;
    bool is_missing(int t) const;

    bool has_missing() const;
    int missing_count() const;

    const std::vector<double>& values() const { return values_; }
    const std::vector<bool>& mask() const { return mask_; }
    const std::string& label() const { return label_; }

private:
    std::vector<double> values_;
    std::vector<bool> mask_; // empty means no missing entries
    std::string label_;

    void validate() const;
};

} // namespace tsbreak
