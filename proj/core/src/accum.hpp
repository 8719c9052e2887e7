#pragma once

namespace tsbreak::detail {

// Kahan compensated accumulator.
struct KahanSum {
    double sum = 0.0;
    double comp = 0.0;

    void add(double x) {
        const double term = x - comp;
        const double next = sum + term;
        comp = (next - sum) - term;
        sum = next;
    }

    double value() const { return sum; }
};

} // namespace tsbreak::detail
