#pragma once

#include <vector>

#include "tsbreak/model.hpp"
#include "tsbreak/series.hpp"

namespace tsbreak {

// Moving-average filter of size q. The raw coefficient vector is
// [1,...,1] (length q) for odd q and [0.5,1,...,1,0.5] (length q+1) for
// even q; both are divided by q when applied.
struct MovingAverageSpec {
    int q = 0;
    std::vector<double> weights;

    static MovingAverageSpec for_size(int q);
};

struct IndexedValue {
    int t = 0;
    double value = 0.0;
};

// Centered moving average; emitted only where the full window fits,
// i.e. t in [floor(q/2)+1, T - floor(q/2)]. No padding, no shrinking
// windows. Throws InsufficientDataError when no full window exists.
std::vector<IndexedValue> moving_average(const TimeSeries& y, int q);

// Per-phase averages s_1..s_q of the given (index, value) points: s_k is the
// mean over points at t = k, k+q, k+2q, ... Gaps (e.g. boundary points not
// covered by the moving average) are simply skipped. With center=true the
// result is shifted so that sum(s_k) = 0. Throws InsufficientDataError when
// some phase has no samples.
std::vector<double> seasonal_averages(const std::vector<IndexedValue>& detrended,
                                      int q, bool center = true);

// Least-squares polynomial fit of the series against t = 1..T. Returns
// coefficients in increasing power order: coeffs[k] multiplies t^k, so for
// degree 1 the slope is coeffs[1] and the intercept coeffs[0]. Requires
// T >= degree+1.
std::vector<double> refit_trend(const TimeSeries& deseasonalized, int degree);

// Three-step decomposition: moving average of size q, per-phase seasonal
// averages of the detrended series (centered), then a least-squares line
// refit on the deseasonalized series over the full range. degree must be 0
// or 1 (the model trend is linear). seasonal_on_raw switches the seasonal
// step to averaging the raw observations without centering.
DecompositionModel classical_decompose(const TimeSeries& y, int q,
                                       int degree = 1,
                                       bool seasonal_on_raw = false);

} // namespace tsbreak
