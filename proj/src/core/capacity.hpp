#pragma once

#include <vector>

#include "core/errors.hpp"
#include "core/series.hpp"

namespace hydrocast {

// Least-squares line over (year - base_year, installed_mw).
struct LinearFit {
    double slope = 0.0;     // MW per year
    double intercept = 0.0; // MW at base_year
    double r2 = 0.0;
    int base_year = 0;
};

// Fits the most recent `lookback` years of capacity records. Needs at least
// two distinct years inside the lookback. Zero-variance targets get r2 = 1
// when residuals vanish, else 0.
LinearFit fit_linear(const std::vector<CapacityRecord>& records, int lookback);

// intercept + slope * (year - base_year); a negative extrapolation is
// unphysical and rejected.
double predict_capacity(const LinearFit& fit, int year);

} // namespace hydrocast
