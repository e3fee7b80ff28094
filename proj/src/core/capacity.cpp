#include "core/capacity.hpp"

#include <algorithm>
#include <cmath>

namespace hydrocast {

LinearFit fit_linear(const std::vector<CapacityRecord>& records, int lookback) {
    if (lookback < 1) throw ValidationError("capacity fit lookback must be >= 1 year");
    std::vector<CapacityRecord> sorted = records;
    std::sort(sorted.begin(), sorted.end(),
              [](const CapacityRecord& a, const CapacityRecord& b) { return a.year < b.year; });
    for (std::size_t i = 1; i < sorted.size(); ++i) {
        if (sorted[i].year == sorted[i - 1].year) {
            throw ValidationError("duplicate capacity year " + std::to_string(sorted[i].year));
        }
    }
    if (!sorted.empty()) {
        int cutoff = sorted.back().year - lookback + 1;
        std::erase_if(sorted, [cutoff](const CapacityRecord& r) { return r.year < cutoff; });
    }
    if (sorted.size() < 2) {
        throw ValidationError("capacity fit needs at least 2 records within the lookback, got " +
                              std::to_string(sorted.size()));
    }

    LinearFit fit;
    fit.base_year = sorted.front().year;
    const double n = static_cast<double>(sorted.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& r : sorted) {
        double x = r.year - fit.base_year;
        sx += x;
        sy += r.installed_mw;
        sxx += x * x;
        sxy += x * r.installed_mw;
    }
    double denom = sxx - sx * sx / n;
    fit.slope = (sxy - sx * sy / n) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;

    double ss_res = 0, ss_tot = 0;
    double mean_y = sy / n;
    for (const auto& r : sorted) {
        double x = r.year - fit.base_year;
        double resid = r.installed_mw - (fit.intercept + fit.slope * x);
        ss_res += resid * resid;
        ss_tot += (r.installed_mw - mean_y) * (r.installed_mw - mean_y);
    }
    if (ss_tot == 0.0) {
        fit.r2 = (ss_res == 0.0) ? 1.0 : 0.0; // constant targets
    } else {
        fit.r2 = 1.0 - ss_res / ss_tot;
    }
    return fit;
}

double predict_capacity(const LinearFit& fit, int year) {
    if (!std::isfinite(fit.slope) || !std::isfinite(fit.intercept)) {
        throw ValidationError("capacity fit has non-finite coefficients");
    }
    double mw = fit.intercept + fit.slope * (year - fit.base_year);
    if (mw < 0.0) {
        throw ValidationError("extrapolated capacity for " + std::to_string(year) +
                              " is negative (" + std::to_string(mw) + " MW)");
    }
    return mw;
}

} // namespace hydrocast
