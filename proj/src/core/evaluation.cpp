#include "core/evaluation.hpp"

#include <cmath>
#include <string>

namespace hydrocast {

double rmse(const std::vector<double>& forecast, const std::vector<double>& actual) {
    if (forecast.empty() || forecast.size() != actual.size()) {
        throw ValidationError("rmse needs equal non-empty vectors, got " +
                              std::to_string(forecast.size()) + " and " +
                              std::to_string(actual.size()));
    }
    double sq = 0.0;
    for (std::size_t i = 0; i < forecast.size(); ++i) {
        double d = forecast[i] - actual[i];
        sq += d * d;
    }
    return std::sqrt(sq / static_cast<double>(forecast.size()));
}

double mape(const std::vector<double>& forecast, const std::vector<double>& actual) {
    if (forecast.empty() || forecast.size() != actual.size()) {
        throw ValidationError("mape needs equal non-empty vectors, got " +
                              std::to_string(forecast.size()) + " and " +
                              std::to_string(actual.size()));
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < forecast.size(); ++i) {
        if (actual[i] == 0.0) {
            throw ValidationError("mape undefined: actual value at index " + std::to_string(i) +
                                  " is zero");
        }
        sum += std::abs(actual[i] - forecast[i]) / std::abs(actual[i]);
    }
    return sum / static_cast<double>(forecast.size());
}

ErrorReport aggregate_report(double rmse_annual, double mape_annual) {
    if (!(rmse_annual >= 0.0) || !(mape_annual >= 0.0) || !std::isfinite(rmse_annual) ||
        !std::isfinite(mape_annual)) {
        throw ValidationError("aggregate_report needs finite non-negative inputs");
    }
    ErrorReport r;
    r.rmse_annual = rmse_annual;
    r.rmse_monthly_avg = rmse_annual / 12.0;
    r.mape_annual = mape_annual;
    r.mape_monthly_avg_pct = mape_annual * 100.0 / 12.0;
    return r;
}

FoldPlan plan_folds(std::size_t series_length_months, int k, std::size_t min_train_months,
                    bool rotating) {
    if (k < 1) throw ValidationError("fold count must be >= 1");
    const std::size_t test_total = static_cast<std::size_t>(k) * 12;
    if (series_length_months < test_total + min_train_months) {
        throw ValidationError("series of " + std::to_string(series_length_months) +
                              " months too short for " + std::to_string(k) + " folds; need " +
                              std::to_string(test_total + min_train_months));
    }
    FoldPlan plan;
    const std::size_t first_test = series_length_months - test_total;
    for (int i = 0; i < k; ++i) {
        Fold f;
        f.test_begin = first_test + static_cast<std::size_t>(i) * 12;
        if (f.test_begin > 0) f.train_ranges.emplace_back(0, f.test_begin);
        if (rotating && f.test_begin + 12 < series_length_months) {
            f.train_ranges.emplace_back(f.test_begin + 12, series_length_months);
        }
        plan.folds.push_back(f);
    }
    return plan;
}

} // namespace hydrocast
