#pragma once

#include <cstddef>
#include <vector>

#include "core/errors.hpp"

namespace hydrocast {

// Table-style error row: the monthly-average columns are the annual values
// spread over 12 months.
struct ErrorReport {
    double rmse_annual = 0.0;          // MWh
    double rmse_monthly_avg = 0.0;     // rmse_annual / 12
    double mape_annual = 0.0;          // fraction
    double mape_monthly_avg_pct = 0.0; // mape_annual * 100 / 12
};

struct Fold {
    // Half-open [begin, end) month index ranges, 0-based.
    std::vector<std::pair<std::size_t, std::size_t>> train_ranges;
    std::size_t test_begin = 0; // [test_begin, test_begin + 12)
};

struct FoldPlan {
    std::vector<Fold> folds;
};

double rmse(const std::vector<double>& forecast, const std::vector<double>& actual);

// Mean absolute percentage error as a fraction. Any zero actual is rejected.
double mape(const std::vector<double>& forecast, const std::vector<double>& actual);

ErrorReport aggregate_report(double rmse_annual, double mape_annual);

// Forward-chaining plan: k test blocks of 12 consecutive months at the end of
// the series; each fold trains on everything strictly before its test block.
// `rotating` switches to classic rotating folds where training data may
// follow the test block.
FoldPlan plan_folds(std::size_t series_length_months, int k, std::size_t min_train_months,
                    bool rotating = false);

} // namespace hydrocast
