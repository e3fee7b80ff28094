#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "core/errors.hpp"

namespace hydrocast {

// Physical ceiling for monthly full-load hours: 31 days x 24 h.
inline constexpr double kMaxMonthlyHours = 744.0;
// Hours in a non-leap year, the Eq.-of-record capacity-factor denominator.
inline constexpr double kHoursPerYear = 365.0 * 24.0;

struct MonthlyPoint {
    int year = 0;
    int month = 0; // 1..12
    double value = 0.0; // MWh
};

// Contiguous monthly production series. Construction validates ordering:
// consecutive points differ by exactly one calendar month, no gaps, no
// duplicates. Input may arrive shuffled; it is sorted then validated.
class GenerationSeries {
public:
    explicit GenerationSeries(std::vector<MonthlyPoint> points);

    const std::vector<MonthlyPoint>& points() const { return points_; }
    std::size_t size() const { return points_.size(); }
    const MonthlyPoint& operator[](std::size_t i) const { return points_[i]; }

    // Suffix covering the final `months` points.
    GenerationSeries tail(std::size_t months) const;

private:
    std::vector<MonthlyPoint> points_;
};

struct CapacityRecord {
    int year = 0;
    double installed_mw = 0.0;
};

struct NormalizedPoint {
    int year = 0;
    int month = 0;
    double hours = 0.0; // per-MW production hours
};

struct NormalizedSeries {
    std::vector<NormalizedPoint> points;
};

// Month-indexed correction coefficients, min-max standardized to [0, 1].
struct SeasonalProfile {
    std::array<double, 12> coefficients{}; // index 0 = January

    double for_month(int month) const { return coefficients[month - 1]; }
};

class MinMaxScaler {
public:
    MinMaxScaler(double lo, double hi);

    double apply(double x) const { return (x - lo_) / (hi_ - lo_); }
    double invert(double y) const { return lo_ + y * (hi_ - lo_); }
    double lo() const { return lo_; }
    double hi() const { return hi_; }

private:
    double lo_;
    double hi_;
};

struct WindowSample {
    std::vector<double> inputs; // L scaled values
    double target = 0.0;        // scaled value at the next step
};

struct MonthlyStats {
    bool present = false; // months absent from the data stay empty
    double min = 0.0;
    double max = 0.0;
    double mean = 0.0;
};

// --- operations -----------------------------------------------------------

// annual_production / (installed * 8760). Values > 1 are returned as-is.
double capacity_factor(double annual_production_mwh, double installed_mw);

// Divides each month's MWh by the installed capacity of that point's year.
// Every year in `gen` must have a capacity record.
NormalizedSeries normalize_generation(const GenerationSeries& gen,
                                      const std::vector<CapacityRecord>& capacities);

// estimated_hours * installed. Inverse of the per-point normalization.
double denormalize(double estimated_hours, double installed_mw);

std::array<MonthlyStats, 12> monthly_stats(const GenerationSeries& series);

// Per-month means of the normalized hours, min-max standardized. All 12
// months must be represented. Degenerate all-equal means map to 0.5.
SeasonalProfile seasonal_profile(const NormalizedSeries& series);

MinMaxScaler fit_scaler(const std::vector<double>& values);

std::vector<WindowSample> make_windows(const std::vector<double>& values,
                                       std::size_t window);

// --- CSV ingestion --------------------------------------------------------
// generation file: header `year,month,mwh`, one row per month.
// capacity file:   header `year,installed_mw`, one row per year.
// Parse errors report file, line number, and offending field.

GenerationSeries load_generation_csv(const std::string& path);
std::vector<CapacityRecord> load_capacity_csv(const std::string& path);

void save_generation_csv(const GenerationSeries& series, const std::string& path);
void save_capacity_csv(const std::vector<CapacityRecord>& capacities, const std::string& path);

// Hours above the 744 h/month physical ceiling warrant a warning, not a
// rejection. Returns human-readable warnings, one per offending point.
std::vector<std::string> hours_ceiling_warnings(const NormalizedSeries& series);

double capacity_for_year(const std::vector<CapacityRecord>& capacities, int year);

} // namespace hydrocast
