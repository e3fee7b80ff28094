#include "core/series.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace hydrocast {

namespace {

int month_index(int year, int month) { return year * 12 + (month - 1); }

void validate_point(const MonthlyPoint& p) {
    if (p.month < 1 || p.month > 12) {
        throw ValidationError("month out of range [1,12]: " + std::to_string(p.month) +
                              " (year " + std::to_string(p.year) + ")");
    }
    if (!(p.value >= 0.0) || !std::isfinite(p.value)) {
        throw ValidationError("negative or non-finite MWh value at " + std::to_string(p.year) +
                              "-" + std::to_string(p.month));
    }
}

std::string month_name(int m) {
    static const char* names[] = {"January", "February", "March", "April", "May", "June",
                                  "July", "August", "September", "October", "November", "December"};
    return names[m - 1];
}

} // namespace

GenerationSeries::GenerationSeries(std::vector<MonthlyPoint> points) : points_(std::move(points)) {
    if (points_.empty()) throw ValidationError("generation series must contain at least one point");
    for (const auto& p : points_) validate_point(p);
    std::sort(points_.begin(), points_.end(), [](const MonthlyPoint& a, const MonthlyPoint& b) {
        return month_index(a.year, a.month) < month_index(b.year, b.month);
    });
    for (std::size_t i = 1; i < points_.size(); ++i) {
        int prev = month_index(points_[i - 1].year, points_[i - 1].month);
        int cur = month_index(points_[i].year, points_[i].month);
        if (cur == prev) {
            throw ValidationError("duplicate month " + std::to_string(points_[i].year) + "-" +
                                  std::to_string(points_[i].month));
        }
        if (cur != prev + 1) {
            throw ValidationError("gap in series between " + std::to_string(points_[i - 1].year) +
                                  "-" + std::to_string(points_[i - 1].month) + " and " +
                                  std::to_string(points_[i].year) + "-" +
                                  std::to_string(points_[i].month));
        }
    }
}

GenerationSeries GenerationSeries::tail(std::size_t months) const {
    if (months == 0 || months > points_.size()) {
        throw ValidationError("tail of " + std::to_string(months) + " months from a series of " +
                              std::to_string(points_.size()));
    }
    return GenerationSeries(std::vector<MonthlyPoint>(points_.end() - static_cast<long>(months),
                                                      points_.end()));
}

MinMaxScaler::MinMaxScaler(double lo, double hi) : lo_(lo), hi_(hi) {
    if (!(hi > lo)) {
        throw ValidationError("scaler bounds must satisfy hi > lo, got [" + std::to_string(lo) +
                              ", " + std::to_string(hi) + "]");
    }
}

double capacity_factor(double annual_production_mwh, double installed_mw) {
    if (!(installed_mw > 0.0)) {
        throw ValidationError("installed capacity must be positive, got " +
                              std::to_string(installed_mw));
    }
    if (annual_production_mwh < 0.0) {
        throw ValidationError("annual production must be non-negative");
    }
    return annual_production_mwh / (installed_mw * kHoursPerYear);
}

double capacity_for_year(const std::vector<CapacityRecord>& capacities, int year) {
    for (const auto& rec : capacities) {
        if (rec.year == year) return rec.installed_mw;
    }
    throw ValidationError("no installed-capacity record for year " + std::to_string(year));
}

NormalizedSeries normalize_generation(const GenerationSeries& gen,
                                      const std::vector<CapacityRecord>& capacities) {
    for (const auto& rec : capacities) {
        if (!(rec.installed_mw > 0.0)) {
            throw ValidationError("installed capacity must be positive for year " +
                                  std::to_string(rec.year));
        }
    }
    NormalizedSeries out;
    out.points.reserve(gen.size());
    for (const auto& p : gen.points()) {
        double ip = capacity_for_year(capacities, p.year);
        out.points.push_back({p.year, p.month, p.value / ip});
    }
    return out;
}

double denormalize(double estimated_hours, double installed_mw) {
    if (!(installed_mw > 0.0)) {
        throw ValidationError("installed capacity must be positive, got " +
                              std::to_string(installed_mw));
    }
    if (estimated_hours < 0.0) {
        throw ValidationError("cannot denormalize negative hours; clamp the forecast first");
    }
    return estimated_hours * installed_mw;
}

std::vector<std::string> hours_ceiling_warnings(const NormalizedSeries& series) {
    std::vector<std::string> warnings;
    for (const auto& p : series.points) {
        if (p.hours > kMaxMonthlyHours) {
            std::ostringstream os;
            os << "hours above physical ceiling (" << p.hours << " > " << kMaxMonthlyHours
               << " h) at " << p.year << "-" << p.month;
            warnings.push_back(os.str());
        }
    }
    return warnings;
}

std::array<MonthlyStats, 12> monthly_stats(const GenerationSeries& series) {
    std::array<MonthlyStats, 12> rows{};
    std::array<double, 12> sum{};
    std::array<int, 12> count{};
    for (const auto& p : series.points()) {
        auto& row = rows[p.month - 1];
        if (!row.present) {
            row.present = true;
            row.min = row.max = p.value;
        } else {
            row.min = std::min(row.min, p.value);
            row.max = std::max(row.max, p.value);
        }
        sum[p.month - 1] += p.value;
        count[p.month - 1] += 1;
    }
    for (int m = 0; m < 12; ++m) {
        if (rows[m].present) rows[m].mean = sum[m] / count[m];
    }
    return rows;
}

SeasonalProfile seasonal_profile(const NormalizedSeries& series) {
    std::array<double, 12> sum{};
    std::array<int, 12> count{};
    for (const auto& p : series.points) {
        sum[p.month - 1] += p.hours;
        count[p.month - 1] += 1;
    }
    std::array<double, 12> means{};
    for (int m = 0; m < 12; ++m) {
        if (count[m] == 0) throw ValidationError("seasonal profile needs every month; missing " + month_name(m + 1));
        means[m] = sum[m] / count[m];
    }
    double lo = *std::min_element(means.begin(), means.end());
    double hi = *std::max_element(means.begin(), means.end());
    SeasonalProfile profile;
    if (hi == lo) {
        profile.coefficients.fill(0.5); // degenerate all-equal case
        return profile;
    }
    for (int m = 0; m < 12; ++m) profile.coefficients[m] = (means[m] - lo) / (hi - lo);
    return profile;
}

MinMaxScaler fit_scaler(const std::vector<double>& values) {
    if (values.size() < 2) throw ValidationError("scaler fit needs at least two values");
    auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
    if (*lo_it == *hi_it) throw ValidationError("scaler fit needs at least two distinct values");
    return MinMaxScaler(*lo_it, *hi_it);
}

std::vector<WindowSample> make_windows(const std::vector<double>& values, std::size_t window) {
    if (window < 1) throw ValidationError("window length must be >= 1");
    if (values.size() < window + 1) {
        throw ValidationError("series of " + std::to_string(values.size()) +
                              " values too short for window " + std::to_string(window) +
                              "; need at least " + std::to_string(window + 1));
    }
    std::vector<WindowSample> samples;
    samples.reserve(values.size() - window);
    for (std::size_t k = 0; k + window < values.size(); ++k) {
        WindowSample s;
        s.inputs.assign(values.begin() + static_cast<long>(k),
                        values.begin() + static_cast<long>(k + window));
        s.target = values[k + window];
        samples.push_back(std::move(s));
    }
    return samples;
}

// --- CSV ------------------------------------------------------------------

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.push_back("");
    return fields;
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_real(const std::string& path, int line_no, const std::string& field) {
    std::size_t pos = 0;
    double v;
    try {
        v = std::stod(field, &pos);
    } catch (const std::exception&) {
        throw ValidationError(path + ":" + std::to_string(line_no) + ": bad numeric field '" +
                              field + "'");
    }
    if (pos != field.size()) {
        throw ValidationError(path + ":" + std::to_string(line_no) + ": bad numeric field '" +
                              field + "'");
    }
    return v;
}

int parse_int(const std::string& path, int line_no, const std::string& field) {
    std::size_t pos = 0;
    int v;
    try {
        v = std::stoi(field, &pos);
    } catch (const std::exception&) {
        throw ValidationError(path + ":" + std::to_string(line_no) + ": bad integer field '" +
                              field + "'");
    }
    if (pos != field.size()) {
        throw ValidationError(path + ":" + std::to_string(line_no) + ": bad integer field '" +
                              field + "'");
    }
    return v;
}

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    return in;
}

} // namespace

GenerationSeries load_generation_csv(const std::string& path) {
    auto in = open_or_throw(path);
    std::string line;
    int line_no = 0;
    std::vector<MonthlyPoint> points;
    while (std::getline(in, line)) {
        ++line_no;
        line = trim(line);
        if (line.empty()) continue;
        if (line_no == 1) {
            if (trim(line) != "year,month,mwh") {
                throw ValidationError(path + ":1: expected header 'year,month,mwh', got '" + line +
                                      "'");
            }
            continue;
        }
        auto fields = split_csv_line(line);
        if (fields.size() != 3) {
            throw ValidationError(path + ":" + std::to_string(line_no) +
                                  ": expected 3 fields, got " + std::to_string(fields.size()));
        }
        MonthlyPoint p;
        p.year = parse_int(path, line_no, trim(fields[0]));
        p.month = parse_int(path, line_no, trim(fields[1]));
        p.value = parse_real(path, line_no, trim(fields[2]));
        points.push_back(p);
    }
    if (points.empty()) throw ValidationError(path + ": no data rows");
    return GenerationSeries(std::move(points));
}

std::vector<CapacityRecord> load_capacity_csv(const std::string& path) {
    auto in = open_or_throw(path);
    std::string line;
    int line_no = 0;
    std::vector<CapacityRecord> records;
    while (std::getline(in, line)) {
        ++line_no;
        line = trim(line);
        if (line.empty()) continue;
        if (line_no == 1) {
            if (trim(line) != "year,installed_mw") {
                throw ValidationError(path + ":1: expected header 'year,installed_mw', got '" +
                                      line + "'");
            }
            continue;
        }
        auto fields = split_csv_line(line);
        if (fields.size() != 2) {
            throw ValidationError(path + ":" + std::to_string(line_no) +
                                  ": expected 2 fields, got " + std::to_string(fields.size()));
        }
        CapacityRecord rec;
        rec.year = parse_int(path, line_no, trim(fields[0]));
        rec.installed_mw = parse_real(path, line_no, trim(fields[1]));
        if (!(rec.installed_mw > 0.0)) {
            throw ValidationError(path + ":" + std::to_string(line_no) +
                                  ": installed_mw must be positive, got '" + trim(fields[1]) + "'");
        }
        for (const auto& prev : records) {
            if (prev.year == rec.year) {
                throw ValidationError(path + ":" + std::to_string(line_no) +
                                      ": duplicate year " + std::to_string(rec.year));
            }
        }
        records.push_back(rec);
    }
    if (records.empty()) throw ValidationError(path + ": no data rows");
    std::sort(records.begin(), records.end(),
              [](const CapacityRecord& a, const CapacityRecord& b) { return a.year < b.year; });
    return records;
}

void save_generation_csv(const GenerationSeries& series, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << "year,month,mwh\n";
    out.precision(std::numeric_limits<double>::max_digits10);
    for (const auto& p : series.points()) out << p.year << ',' << p.month << ',' << p.value << '\n';
}

void save_capacity_csv(const std::vector<CapacityRecord>& capacities, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << "year,installed_mw\n";
    out.precision(std::numeric_limits<double>::max_digits10);
    for (const auto& rec : capacities) out << rec.year << ',' << rec.installed_mw << '\n';
}

} // namespace hydrocast
