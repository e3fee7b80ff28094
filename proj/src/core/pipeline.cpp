#include "core/pipeline.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

namespace hydrocast {

namespace {

void advance_month(int& year, int& month) {
    if (++month > 12) {
        month = 1;
        ++year;
    }
}

// Seasonal hours shape for the synthetic generator, January..December.
// Peak in May, trough in October.
constexpr double kSynthShape[12] = {0.55, 0.65, 0.80, 0.92, 1.00, 0.85,
                                    0.62, 0.45, 0.35, 0.30, 0.38, 0.48};

// (batch x input_dim) slice for timestep `step`: sample k reads position k+step.
Eigen::MatrixXd batch_slice(const std::vector<double>& scaled, const std::vector<int>& months,
                            const SeasonalProfile& profile, bool seasonal, std::size_t step,
                            std::size_t batch) {
    const int dim = seasonal ? 2 : 1;
    Eigen::MatrixXd x(batch, dim);
    for (std::size_t k = 0; k < batch; ++k) {
        std::size_t pos = k + step;
        x(static_cast<Eigen::Index>(k), 0) = scaled[pos];
        if (seasonal) x(static_cast<Eigen::Index>(k), 1) = profile.for_month(months[pos]);
    }
    return x;
}

} // namespace

ForecastResult run_forecast(const GenerationSeries& gen,
                            const std::vector<CapacityRecord>& capacities,
                            const ExperimentConfig& config,
                            std::optional<double> capacity_override, const LstmParams* pretrained) {
    const std::size_t window = static_cast<std::size_t>(config.training.window);
    constexpr int horizon = 12;

    ForecastResult result;

    NormalizedSeries normalized = normalize_generation(gen, capacities);
    result.warnings = hours_ceiling_warnings(normalized);

    std::vector<double> hours;
    std::vector<int> months;
    hours.reserve(normalized.points.size());
    for (const auto& p : normalized.points) {
        hours.push_back(p.hours);
        months.push_back(p.month);
    }
    if (hours.size() < window + 1) {
        throw ValidationError("series of " + std::to_string(hours.size()) +
                              " months too short for window " + std::to_string(window));
    }

    MinMaxScaler scaler = fit_scaler(hours);
    SeasonalProfile profile = seasonal_profile(normalized);

    std::vector<double> scaled;
    scaled.reserve(hours.size());
    for (double h : hours) scaled.push_back(scaler.apply(h));

    const int input_dim = config.seasonal_channel ? 2 : 1;
    if (pretrained) {
        if (pretrained->input_dim != input_dim) {
            throw ValidationError("checkpoint input_dim " + std::to_string(pretrained->input_dim) +
                                  " does not match configured channel mode (" +
                                  std::to_string(input_dim) + ")");
        }
        result.params = *pretrained;
    } else {
        const std::size_t n_samples = scaled.size() - window;
        TrainingBatch batch;
        batch.targets.resize(static_cast<Eigen::Index>(n_samples));
        for (std::size_t k = 0; k < n_samples; ++k) {
            batch.targets(static_cast<Eigen::Index>(k)) = scaled[k + window];
        }
        for (std::size_t t = 0; t < window; ++t) {
            batch.inputs.push_back(
                batch_slice(scaled, months, profile, config.seasonal_channel, t, n_samples));
        }
        TrainResult trained = train(config.training, input_dim, batch);
        result.params = std::move(trained.params);
        result.loss_curve = std::move(trained.loss_curve);
    }

    // Recursive 12-step forecast; the seasonal channel for future months is
    // known from the calendar.
    std::vector<double> history(scaled.end() - static_cast<long>(window), scaled.end());
    std::vector<std::vector<double>> aux;
    int y = normalized.points.back().year;
    int m = normalized.points.back().month;
    std::vector<int> future_months;
    for (int s = 0; s < horizon; ++s) {
        advance_month(y, m);
        future_months.push_back(m);
    }
    if (config.seasonal_channel) {
        for (std::size_t t = scaled.size() - window; t < scaled.size(); ++t) {
            aux.push_back({profile.for_month(months[t])});
        }
        for (int fm : future_months) aux.push_back({profile.for_month(fm)});
    }

    std::vector<double> predicted_scaled = predict_horizon(result.params, history, aux, horizon);

    LinearFit fit{};
    if (!capacity_override) {
        fit = fit_linear(capacities, config.capacity_lookback);
    }
    result.capacity_fit = fit;

    y = normalized.points.back().year;
    m = normalized.points.back().month;
    for (int s = 0; s < horizon; ++s) {
        advance_month(y, m);
        ForecastPoint fp;
        fp.year = y;
        fp.month = m;
        double h = scaler.invert(predicted_scaled[static_cast<std::size_t>(s)]);
        fp.predicted_hours = std::max(0.0, h);
        fp.capacity_mw = capacity_override ? *capacity_override : predict_capacity(fit, y);
        fp.predicted_mwh = denormalize(fp.predicted_hours, fp.capacity_mw);
        result.points.push_back(fp);
    }
    return result;
}

std::vector<MatrixRow> run_table2_matrix(const GenerationSeries& gen,
                                         const std::vector<CapacityRecord>& capacities,
                                         const ExperimentConfig& config) {
    std::vector<MatrixRow> rows;
    int row_index = 0;
    for (std::size_t wi = 0; wi < config.window_months.size(); ++wi) {
        const int window_months = config.window_months[wi];
        for (int hidden : config.hidden_widths) {
            MatrixRow row;
            row.model = static_cast<int>(wi) + 1;
            row.hidden = hidden;
            row.months = window_months;
            row.train_months = window_months - 12;
            row.seasonal_channel = config.seasonal_channel;

            if (static_cast<std::size_t>(window_months) > gen.size() || window_months < 13) {
                row.skipped = true;
                rows.push_back(std::move(row));
                ++row_index;
                continue;
            }

            GenerationSeries sub = gen.tail(static_cast<std::size_t>(window_months));
            std::vector<MonthlyPoint> train_pts(sub.points().begin(),
                                                sub.points().end() - 12);
            std::vector<MonthlyPoint> test_pts(sub.points().end() - 12, sub.points().end());
            GenerationSeries train_series(std::move(train_pts));

            // Only capacity history available before the test block feeds the fit.
            std::vector<CapacityRecord> train_caps;
            int first_test_year = test_pts.front().year;
            for (const auto& c : capacities) {
                if (c.year < first_test_year) train_caps.push_back(c);
            }

            ExperimentConfig row_config = config;
            row_config.training.hidden_dim = hidden;
            row_config.training.seed = config.training.seed + static_cast<std::uint64_t>(row_index);

            ForecastResult fc = run_forecast(train_series, train_caps, row_config);

            row.forecast_mwh.reserve(12);
            row.actual_mwh.reserve(12);
            for (int i = 0; i < 12; ++i) {
                row.forecast_mwh.push_back(fc.points[static_cast<std::size_t>(i)].predicted_mwh);
                row.actual_mwh.push_back(test_pts[static_cast<std::size_t>(i)].value);
            }
            double rmse_m = rmse(row.forecast_mwh, row.actual_mwh);
            double mape_m = mape(row.forecast_mwh, row.actual_mwh);
            row.report = aggregate_report(rmse_m * 12.0, mape_m * 12.0);
            row.loss_curve = std::move(fc.loss_curve);
            row.params = std::move(fc.params);
            rows.push_back(std::move(row));
            ++row_index;
        }
    }
    return rows;
}

SynthDataset synth_dataset(int years, std::uint64_t seed, double noise_level) {
    if (years < 2) throw ValidationError("synthetic dataset needs at least 2 years");
    constexpr int start_year = 2007;
    constexpr double base_capacity_mw = 1000.0;
    constexpr double capacity_growth_mw = 50.0;
    constexpr double base_hours = 400.0;

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, 1.0);

    std::vector<CapacityRecord> caps;
    std::vector<MonthlyPoint> points;
    for (int yi = 0; yi < years; ++yi) {
        int year = start_year + yi;
        double cap = base_capacity_mw + capacity_growth_mw * yi;
        caps.push_back({year, cap});
        for (int month = 1; month <= 12; ++month) {
            double h = base_hours * kSynthShape[month - 1];
            if (noise_level > 0.0) h *= 1.0 + noise_level * noise(rng);
            h = std::clamp(h, 0.0, kMaxMonthlyHours);
            points.push_back({year, month, h * cap});
        }
    }
    return SynthDataset(GenerationSeries(std::move(points)), std::move(caps));
}

std::string matrix_report_csv(const std::vector<MatrixRow>& rows) {
    std::ostringstream os;
    os << "model,hidden,months,train_months,test_months,rmse_annual,rmse_monthly,mape_annual,"
          "mape_monthly_pct\n";
    os.precision(10);
    for (const auto& r : rows) {
        os << r.model << ',' << r.hidden << ',' << r.months << ',' << r.train_months << ','
           << r.test_months << ',';
        if (r.skipped) {
            os << "skipped,skipped,skipped,skipped\n";
        } else {
            os << r.report.rmse_annual << ',' << r.report.rmse_monthly_avg << ','
               << r.report.mape_annual << ',' << r.report.mape_monthly_avg_pct << '\n';
        }
    }
    return os.str();
}

std::uint64_t fnv1a_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path + " for hashing");
    std::uint64_t hash = 14695981039346656037ull;
    char buf[4096];
    while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
        for (std::streamsize i = 0; i < in.gcount(); ++i) {
            hash ^= static_cast<unsigned char>(buf[i]);
            hash *= 1099511628211ull;
        }
        if (!in) break;
    }
    return hash;
}

} // namespace hydrocast
