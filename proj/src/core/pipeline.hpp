#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "core/capacity.hpp"
#include "core/evaluation.hpp"
#include "core/lstm.hpp"
#include "core/series.hpp"

namespace hydrocast {

struct ExperimentConfig {
    std::vector<int> window_months = {72, 120, 144};
    std::vector<int> hidden_widths = {100, 200, 400};
    TrainingConfig training;
    int capacity_lookback = 5;
    bool seasonal_channel = true; // month coefficient as a second input channel
};

struct ForecastPoint {
    int year = 0;
    int month = 0;
    double predicted_mwh = 0.0;
    double predicted_hours = 0.0;
    double capacity_mw = 0.0;
};

struct ForecastResult {
    std::vector<ForecastPoint> points; // 12 entries
    std::vector<double> loss_curve;
    LstmParams params;
    LinearFit capacity_fit;
    std::vector<std::string> warnings;
};

// Figure-10 pipeline: normalize by installed capacity, min-max scale, window,
// train, forecast 12 months recursively, invert the scaling, clamp at zero,
// and convert to MWh with the regression-extrapolated capacity.
// `capacity_override` bypasses the regression; `pretrained` skips training.
ForecastResult run_forecast(const GenerationSeries& gen,
                            const std::vector<CapacityRecord>& capacities,
                            const ExperimentConfig& config,
                            std::optional<double> capacity_override = std::nullopt,
                            const LstmParams* pretrained = nullptr);

struct MatrixRow {
    int model = 0;  // 1-based window index
    int hidden = 0;
    int months = 0;
    int train_months = 0;
    int test_months = 12;
    bool skipped = false;
    bool seasonal_channel = true;
    ErrorReport report;
    std::vector<double> forecast_mwh; // test-block forecast, for plot output
    std::vector<double> actual_mwh;
    std::vector<double> loss_curve;
    LstmParams params; // trained weights; empty for skipped rows
};

// One row per (window, width) pair; windows too long for the data are
// emitted as skip records so the matrix stays complete. Row i trains with
// seed = base seed + i.
std::vector<MatrixRow> run_table2_matrix(const GenerationSeries& gen,
                                         const std::vector<CapacityRecord>& capacities,
                                         const ExperimentConfig& config);

struct SynthDataset {
    GenerationSeries gen;
    std::vector<CapacityRecord> capacities;

    SynthDataset(GenerationSeries g, std::vector<CapacityRecord> c)
        : gen(std::move(g)), capacities(std::move(c)) {}
};

// Deterministic stand-in dataset: linearly growing capacity and a seasonal
// hours profile peaking in May with its trough in October, plus seeded
// multiplicative noise. Generation is hours x that year's capacity.
SynthDataset synth_dataset(int years, std::uint64_t seed, double noise_level);

std::string matrix_report_csv(const std::vector<MatrixRow>& rows);

std::uint64_t fnv1a_file(const std::string& path);

} // namespace hydrocast
