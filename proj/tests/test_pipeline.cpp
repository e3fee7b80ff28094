#include <doctest.h>

#include <algorithm>

#include "core/pipeline.hpp"

using namespace hydrocast;

namespace {

// Small, fast training settings for pipeline plumbing tests.
ExperimentConfig quick_config() {
    ExperimentConfig cfg;
    cfg.training.hidden_dim = 8;
    cfg.training.epochs = 120;
    cfg.training.seed = 7;
    return cfg;
}

} // namespace

TEST_CASE("synth_dataset shape") {
    auto data = synth_dataset(10, 3, 0.0);
    CHECK(data.gen.size() == 120);
    CHECK(data.capacities.size() == 10);

    SUBCASE("noiseless argmax May, argmin October") {
        auto rows = monthly_stats(data.gen);
        int argmax = 0, argmin = 0;
        for (int m = 1; m < 12; ++m) {
            if (rows[m].mean > rows[argmax].mean) argmax = m;
            if (rows[m].mean < rows[argmin].mean) argmin = m;
        }
        CHECK(argmax == 4);  // May
        CHECK(argmin == 9);  // October
    }
    SUBCASE("noiseless capacity regression is exact") {
        auto fit = fit_linear(data.capacities, 5);
        CHECK(fit.r2 == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("same seed, same dataset; different seed differs under noise") {
        auto a = synth_dataset(6, 42, 0.1);
        auto b = synth_dataset(6, 42, 0.1);
        auto c = synth_dataset(6, 43, 0.1);
        for (std::size_t i = 0; i < a.gen.size(); ++i)
            CHECK(a.gen[i].value == b.gen[i].value);
        bool any_diff = false;
        for (std::size_t i = 0; i < a.gen.size(); ++i)
            if (a.gen[i].value != c.gen[i].value) any_diff = true;
        CHECK(any_diff);
    }
    SUBCASE("too few years rejected") {
        CHECK_THROWS_AS(static_cast<void>(synth_dataset(1, 0, 0.0)), ValidationError);
    }
}

TEST_CASE("run_forecast on constant generation stays near the constant") {
    // constant hours, constant capacity; scaler needs two distinct values so
    // nudge one point by a hair
    std::vector<MonthlyPoint> pts;
    std::vector<CapacityRecord> caps;
    for (int y = 2010; y < 2016; ++y) {
        caps.push_back({y, 1000.0});
        for (int m = 1; m <= 12; ++m) {
            double v = 300000.0;
            if (y == 2010 && m == 1) v *= 1.001;
            pts.push_back({y, m, v});
        }
    }
    GenerationSeries gen(std::move(pts));
    auto cfg = quick_config();
    cfg.training.epochs = 200;
    auto result = run_forecast(gen, caps, cfg);
    REQUIRE(result.points.size() == 12);
    for (const auto& p : result.points) {
        CHECK(p.predicted_mwh == doctest::Approx(300000.0).epsilon(0.05));
        CHECK(p.predicted_mwh == doctest::Approx(p.predicted_hours * p.capacity_mw).epsilon(1e-12));
    }
    // forecast continues the calendar
    CHECK(result.points.front().year == 2016);
    CHECK(result.points.front().month == 1);
    CHECK(result.points.back().month == 12);
}

TEST_CASE("joint MWh+MW scaling doubles the forecast, intermediates identical") {
    auto data = synth_dataset(8, 5, 0.02);
    auto cfg = quick_config();
    auto base = run_forecast(data.gen, data.capacities, cfg);

    std::vector<MonthlyPoint> scaled_pts;
    for (const auto& p : data.gen.points()) scaled_pts.push_back({p.year, p.month, p.value * 2.0});
    std::vector<CapacityRecord> scaled_caps;
    for (const auto& c : data.capacities) scaled_caps.push_back({c.year, c.installed_mw * 2.0});
    auto doubled = run_forecast(GenerationSeries(std::move(scaled_pts)), scaled_caps, cfg);

    for (std::size_t i = 0; i < 12; ++i) {
        // normalized series unchanged => identical scaled-space path, identical hours
        CHECK(doubled.points[i].predicted_hours ==
              doctest::Approx(base.points[i].predicted_hours).epsilon(1e-12));
        CHECK(doubled.points[i].predicted_mwh ==
              doctest::Approx(base.points[i].predicted_mwh * 2.0).epsilon(1e-12));
    }
}

TEST_CASE("run_forecast determinism") {
    auto data = synth_dataset(7, 11, 0.05);
    auto cfg = quick_config();
    auto a = run_forecast(data.gen, data.capacities, cfg);
    auto b = run_forecast(data.gen, data.capacities, cfg);
    for (std::size_t i = 0; i < 12; ++i) {
        CHECK(a.points[i].predicted_mwh == b.points[i].predicted_mwh);
    }
    CHECK(a.loss_curve == b.loss_curve);
}

TEST_CASE("capacity override bypasses the regression") {
    auto data = synth_dataset(7, 11, 0.0);
    auto cfg = quick_config();
    auto result = run_forecast(data.gen, data.capacities, cfg, 5000.0);
    for (const auto& p : result.points) {
        CHECK(p.capacity_mw == 5000.0);
        CHECK(p.predicted_mwh == doctest::Approx(p.predicted_hours * 5000.0).epsilon(1e-12));
    }
}

TEST_CASE("matrix shape and skip accounting") {
    auto data = synth_dataset(10, 21, 0.05); // 120 months
    auto cfg = quick_config();
    cfg.training.epochs = 30;
    cfg.window_months = {72, 120, 144}; // 144 unavailable
    cfg.hidden_widths = {4, 8};

    auto rows = run_table2_matrix(data.gen, data.capacities, cfg);
    REQUIRE(rows.size() == 6);
    int skipped = 0;
    for (const auto& r : rows) {
        if (r.skipped) {
            ++skipped;
            CHECK(r.months == 144);
        } else {
            CHECK(r.train_months == r.months - 12);
            CHECK(r.test_months == 12);
            CHECK(r.forecast_mwh.size() == 12);
            CHECK(r.report.rmse_monthly_avg ==
                  doctest::Approx(r.report.rmse_annual / 12.0).epsilon(1e-12));
            CHECK(r.report.mape_monthly_avg_pct ==
                  doctest::Approx(r.report.mape_annual * 100.0 / 12.0).epsilon(1e-12));
        }
    }
    CHECK(skipped == 2);

    SUBCASE("one window, one width gives one row") {
        cfg.window_months = {72};
        cfg.hidden_widths = {4};
        CHECK(run_table2_matrix(data.gen, data.capacities, cfg).size() == 1);
    }
    SUBCASE("CSV mirrors the rows") {
        auto csv = matrix_report_csv(rows);
        CHECK(csv.find("model,hidden,months,train_months,test_months,rmse_annual,rmse_monthly,"
                       "mape_annual,mape_monthly_pct") == 0);
        CHECK(std::count(csv.begin(), csv.end(), '\n') == 7); // header + 6 rows
        CHECK(csv.find("skipped") != std::string::npos);
    }
}
