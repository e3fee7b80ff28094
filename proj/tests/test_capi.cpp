#include <doctest.h>

#include <cstdio>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include <hydrocast/hydrocast.h>

namespace {

struct Paths {
    std::string gen = "/tmp/hydrocast_capi_gen.csv";
    std::string cap = "/tmp/hydrocast_capi_cap.csv";
    ~Paths() {
        std::remove(gen.c_str());
        std::remove(cap.c_str());
    }
};

} // namespace

TEST_CASE("config keys and file loading") {
    hc_config* cfg = hc_config_new();
    REQUIRE(cfg);
    CHECK(hc_config_set(cfg, "epochs", "50") == HC_OK);
    CHECK(hc_config_set(cfg, "hidden_widths", "4,8") == HC_OK);
    CHECK(hc_config_set(cfg, "nonsense", "1") == HC_ERR_VALIDATION);
    CHECK(std::string(hc_last_error()).find("nonsense") != std::string::npos);
    CHECK(hc_config_set(cfg, "epochs", "many") == HC_ERR_VALIDATION);

    const std::string path = "/tmp/hydrocast_capi_cfg.txt";
    std::ofstream(path) << "# comment\nepochs = 25\nseed = 99\nseasonal_channel = 0\n";
    CHECK(hc_config_load(cfg, path.c_str()) == HC_OK);
    CHECK(hc_config_seed(cfg) == 99);

    std::vector<char> buf(hc_config_dump(cfg, nullptr, 0) + 1);
    hc_config_dump(cfg, buf.data(), buf.size());
    std::string dump(buf.data());
    CHECK(dump.find("epochs = 25") != std::string::npos);
    CHECK(dump.find("seasonal_channel = 0") != std::string::npos);

    std::ofstream(path) << "epochs 25\n";
    CHECK(hc_config_load(cfg, path.c_str()) == HC_ERR_VALIDATION);
    CHECK(std::string(hc_last_error()).find(":1") != std::string::npos);
    std::remove(path.c_str());
    hc_config_free(cfg);
}

TEST_CASE("synth -> validate -> stats -> forecast -> matrix through the C API") {
    Paths paths;
    REQUIRE(hc_synth(8, 1234, 0.02, paths.gen.c_str(), paths.cap.c_str()) == HC_OK);

    char warn[4096];
    CHECK(hc_validate(paths.gen.c_str(), paths.cap.c_str(), warn, sizeof(warn)) == HC_OK);
    CHECK(warn[0] == '\0');

    hc_series* series = nullptr;
    hc_capacity* caps = nullptr;
    REQUIRE(hc_series_load(paths.gen.c_str(), &series) == HC_OK);
    REQUIRE(hc_capacity_load(paths.cap.c_str(), &caps) == HC_OK);
    CHECK(hc_series_length(series) == 96);
    CHECK(hc_capacity_length(caps) == 8);

    double stats[36];
    unsigned char present[12];
    REQUIRE(hc_stats(series, stats, present) == HC_OK);
    for (int m = 0; m < 12; ++m) CHECK(present[m] == 1);
    // May mean above October mean by construction
    CHECK(stats[4 * 3 + 2] > stats[9 * 3 + 2]);

    hc_config* cfg = hc_config_new();
    hc_config_set(cfg, "epochs", "40");
    hc_config_set(cfg, "hidden_dim", "8");
    hc_config_set(cfg, "seed", "5");

    hc_forecast* fc = nullptr;
    REQUIRE(hc_forecast_run(series, caps, cfg, nullptr, 0.0, &fc) == HC_OK);
    int year, month;
    double mwh, hours, cap_mw;
    REQUIRE(hc_forecast_point(fc, 0, &year, &month, &mwh, &hours, &cap_mw) == HC_OK);
    CHECK(year == 2015);
    CHECK(month == 1);
    CHECK(mwh == doctest::Approx(hours * cap_mw).epsilon(1e-12));
    CHECK(hc_forecast_point(fc, 12, nullptr, nullptr, nullptr, nullptr, nullptr) ==
          HC_ERR_INVALID);
    CHECK(hc_forecast_loss_curve(fc, nullptr, 0) == 40);

    double r2;
    REQUIRE(hc_forecast_capacity_fit(fc, nullptr, nullptr, &r2, nullptr) == HC_OK);
    CHECK(r2 == doctest::Approx(1.0).epsilon(1e-9));

    // checkpoint round trip through the API, reused for a second forecast
    const char* ckpt = "/tmp/hydrocast_capi_ckpt.txt";
    REQUIRE(hc_model_save(hc_forecast_model(fc), ckpt) == HC_OK);
    hc_model* loaded = nullptr;
    REQUIRE(hc_model_load(ckpt, &loaded) == HC_OK);
    int input_dim, hidden_dim, layers;
    REQUIRE(hc_model_dims(loaded, &input_dim, &hidden_dim, &layers) == HC_OK);
    CHECK(input_dim == 2);
    CHECK(hidden_dim == 8);
    CHECK(layers == 1);

    hc_forecast* fc2 = nullptr;
    REQUIRE(hc_forecast_run(series, caps, cfg, loaded, 0.0, &fc2) == HC_OK);
    double mwh2;
    REQUIRE(hc_forecast_point(fc2, 0, nullptr, nullptr, &mwh2, nullptr, nullptr) == HC_OK);
    CHECK(mwh2 == mwh); // bit-exact with the saved model
    std::remove(ckpt);

    hc_config_set(cfg, "window_months", "72,96");
    hc_config_set(cfg, "hidden_widths", "8");
    hc_config_set(cfg, "epochs", "20");
    hc_matrix* matrix = nullptr;
    REQUIRE(hc_matrix_run(series, caps, cfg, &matrix) == HC_OK);
    REQUIRE(hc_matrix_row_count(matrix) == 2);
    int model, hidden, months, train_months, skipped;
    double rmse_a, rmse_m, mape_a, mape_m;
    REQUIRE(hc_matrix_row(matrix, 0, &model, &hidden, &months, &train_months, &skipped, &rmse_a,
                          &rmse_m, &mape_a, &mape_m) == HC_OK);
    CHECK(model == 1);
    CHECK(hidden == 8);
    CHECK(months == 72);
    CHECK(train_months == 60);
    CHECK(skipped == 0);
    CHECK(rmse_m == doctest::Approx(rmse_a / 12.0));
    CHECK(hc_matrix_row_model(matrix, 0) != nullptr);

    double fvals[12], avals[12];
    REQUIRE(hc_matrix_row_series(matrix, 0, fvals, avals) == HC_OK);
    for (int i = 0; i < 12; ++i) CHECK(avals[i] > 0.0);

    const char* report = "/tmp/hydrocast_capi_report.csv";
    REQUIRE(hc_matrix_write_csv(matrix, report) == HC_OK);
    std::ifstream in(report);
    std::string header;
    std::getline(in, header);
    CHECK(header == "model,hidden,months,train_months,test_months,rmse_annual,rmse_monthly,"
                    "mape_annual,mape_monthly_pct");
    std::remove(report);

    hc_matrix_free(matrix);
    hc_forecast_free(fc2);
    hc_model_free(loaded);
    hc_forecast_free(fc);
    hc_config_free(cfg);
    hc_capacity_free(caps);
    hc_series_free(series);
}

TEST_CASE("error codes distinguish I/O from validation") {
    hc_series* s = nullptr;
    CHECK(hc_series_load("/nonexistent/gen.csv", &s) == HC_ERR_IO);
    CHECK(std::strlen(hc_last_error()) > 0);

    const std::string bad = "/tmp/hydrocast_capi_bad.csv";
    std::ofstream(bad) << "year,month,mwh\n2010,1,100\n2010,3,100\n";
    CHECK(hc_series_load(bad.c_str(), &s) == HC_ERR_VALIDATION);
    CHECK(std::string(hc_last_error()).find("gap") != std::string::npos);
    std::remove(bad.c_str());

    CHECK(hc_series_load(nullptr, nullptr) == HC_ERR_INVALID);
    CHECK(hc_validate("/nonexistent/a.csv", "/nonexistent/b.csv", nullptr, 0) == HC_ERR_IO);
}
