// Command-line front end. Talks to the library exclusively through the
// C API in hydrocast/hydrocast.h.

#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <hydrocast/hydrocast.h>

namespace fs = std::filesystem;

namespace {

// Exit codes: 0 success, 1 I/O, 2 validation/usage, 3 numeric failure.
int exit_code(int rc) {
    switch (rc) {
        case HC_OK: return 0;
        case HC_ERR_IO: return 1;
        case HC_ERR_NUMERIC: return 3;
        default: return 2;
    }
}

int fail(int rc) {
    std::cerr << "error: " << hc_last_error() << "\n";
    return exit_code(rc);
}

struct ConfigHandle {
    hc_config* ptr = hc_config_new();
    ~ConfigHandle() { hc_config_free(ptr); }
};

struct SeriesHandle {
    hc_series* ptr = nullptr;
    ~SeriesHandle() { hc_series_free(ptr); }
};

struct CapacityHandle {
    hc_capacity* ptr = nullptr;
    ~CapacityHandle() { hc_capacity_free(ptr); }
};

struct ForecastHandle {
    hc_forecast* ptr = nullptr;
    ~ForecastHandle() { hc_forecast_free(ptr); }
};

struct MatrixHandle {
    hc_matrix* ptr = nullptr;
    ~MatrixHandle() { hc_matrix_free(ptr); }
};

struct ModelHandle {
    hc_model* ptr = nullptr;
    ~ModelHandle() { hc_model_free(ptr); }
};

struct CommonOpts {
    std::string config_path;
    std::string out_dir = "hydrocast-out";
    std::string gen_path;
    std::string cap_path;
    std::uint64_t seed = 0;
    bool seed_set = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool needs_data) {
    cmd->add_option("--config", opts.config_path, "config file (key = value lines)");
    cmd->add_option("--out", opts.out_dir, "output directory (created if absent)");
    cmd->add_option("--seed", opts.seed, "seed override")->each([&opts](const std::string&) {
        opts.seed_set = true;
    });
    auto* gen = cmd->add_option("--gen", opts.gen_path, "generation CSV (year,month,mwh)");
    auto* cap = cmd->add_option("--cap", opts.cap_path, "capacity CSV (year,installed_mw)");
    if (needs_data) {
        gen->required();
        cap->required();
    }
}

// Applies config file then the seed override. Returns HC_OK or a status.
int apply_config(const ConfigHandle& cfg, const CommonOpts& opts) {
    if (!opts.config_path.empty()) {
        int rc = hc_config_load(cfg.ptr, opts.config_path.c_str());
        if (rc != HC_OK) return rc;
    }
    if (opts.seed_set) hc_config_set_seed(cfg.ptr, opts.seed);
    return HC_OK;
}

int ensure_out_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        std::cerr << "error: cannot create output directory " << dir << ": " << ec.message()
                  << "\n";
        return 1;
    }
    return 0;
}

void write_manifest(const std::string& out_dir, const std::string& command,
                    const ConfigHandle& cfg, const std::vector<std::string>& inputs) {
    std::ofstream out(out_dir + "/manifest.txt");
    out << "command = " << command << '\n';
    std::vector<char> buf(hc_config_dump(cfg.ptr, nullptr, 0) + 1);
    hc_config_dump(cfg.ptr, buf.data(), buf.size());
    out << buf.data();
    for (const auto& path : inputs) {
        std::uint64_t hash = 0;
        if (hc_file_hash(path.c_str(), &hash) == HC_OK) {
            char line[64];
            std::snprintf(line, sizeof(line), "%016" PRIx64, hash);
            out << "input = " << path << '\n' << "input_fnv1a = " << line << '\n';
        }
    }
}

void write_xy(const std::string& path, const std::vector<double>& ys, int x0 = 1) {
    std::ofstream out(path);
    out.precision(10);
    for (std::size_t i = 0; i < ys.size(); ++i) out << (x0 + static_cast<int>(i)) << ' ' << ys[i] << '\n';
}

int load_data(const CommonOpts& opts, SeriesHandle& series, CapacityHandle& caps) {
    int rc = hc_series_load(opts.gen_path.c_str(), &series.ptr);
    if (rc != HC_OK) return rc;
    return hc_capacity_load(opts.cap_path.c_str(), &caps.ptr);
}

void write_forecast_csv(const std::string& path, const hc_forecast* fc) {
    std::ofstream out(path);
    out << "year,month,predicted_mwh,predicted_hours,capacity_mw\n";
    out.precision(10);
    for (int i = 0; i < 12; ++i) {
        int year, month;
        double mwh, hours, cap;
        hc_forecast_point(fc, i, &year, &month, &mwh, &hours, &cap);
        out << year << ',' << month << ',' << mwh << ',' << hours << ',' << cap << '\n';
    }
}

std::vector<double> loss_curve_of(const hc_forecast* fc) {
    int n = hc_forecast_loss_curve(fc, nullptr, 0);
    std::vector<double> curve(static_cast<std::size_t>(std::max(0, n)));
    if (n > 0) hc_forecast_loss_curve(fc, curve.data(), n);
    return curve;
}

int cmd_validate(const CommonOpts& opts) {
    std::vector<char> warn(16384);
    int rc = hc_validate(opts.gen_path.c_str(), opts.cap_path.c_str(), warn.data(), warn.size());
    if (rc != HC_OK) return fail(rc);
    if (warn[0] != '\0') std::cout << "warnings:\n" << warn.data();
    std::cout << "validation OK: " << opts.gen_path << ", " << opts.cap_path << "\n";
    return 0;
}

int cmd_stats(const CommonOpts& opts, const ConfigHandle& cfg, bool have_out) {
    SeriesHandle series;
    int rc = hc_series_load(opts.gen_path.c_str(), &series.ptr);
    if (rc != HC_OK) return fail(rc);

    double stats[36];
    unsigned char present[12];
    rc = hc_stats(series.ptr, stats, present);
    if (rc != HC_OK) return fail(rc);

    static const char* names[] = {"Jan", "Feb", "Mar", "Apr", "May", "Jun",
                                  "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"};
    std::printf("%-5s %14s %14s %14s\n", "month", "min_mwh", "max_mwh", "mean_mwh");
    for (int m = 0; m < 12; ++m) {
        if (present[m]) {
            std::printf("%-5s %14.2f %14.2f %14.2f\n", names[m], stats[m * 3], stats[m * 3 + 1],
                        stats[m * 3 + 2]);
        } else {
            std::printf("%-5s %14s %14s %14s\n", names[m], "-", "-", "-");
        }
    }
    if (have_out) {
        if (int ec = ensure_out_dir(opts.out_dir)) return ec;
        std::ofstream out(opts.out_dir + "/stats.csv");
        out << "month,min_mwh,max_mwh,mean_mwh\n";
        out.precision(10);
        for (int m = 0; m < 12; ++m) {
            out << (m + 1) << ',';
            if (present[m]) {
                out << stats[m * 3] << ',' << stats[m * 3 + 1] << ',' << stats[m * 3 + 2] << '\n';
            } else {
                out << ",,\n";
            }
        }
        write_manifest(opts.out_dir, "stats", cfg, {opts.gen_path});
    }
    return 0;
}

int cmd_synth(const CommonOpts& opts, const ConfigHandle& cfg, int years, double noise) {
    if (int ec = ensure_out_dir(opts.out_dir)) return ec;
    std::string gen = opts.out_dir + "/gen.csv";
    std::string cap = opts.out_dir + "/cap.csv";
    int rc = hc_synth(years, hc_config_seed(cfg.ptr), noise, gen.c_str(), cap.c_str());
    if (rc != HC_OK) return fail(rc);
    write_manifest(opts.out_dir, "synth", cfg, {gen, cap});
    std::cout << "wrote " << gen << " and " << cap << " (" << years << " years)\n";
    return 0;
}

int cmd_train(const CommonOpts& opts, const ConfigHandle& cfg) {
    SeriesHandle series;
    CapacityHandle caps;
    int rc = load_data(opts, series, caps);
    if (rc != HC_OK) return fail(rc);
    if (int ec = ensure_out_dir(opts.out_dir)) return ec;

    ForecastHandle fc;
    rc = hc_forecast_run(series.ptr, caps.ptr, cfg.ptr, nullptr, 0.0, &fc.ptr);
    if (rc != HC_OK) return fail(rc);

    std::string ckpt = opts.out_dir + "/checkpoint.txt";
    rc = hc_model_save(hc_forecast_model(fc.ptr), ckpt.c_str());
    if (rc != HC_OK) return fail(rc);

    auto curve = loss_curve_of(fc.ptr);
    write_xy(opts.out_dir + "/loss_curve.txt", curve);
    write_manifest(opts.out_dir, "train", cfg, {opts.gen_path, opts.cap_path});
    std::cout << "trained " << curve.size() << " epochs; final loss "
              << (curve.empty() ? 0.0 : curve.back()) << "\nwrote " << ckpt << "\n";
    return 0;
}

int cmd_forecast(const CommonOpts& opts, const ConfigHandle& cfg, const std::string& checkpoint,
                 bool train_fresh, double capacity_override) {
    if (checkpoint.empty() && !train_fresh) {
        std::cerr << "error: forecast needs either --checkpoint PATH or --train\n";
        return 2;
    }
    SeriesHandle series;
    CapacityHandle caps;
    int rc = load_data(opts, series, caps);
    if (rc != HC_OK) return fail(rc);
    if (int ec = ensure_out_dir(opts.out_dir)) return ec;

    ModelHandle pretrained;
    if (!checkpoint.empty()) {
        rc = hc_model_load(checkpoint.c_str(), &pretrained.ptr);
        if (rc != HC_OK) return fail(rc);
    }

    ForecastHandle fc;
    rc = hc_forecast_run(series.ptr, caps.ptr, cfg.ptr, pretrained.ptr, capacity_override, &fc.ptr);
    if (rc != HC_OK) return fail(rc);

    write_forecast_csv(opts.out_dir + "/forecast.csv", fc.ptr);
    if (pretrained.ptr == nullptr) {
        write_xy(opts.out_dir + "/loss_curve.txt", loss_curve_of(fc.ptr));
        hc_model_save(hc_forecast_model(fc.ptr), (opts.out_dir + "/checkpoint.txt").c_str());
    }
    write_manifest(opts.out_dir, "forecast", cfg, {opts.gen_path, opts.cap_path});

    if (capacity_override <= 0.0) {
        double slope, intercept, r2;
        int base_year;
        hc_forecast_capacity_fit(fc.ptr, &slope, &intercept, &r2, &base_year);
        std::printf("capacity fit: slope %.3f MW/yr, intercept %.1f MW at %d, r2 %.4f\n", slope,
                    intercept, base_year, r2);
        if (r2 < 0.9) std::printf("warning: capacity regression r2 below 0.9\n");
    }
    std::cout << "wrote " << opts.out_dir << "/forecast.csv\n";
    return 0;
}

int cmd_matrix(const CommonOpts& opts, const ConfigHandle& cfg) {
    SeriesHandle series;
    CapacityHandle caps;
    int rc = load_data(opts, series, caps);
    if (rc != HC_OK) return fail(rc);
    if (int ec = ensure_out_dir(opts.out_dir)) return ec;

    MatrixHandle matrix;
    rc = hc_matrix_run(series.ptr, caps.ptr, cfg.ptr, &matrix.ptr);
    if (rc != HC_OK) return fail(rc);

    std::string report = opts.out_dir + "/report.csv";
    rc = hc_matrix_write_csv(matrix.ptr, report.c_str());
    if (rc != HC_OK) return fail(rc);

    int rows = hc_matrix_row_count(matrix.ptr);
    for (int i = 0; i < rows; ++i) {
        int model, hidden, months, train_months, skipped;
        double rmse_a = 0, rmse_m = 0, mape_a = 0, mape_m = 0;
        hc_matrix_row(matrix.ptr, i, &model, &hidden, &months, &train_months, &skipped, &rmse_a,
                      &rmse_m, &mape_a, &mape_m);
        std::string tag = std::to_string(model) + "_" + std::to_string(hidden);
        if (skipped) {
            std::printf("model %d hidden %d (%d months): skipped (insufficient data)\n", model,
                        hidden, months);
            continue;
        }
        std::printf("model %d hidden %d (%d months): RMSE %.1f/%.2f MAPE %.4f/%.2f%%\n", model,
                    hidden, months, rmse_a, rmse_m, mape_a, mape_m);

        double forecast[12], actual[12];
        hc_matrix_row_series(matrix.ptr, i, forecast, actual);
        std::vector<double> fv(forecast, forecast + 12), av(actual, actual + 12), err(12);
        for (int k = 0; k < 12; ++k) err[static_cast<std::size_t>(k)] = forecast[k] - actual[k];
        write_xy(opts.out_dir + "/row_" + tag + "_forecast.txt", fv);
        write_xy(opts.out_dir + "/row_" + tag + "_actual.txt", av);
        write_xy(opts.out_dir + "/row_" + tag + "_error.txt", err);

        int n = hc_matrix_row_loss_curve(matrix.ptr, i, nullptr, 0);
        std::vector<double> curve(static_cast<std::size_t>(std::max(0, n)));
        if (n > 0) hc_matrix_row_loss_curve(matrix.ptr, i, curve.data(), n);
        write_xy(opts.out_dir + "/row_" + tag + "_loss.txt", curve);

        const hc_model* m = hc_matrix_row_model(matrix.ptr, i);
        if (m) hc_model_save(m, (opts.out_dir + "/checkpoint_" + tag + ".txt").c_str());
    }
    write_manifest(opts.out_dir, "matrix", cfg, {opts.gen_path, opts.cap_path});
    std::cout << "wrote " << report << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"hydrocast: monthly hydroelectric generation forecasting"};
    app.require_subcommand(1);

    CommonOpts validate_opts, stats_opts, synth_opts, train_opts, forecast_opts, matrix_opts;

    auto* validate = app.add_subcommand("validate", "parse and cross-check input CSVs");
    add_common(validate, validate_opts, true);

    auto* stats = app.add_subcommand("stats", "per-month min/max/mean of a generation series");
    add_common(stats, stats_opts, false);
    stats->get_option("--gen")->required();

    auto* synth = app.add_subcommand("synth", "write a deterministic synthetic dataset");
    add_common(synth, synth_opts, false);
    int synth_years = 12;
    double synth_noise = 0.05;
    synth->add_option("--years", synth_years, "number of years to generate");
    synth->add_option("--noise", synth_noise, "relative noise level (0 = noiseless)");

    auto* train = app.add_subcommand("train", "train a model and write a checkpoint");
    add_common(train, train_opts, true);

    auto* forecast = app.add_subcommand("forecast", "12-month forecast in MWh");
    add_common(forecast, forecast_opts, true);
    std::string checkpoint;
    bool train_fresh = false;
    double capacity_override = 0.0;
    forecast->add_option("--checkpoint", checkpoint, "load a trained checkpoint");
    forecast->add_flag("--train", train_fresh, "train a fresh model before forecasting");
    forecast->add_option("--capacity-override", capacity_override,
                         "use this capacity (MW) instead of the regression");

    auto* matrix = app.add_subcommand("matrix", "window x width experiment matrix report");
    add_common(matrix, matrix_opts, true);

    CLI11_PARSE(app, argc, argv);

    CommonOpts* active = nullptr;
    if (validate->parsed()) active = &validate_opts;
    else if (stats->parsed()) active = &stats_opts;
    else if (synth->parsed()) active = &synth_opts;
    else if (train->parsed()) active = &train_opts;
    else if (forecast->parsed()) active = &forecast_opts;
    else active = &matrix_opts;

    ConfigHandle cfg;
    int rc = apply_config(cfg, *active);
    if (rc != HC_OK) return fail(rc);

    if (validate->parsed()) return cmd_validate(validate_opts);
    if (stats->parsed()) return cmd_stats(stats_opts, cfg, stats->count("--out") > 0);
    if (synth->parsed()) return cmd_synth(synth_opts, cfg, synth_years, synth_noise);
    if (train->parsed()) return cmd_train(train_opts, cfg);
    if (forecast->parsed())
        return cmd_forecast(forecast_opts, cfg, checkpoint, train_fresh, capacity_override);
    return cmd_matrix(matrix_opts, cfg);
}
