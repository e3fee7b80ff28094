#include "hydrocast/hydrocast.h"

#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "core/capacity.hpp"
#include "core/errors.hpp"
#include "core/evaluation.hpp"
#include "core/lstm.hpp"
#include "core/pipeline.hpp"
#include "core/series.hpp"

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& msg) { g_last_error = msg; }

// Translates core exceptions into status codes at the API boundary.
template <typename Fn>
int guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const hydrocast::IoError& e) {
        set_error(e.what());
        return HC_ERR_IO;
    } catch (const hydrocast::NumericError& e) {
        set_error(e.what());
        return HC_ERR_NUMERIC;
    } catch (const hydrocast::ValidationError& e) {
        set_error(e.what());
        return HC_ERR_VALIDATION;
    } catch (const std::exception& e) {
        set_error(e.what());
        return HC_ERR_INVALID;
    }
}

std::vector<int> parse_int_list(const std::string& value) {
    std::vector<int> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(std::stoi(item));
    }
    if (out.empty()) throw hydrocast::ValidationError("empty list value '" + value + "'");
    return out;
}

} // namespace

struct hc_series {
    hydrocast::GenerationSeries series;
};
struct hc_capacity {
    std::vector<hydrocast::CapacityRecord> records;
};
struct hc_config {
    hydrocast::ExperimentConfig cfg;
};
struct hc_model {
    hydrocast::LstmParams params;
};
struct hc_forecast {
    hydrocast::ForecastResult result;
    hc_model model; // owns a copy of the trained parameters
};
struct hc_matrix {
    std::vector<hydrocast::MatrixRow> rows;
    std::vector<hc_model> models; // parallel to rows; empty params for skips
};

extern "C" {

const char* hc_version(void) { return "hydrocast 1.0.0"; }

const char* hc_last_error(void) { return g_last_error.c_str(); }

hc_config* hc_config_new(void) { return new hc_config(); }

void hc_config_free(hc_config* cfg) { delete cfg; }

int hc_config_set(hc_config* cfg, const char* key, const char* value) {
    if (!cfg || !key || !value) {
        set_error("null argument to hc_config_set");
        return HC_ERR_INVALID;
    }
    return guarded([&]() {
        std::string k = key;
        std::string v = value;
        auto& c = cfg->cfg;
        try {
            if (k == "epochs") c.training.epochs = std::stoi(v);
            else if (k == "learning_rate") c.training.learning_rate = std::stod(v);
            else if (k == "window") c.training.window = std::stoi(v);
            else if (k == "seed") c.training.seed = std::stoull(v);
            else if (k == "clip_norm") c.training.clip_norm = std::stod(v);
            else if (k == "beta1") c.training.beta1 = std::stod(v);
            else if (k == "beta2") c.training.beta2 = std::stod(v);
            else if (k == "eps") c.training.eps = std::stod(v);
            else if (k == "hidden_dim") c.training.hidden_dim = std::stoi(v);
            else if (k == "num_layers") c.training.num_layers = std::stoi(v);
            else if (k == "window_months") c.window_months = parse_int_list(v);
            else if (k == "hidden_widths") c.hidden_widths = parse_int_list(v);
            else if (k == "capacity_lookback") c.capacity_lookback = std::stoi(v);
            else if (k == "seasonal_channel") c.seasonal_channel = (v == "1" || v == "true" || v == "on");
            else {
                throw hydrocast::ValidationError("unknown config key '" + k + "'");
            }
        } catch (const std::invalid_argument&) {
            throw hydrocast::ValidationError("bad value '" + v + "' for config key '" + k + "'");
        } catch (const std::out_of_range&) {
            throw hydrocast::ValidationError("out-of-range value '" + v + "' for config key '" + k +
                                             "'");
        }
        return HC_OK;
    });
}

int hc_config_load(hc_config* cfg, const char* path) {
    if (!cfg || !path) {
        set_error("null argument to hc_config_load");
        return HC_ERR_INVALID;
    }
    return guarded([&]() {
        std::ifstream in(path);
        if (!in) throw hydrocast::IoError(std::string("cannot open config ") + path);
        std::string line;
        int line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            auto hash = line.find('#');
            if (hash != std::string::npos) line = line.substr(0, hash);
            auto first = line.find_first_not_of(" \t\r\n");
            if (first == std::string::npos) continue;
            auto eq = line.find('=');
            if (eq == std::string::npos) {
                throw hydrocast::ValidationError(std::string(path) + ":" + std::to_string(line_no) +
                                                 ": expected 'key = value'");
            }
            auto trim = [](std::string s) {
                auto b = s.find_first_not_of(" \t\r\n");
                if (b == std::string::npos) return std::string();
                auto e = s.find_last_not_of(" \t\r\n");
                return s.substr(b, e - b + 1);
            };
            std::string key = trim(line.substr(0, eq));
            std::string value = trim(line.substr(eq + 1));
            int rc = hc_config_set(cfg, key.c_str(), value.c_str());
            if (rc != HC_OK) {
                throw hydrocast::ValidationError(std::string(path) + ":" + std::to_string(line_no) +
                                                 ": " + g_last_error + " (key '" + key + "')");
            }
        }
        return HC_OK;
    });
}

int hc_config_set_seed(hc_config* cfg, uint64_t seed) {
    if (!cfg) {
        set_error("null config");
        return HC_ERR_INVALID;
    }
    cfg->cfg.training.seed = seed;
    return HC_OK;
}

uint64_t hc_config_seed(const hc_config* cfg) { return cfg ? cfg->cfg.training.seed : 0; }

size_t hc_config_dump(const hc_config* cfg, char* buf, size_t buflen) {
    if (!cfg) return 0;
    const auto& c = cfg->cfg;
    std::ostringstream os;
    os << "epochs = " << c.training.epochs << '\n'
       << "learning_rate = " << c.training.learning_rate << '\n'
       << "window = " << c.training.window << '\n'
       << "seed = " << c.training.seed << '\n'
       << "clip_norm = " << c.training.clip_norm << '\n'
       << "beta1 = " << c.training.beta1 << '\n'
       << "beta2 = " << c.training.beta2 << '\n'
       << "eps = " << c.training.eps << '\n'
       << "hidden_dim = " << c.training.hidden_dim << '\n'
       << "num_layers = " << c.training.num_layers << '\n';
    os << "window_months = ";
    for (std::size_t i = 0; i < c.window_months.size(); ++i)
        os << (i ? "," : "") << c.window_months[i];
    os << "\nhidden_widths = ";
    for (std::size_t i = 0; i < c.hidden_widths.size(); ++i)
        os << (i ? "," : "") << c.hidden_widths[i];
    os << "\ncapacity_lookback = " << c.capacity_lookback << '\n'
       << "seasonal_channel = " << (c.seasonal_channel ? 1 : 0) << '\n';
    std::string text = os.str();
    if (buf && buflen > 0) {
        size_t n = std::min(buflen - 1, text.size());
        std::memcpy(buf, text.data(), n);
        buf[n] = '\0';
    }
    return text.size();
}

int hc_series_load(const char* path, hc_series** out) {
    if (!path || !out) {
        set_error("null argument to hc_series_load");
        return HC_ERR_INVALID;
    }
    return guarded([&]() {
        *out = new hc_series{hydrocast::load_generation_csv(path)};
        return HC_OK;
    });
}

void hc_series_free(hc_series* s) { delete s; }

int hc_series_length(const hc_series* s) { return s ? static_cast<int>(s->series.size()) : 0; }

int hc_capacity_load(const char* path, hc_capacity** out) {
    if (!path || !out) {
        set_error("null argument to hc_capacity_load");
        return HC_ERR_INVALID;
    }
    return guarded([&]() {
        *out = new hc_capacity{hydrocast::load_capacity_csv(path)};
        return HC_OK;
    });
}

void hc_capacity_free(hc_capacity* c) { delete c; }

int hc_capacity_length(const hc_capacity* c) { return c ? static_cast<int>(c->records.size()) : 0; }

int hc_validate(const char* gen_path, const char* cap_path, char* warn_buf, size_t warn_len) {
    if (warn_buf && warn_len > 0) warn_buf[0] = '\0';
    return guarded([&]() {
        auto gen = hydrocast::load_generation_csv(gen_path);
        auto caps = hydrocast::load_capacity_csv(cap_path);
        auto normalized = hydrocast::normalize_generation(gen, caps);
        auto warnings = hydrocast::hours_ceiling_warnings(normalized);
        if (warn_buf && warn_len > 0 && !warnings.empty()) {
            std::string text;
            for (const auto& w : warnings) text += w + '\n';
            size_t n = std::min(warn_len - 1, text.size());
            std::memcpy(warn_buf, text.data(), n);
            warn_buf[n] = '\0';
        }
        return HC_OK;
    });
}

int hc_synth(int years, uint64_t seed, double noise_level, const char* gen_path,
             const char* cap_path) {
    if (!gen_path || !cap_path) {
        set_error("null path argument to hc_synth");
        return HC_ERR_INVALID;
    }
    return guarded([&]() {
        auto data = hydrocast::synth_dataset(years, seed, noise_level);
        hydrocast::save_generation_csv(data.gen, gen_path);
        hydrocast::save_capacity_csv(data.capacities, cap_path);
        return HC_OK;
    });
}

int hc_stats(const hc_series* s, double out_stats[36], unsigned char out_present[12]) {
    if (!s || !out_stats || !out_present) {
        set_error("null argument to hc_stats");
        return HC_ERR_INVALID;
    }
    return guarded([&]() {
        auto rows = hydrocast::monthly_stats(s->series);
        for (int m = 0; m < 12; ++m) {
            out_present[m] = rows[m].present ? 1 : 0;
            out_stats[m * 3 + 0] = rows[m].min;
            out_stats[m * 3 + 1] = rows[m].max;
            out_stats[m * 3 + 2] = rows[m].mean;
        }
        return HC_OK;
    });
}

int hc_model_load(const char* path, hc_model** out) {
    if (!path || !out) {
        set_error("null argument to hc_model_load");
        return HC_ERR_INVALID;
    }
    return guarded([&]() {
        *out = new hc_model{hydrocast::load_checkpoint(path)};
        return HC_OK;
    });
}

int hc_model_save(const hc_model* m, const char* path) {
    if (!m || !path) {
        set_error("null argument to hc_model_save");
        return HC_ERR_INVALID;
    }
    return guarded([&]() {
        hydrocast::save_checkpoint(m->params, path);
        return HC_OK;
    });
}

void hc_model_free(hc_model* m) { delete m; }

int hc_model_dims(const hc_model* m, int* input_dim, int* hidden_dim, int* num_layers) {
    if (!m) {
        set_error("null model");
        return HC_ERR_INVALID;
    }
    if (input_dim) *input_dim = m->params.input_dim;
    if (hidden_dim) *hidden_dim = m->params.hidden_dim;
    if (num_layers) *num_layers = m->params.num_layers();
    return HC_OK;
}

int hc_forecast_run(const hc_series* s, const hc_capacity* c, const hc_config* cfg,
                    const hc_model* pretrained, double capacity_override_mw, hc_forecast** out) {
    if (!s || !c || !cfg || !out) {
        set_error("null argument to hc_forecast_run");
        return HC_ERR_INVALID;
    }
    return guarded([&]() {
        std::optional<double> override_mw;
        if (capacity_override_mw > 0.0) override_mw = capacity_override_mw;
        auto result = hydrocast::run_forecast(s->series, c->records, cfg->cfg, override_mw,
                                              pretrained ? &pretrained->params : nullptr);
        auto* f = new hc_forecast{std::move(result), {}};
        f->model.params = f->result.params;
        *out = f;
        return HC_OK;
    });
}

void hc_forecast_free(hc_forecast* f) { delete f; }

int hc_forecast_point(const hc_forecast* f, int index, int* year, int* month, double* mwh,
                      double* hours, double* capacity_mw) {
    if (!f || index < 0 || index >= static_cast<int>(f->result.points.size())) {
        set_error("forecast point index out of range");
        return HC_ERR_INVALID;
    }
    const auto& p = f->result.points[static_cast<std::size_t>(index)];
    if (year) *year = p.year;
    if (month) *month = p.month;
    if (mwh) *mwh = p.predicted_mwh;
    if (hours) *hours = p.predicted_hours;
    if (capacity_mw) *capacity_mw = p.capacity_mw;
    return HC_OK;
}

int hc_forecast_loss_curve(const hc_forecast* f, double* buf, int cap) {
    if (!f) {
        set_error("null forecast");
        return -1;
    }
    int n = static_cast<int>(f->result.loss_curve.size());
    if (buf) {
        for (int i = 0; i < std::min(n, cap); ++i) buf[i] = f->result.loss_curve[static_cast<std::size_t>(i)];
    }
    return n;
}

int hc_forecast_capacity_fit(const hc_forecast* f, double* slope, double* intercept, double* r2,
                             int* base_year) {
    if (!f) {
        set_error("null forecast");
        return HC_ERR_INVALID;
    }
    if (slope) *slope = f->result.capacity_fit.slope;
    if (intercept) *intercept = f->result.capacity_fit.intercept;
    if (r2) *r2 = f->result.capacity_fit.r2;
    if (base_year) *base_year = f->result.capacity_fit.base_year;
    return HC_OK;
}

const hc_model* hc_forecast_model(const hc_forecast* f) { return f ? &f->model : nullptr; }

int hc_matrix_run(const hc_series* s, const hc_capacity* c, const hc_config* cfg, hc_matrix** out) {
    if (!s || !c || !cfg || !out) {
        set_error("null argument to hc_matrix_run");
        return HC_ERR_INVALID;
    }
    return guarded([&]() {
        auto* m = new hc_matrix();
        m->rows = hydrocast::run_table2_matrix(s->series, c->records, cfg->cfg);
        m->models.reserve(m->rows.size());
        for (const auto& row : m->rows) m->models.push_back(hc_model{row.params});
        *out = m;
        return HC_OK;
    });
}

void hc_matrix_free(hc_matrix* m) { delete m; }

int hc_matrix_row_count(const hc_matrix* m) { return m ? static_cast<int>(m->rows.size()) : 0; }

int hc_matrix_write_csv(const hc_matrix* m, const char* path) {
    if (!m || !path) {
        set_error("null argument to hc_matrix_write_csv");
        return HC_ERR_INVALID;
    }
    return guarded([&]() {
        std::ofstream outf(path);
        if (!outf) throw hydrocast::IoError(std::string("cannot write ") + path);
        outf << hydrocast::matrix_report_csv(m->rows);
        return HC_OK;
    });
}

int hc_matrix_row(const hc_matrix* m, int index, int* model, int* hidden, int* months,
                  int* train_months, int* skipped, double* rmse_annual, double* rmse_monthly,
                  double* mape_annual, double* mape_monthly_pct) {
    if (!m || index < 0 || index >= static_cast<int>(m->rows.size())) {
        set_error("matrix row index out of range");
        return HC_ERR_INVALID;
    }
    const auto& r = m->rows[static_cast<std::size_t>(index)];
    if (model) *model = r.model;
    if (hidden) *hidden = r.hidden;
    if (months) *months = r.months;
    if (train_months) *train_months = r.train_months;
    if (skipped) *skipped = r.skipped ? 1 : 0;
    if (!r.skipped) {
        if (rmse_annual) *rmse_annual = r.report.rmse_annual;
        if (rmse_monthly) *rmse_monthly = r.report.rmse_monthly_avg;
        if (mape_annual) *mape_annual = r.report.mape_annual;
        if (mape_monthly_pct) *mape_monthly_pct = r.report.mape_monthly_avg_pct;
    }
    return HC_OK;
}

int hc_matrix_row_series(const hc_matrix* m, int index, double* forecast_mwh, double* actual_mwh) {
    if (!m || index < 0 || index >= static_cast<int>(m->rows.size())) {
        set_error("matrix row index out of range");
        return HC_ERR_INVALID;
    }
    const auto& r = m->rows[static_cast<std::size_t>(index)];
    if (r.skipped) {
        set_error("matrix row " + std::to_string(index) + " was skipped");
        return HC_ERR_VALIDATION;
    }
    for (int i = 0; i < 12; ++i) {
        if (forecast_mwh) forecast_mwh[i] = r.forecast_mwh[static_cast<std::size_t>(i)];
        if (actual_mwh) actual_mwh[i] = r.actual_mwh[static_cast<std::size_t>(i)];
    }
    return HC_OK;
}

int hc_matrix_row_loss_curve(const hc_matrix* m, int index, double* buf, int cap) {
    if (!m || index < 0 || index >= static_cast<int>(m->rows.size())) {
        set_error("matrix row index out of range");
        return -1;
    }
    const auto& r = m->rows[static_cast<std::size_t>(index)];
    int n = static_cast<int>(r.loss_curve.size());
    if (buf) {
        for (int i = 0; i < std::min(n, cap); ++i) buf[i] = r.loss_curve[static_cast<std::size_t>(i)];
    }
    return n;
}

const hc_model* hc_matrix_row_model(const hc_matrix* m, int index) {
    if (!m || index < 0 || index >= static_cast<int>(m->rows.size())) return nullptr;
    if (m->rows[static_cast<std::size_t>(index)].skipped) return nullptr;
    return &m->models[static_cast<std::size_t>(index)];
}

int hc_file_hash(const char* path, uint64_t* out) {
    if (!path || !out) {
        set_error("null argument to hc_file_hash");
        return HC_ERR_INVALID;
    }
    return guarded([&]() {
        *out = hydrocast::fnv1a_file(path);
        return HC_OK;
    });
}

} // extern "C"
