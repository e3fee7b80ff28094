/* C API for the hydrocast forecasting library.
 *
 * All functions return a status code (hc_status); 0 means success. On
 * failure hc_last_error() returns a thread-local description. Handles are
 * opaque and must be released with their matching *_free function.
 */
#ifndef HYDROCAST_H
#define HYDROCAST_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hc_status {
    HC_OK = 0,
    HC_ERR_IO = 1,         /* missing/unreadable/unwritable files */
    HC_ERR_VALIDATION = 2, /* bad data, bad config, shape errors */
    HC_ERR_NUMERIC = 3,    /* training divergence, non-finite values */
    HC_ERR_INVALID = 4     /* null handles, bad arguments */
} hc_status;

typedef struct hc_series hc_series;     /* monthly generation series */
typedef struct hc_capacity hc_capacity; /* annual installed-capacity records */
typedef struct hc_config hc_config;     /* experiment + training configuration */
typedef struct hc_model hc_model;       /* trained LSTM parameters */
typedef struct hc_forecast hc_forecast; /* 12-month forecast run */
typedef struct hc_matrix hc_matrix;     /* experiment-matrix result rows */

const char* hc_version(void);
const char* hc_last_error(void);

/* --- configuration ------------------------------------------------------ */

hc_config* hc_config_new(void);
void hc_config_free(hc_config* cfg);

/* Plain-text `key = value` file with `#` comments. */
int hc_config_load(hc_config* cfg, const char* path);
int hc_config_set(hc_config* cfg, const char* key, const char* value);
int hc_config_set_seed(hc_config* cfg, uint64_t seed);
uint64_t hc_config_seed(const hc_config* cfg);

/* Serializes the effective configuration as `key = value` lines. Returns the
 * required length (excluding NUL); writes at most buflen bytes. */
size_t hc_config_dump(const hc_config* cfg, char* buf, size_t buflen);

/* --- data --------------------------------------------------------------- */

int hc_series_load(const char* path, hc_series** out);
void hc_series_free(hc_series* s);
int hc_series_length(const hc_series* s);

int hc_capacity_load(const char* path, hc_capacity** out);
void hc_capacity_free(hc_capacity* c);
int hc_capacity_length(const hc_capacity* c);

/* Parses and cross-checks both files. Returns HC_OK when both are valid;
 * non-fatal warnings (e.g. hours above the monthly physical ceiling) are
 * written to warn_buf as newline-separated text. */
int hc_validate(const char* gen_path, const char* cap_path, char* warn_buf, size_t warn_len);

/* Writes a deterministic synthetic dataset to two CSV files. */
int hc_synth(int years, uint64_t seed, double noise_level, const char* gen_path,
             const char* cap_path);

/* Per-month min/max/mean over the series. out_stats holds 12 rows of
 * (min, max, mean); out_present[m] is 0 for months absent from the data. */
int hc_stats(const hc_series* s, double out_stats[36], unsigned char out_present[12]);

/* --- model + forecast --------------------------------------------------- */

int hc_model_load(const char* path, hc_model** out);
int hc_model_save(const hc_model* m, const char* path);
void hc_model_free(hc_model* m);
int hc_model_dims(const hc_model* m, int* input_dim, int* hidden_dim, int* num_layers);

/* Runs the full pipeline: trains (or reuses `pretrained` when non-NULL) and
 * produces a 12-month forecast denormalized with regression-extrapolated
 * capacity. capacity_override_mw > 0 bypasses the regression. */
int hc_forecast_run(const hc_series* s, const hc_capacity* c, const hc_config* cfg,
                    const hc_model* pretrained, double capacity_override_mw, hc_forecast** out);
void hc_forecast_free(hc_forecast* f);

int hc_forecast_point(const hc_forecast* f, int index, int* year, int* month, double* mwh,
                      double* hours, double* capacity_mw);
/* Returns the number of epochs; fills up to cap entries. */
int hc_forecast_loss_curve(const hc_forecast* f, double* buf, int cap);
int hc_forecast_capacity_fit(const hc_forecast* f, double* slope, double* intercept, double* r2,
                             int* base_year);
/* Borrowed reference, valid while the forecast handle lives. */
const hc_model* hc_forecast_model(const hc_forecast* f);

/* --- experiment matrix -------------------------------------------------- */

int hc_matrix_run(const hc_series* s, const hc_capacity* c, const hc_config* cfg, hc_matrix** out);
void hc_matrix_free(hc_matrix* m);
int hc_matrix_row_count(const hc_matrix* m);
int hc_matrix_write_csv(const hc_matrix* m, const char* path);
/* skipped is 0/1; error columns are untouched for skipped rows. */
int hc_matrix_row(const hc_matrix* m, int index, int* model, int* hidden, int* months,
                  int* train_months, int* skipped, double* rmse_annual, double* rmse_monthly,
                  double* mape_annual, double* mape_monthly_pct);
/* Both arrays receive 12 values. Fails for skipped rows. */
int hc_matrix_row_series(const hc_matrix* m, int index, double* forecast_mwh, double* actual_mwh);
int hc_matrix_row_loss_curve(const hc_matrix* m, int index, double* buf, int cap);
/* Borrowed reference to the row's trained model; NULL for skipped rows. */
const hc_model* hc_matrix_row_model(const hc_matrix* m, int index);

/* FNV-1a hash of a file's bytes, for run manifests. */
int hc_file_hash(const char* path, uint64_t* out);

#ifdef __cplusplus
}
#endif

#endif /* HYDROCAST_H */
