/* C interface to the network-to-decision-tree engine. All functions return
 * RENTT_OK or an error code; rentt_last_error() describes the most recent
 * failure on the calling thread. Handles are opaque and single-owner.
 *
 * Feature vectors cross this boundary unaugmented: callers pass raw feature
 * values (time-major for sequence models) and receive raw outputs; the
 * internal dummy bias coordinates never appear here. */
#ifndef RENTT_H
#define RENTT_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct rentt_network rentt_network;
typedef struct rentt_dataset rentt_dataset;
typedef struct rentt_tree rentt_tree;

enum rentt_status {
  RENTT_OK = 0,
  RENTT_ERR_UNKNOWN = 1,
  RENTT_ERR_SCHEMA = 2,        /* malformed model/tree/dataset file */
  RENTT_ERR_EMPTY_DATASET = 3,
  RENTT_ERR_SHAPE = 4,
  RENTT_ERR_ROUTING = 5,       /* unseen activation pattern in strict mode */
  RENTT_ERR_VALUE = 6,
  RENTT_ERR_DOMAIN = 7,
  RENTT_ERR_UNSUPPORTED = 8,
  RENTT_ERR_CONTRACT = 9,
  RENTT_ERR_IO = 10
};

/* Message for the last error on this thread; empty string if none. The
 * pointer stays valid until the next failing call on the same thread. */
const char* rentt_last_error(void);

/* Frees strings returned through char** out-parameters. */
void rentt_string_free(char* s);

/* --- networks --- */
int rentt_network_load(const char* path, rentt_network** out);
int rentt_network_parse(const char* json_text, rentt_network** out);
void rentt_network_free(rentt_network* net);
size_t rentt_network_input_features(const rentt_network* net);
size_t rentt_network_output_values(const rentt_network* net);
int rentt_network_forward(const rentt_network* net, const double* features, size_t n,
                          double* out, size_t out_cap, size_t* out_n);

/* --- datasets (CSV with header; "label"/"target" column optional) --- */
int rentt_dataset_load(const char* path, rentt_dataset** out);
void rentt_dataset_free(rentt_dataset* ds);
size_t rentt_dataset_rows(const rentt_dataset* ds);
size_t rentt_dataset_cols(const rentt_dataset* ds);
int rentt_dataset_has_labels(const rentt_dataset* ds);

/* --- trees --- */
int rentt_transform(const rentt_network* net, const rentt_dataset* ds, rentt_tree** out);
void rentt_tree_free(rentt_tree* tree);
size_t rentt_tree_nodes(const rentt_tree* tree);
size_t rentt_tree_leaves(const rentt_tree* tree);
size_t rentt_tree_levels(const rentt_tree* tree);
size_t rentt_tree_nodes_at_depth(const rentt_tree* tree, int depth);
int rentt_tree_save(const rentt_tree* tree, const char* path);
int rentt_tree_load(const char* path, rentt_tree** out);

/* Strict when net is NULL (unseen patterns fail with RENTT_ERR_ROUTING),
 * elastic otherwise (unseen paths are appended). */
int rentt_tree_predict(rentt_tree* tree, const rentt_network* net, const double* features,
                       size_t n, double* out, size_t out_cap, size_t* out_n);

typedef struct {
  size_t samples_checked;
  double max_abs_diff;
  double max_rel_diff;
  size_t mismatch_count;
  size_t unseen_count;
  double nn_metric;
  double dt_metric;
  char metric_name[16]; /* "accuracy", "mse", or "" without labels */
} rentt_equivalence_report;

int rentt_verify(const rentt_network* net, rentt_tree* tree, const rentt_dataset* ds,
                 double tolerance, int elastic, rentt_equivalence_report* out);

/* scope: "local" (sample_index required, >= 0), "regional", or "global".
 * Emits the CSV report; free with rentt_string_free. Strict when net is
 * NULL. */
int rentt_fi_csv(rentt_tree* tree, const rentt_network* net, const rentt_dataset* ds,
                 const char* scope, long sample_index, char** out_csv);

/* --- benchmarking --- */
int rentt_bench_csv(const int* grid, size_t grid_len, uint64_t seed, int repeats,
                    char** out_csv);

typedef struct {
  double exponent;
  double coefficient;
  double residual;
} rentt_power_law;

int rentt_fit_power_law(const double* xs, const double* ys, size_t n, double x_min,
                        double x_max, rentt_power_law* out);

#ifdef __cplusplus
}
#endif

#endif /* RENTT_H */
