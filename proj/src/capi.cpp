#include "rentt.h"

#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "rentt/bench.hpp"
#include "rentt/error.hpp"
#include "rentt/feature_importance.hpp"
#include "rentt/io.hpp"
#include "rentt/network.hpp"
#include "rentt/tree.hpp"

struct rentt_network {
  rentt::Network net;
};
struct rentt_dataset {
  rentt::Dataset ds;
  std::vector<std::vector<double>> rows;  // augmented, built once at load
};
struct rentt_tree {
  rentt::DecisionTree tree;
};

namespace {

thread_local std::string g_last_error;

int fail(int code, const char* what) {
  g_last_error = what;
  return code;
}

/// Maps C++ exceptions to status codes; order matters (most derived first).
int translate(const std::exception& e) {
  using namespace rentt;
  if (dynamic_cast<const SchemaError*>(&e)) return fail(RENTT_ERR_SCHEMA, e.what());
  if (dynamic_cast<const EmptyDatasetError*>(&e)) return fail(RENTT_ERR_EMPTY_DATASET, e.what());
  if (dynamic_cast<const ShapeError*>(&e)) return fail(RENTT_ERR_SHAPE, e.what());
  if (dynamic_cast<const RoutingError*>(&e)) return fail(RENTT_ERR_ROUTING, e.what());
  if (dynamic_cast<const DomainError*>(&e)) return fail(RENTT_ERR_DOMAIN, e.what());
  if (dynamic_cast<const UnsupportedError*>(&e)) return fail(RENTT_ERR_UNSUPPORTED, e.what());
  if (dynamic_cast<const ContractError*>(&e)) return fail(RENTT_ERR_CONTRACT, e.what());
  if (dynamic_cast<const ValueError*>(&e)) return fail(RENTT_ERR_VALUE, e.what());
  return fail(RENTT_ERR_UNKNOWN, e.what());
}

template <typename Fn>
int guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const std::exception& e) {
    return translate(e);
  } catch (...) {
    return fail(RENTT_ERR_UNKNOWN, "unknown error");
  }
}

/// Raw time-major features -> stacked augmented vector (dummy per slice).
std::vector<double> augment_features(const double* features, size_t n, size_t per_slice_raw,
                                     int time_steps) {
  if (n != per_slice_raw * static_cast<size_t>(time_steps))
    throw rentt::ShapeError("feature vector length mismatch");
  std::vector<double> x0;
  x0.reserve(n + time_steps);
  for (int t = 0; t < time_steps; ++t) {
    x0.push_back(1.0);
    x0.insert(x0.end(), features + t * per_slice_raw, features + (t + 1) * per_slice_raw);
  }
  return x0;
}

/// Strips per-slice dummies from a stacked augmented output.
int emit_output(const std::vector<double>& y, int time_steps, double* out, size_t out_cap,
                size_t* out_n) {
  const size_t per_slice = y.size() / time_steps;
  const size_t total = (per_slice - 1) * time_steps;
  if (out_n != nullptr) *out_n = total;
  if (out_cap < total) return fail(RENTT_ERR_SHAPE, "output buffer too small");
  size_t k = 0;
  for (int t = 0; t < time_steps; ++t)
    for (size_t i = 1; i < per_slice; ++i) out[k++] = y[t * per_slice + i];
  return static_cast<int>(RENTT_OK);
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* rentt_last_error(void) { return g_last_error.c_str(); }

void rentt_string_free(char* s) { delete[] s; }

int rentt_network_load(const char* path, rentt_network** out) {
  return guarded([&] {
    *out = new rentt_network{rentt::load_network(path)};
    return static_cast<int>(RENTT_OK);
  });
}

int rentt_network_parse(const char* json_text, rentt_network** out) {
  return guarded([&] {
    *out = new rentt_network{rentt::parse_network(json_text)};
    return static_cast<int>(RENTT_OK);
  });
}

void rentt_network_free(rentt_network* net) { delete net; }

size_t rentt_network_input_features(const rentt_network* net) {
  return (net->net.input_dim - 1) * net->net.time_steps;
}

size_t rentt_network_output_values(const rentt_network* net) {
  return (net->net.output_dim() - 1) * net->net.time_steps;
}

int rentt_network_forward(const rentt_network* net, const double* features, size_t n,
                          double* out, size_t out_cap, size_t* out_n) {
  return guarded([&] {
    const auto x0 = augment_features(features, n, net->net.input_dim - 1, net->net.time_steps);
    return emit_output(net->net.forward(x0), net->net.time_steps, out, out_cap, out_n);
  });
}

int rentt_dataset_load(const char* path, rentt_dataset** out) {
  return guarded([&] {
    auto* h = new rentt_dataset{rentt::load_dataset(path), {}};
    h->rows = h->ds.augmented_rows();
    *out = h;
    return static_cast<int>(RENTT_OK);
  });
}

void rentt_dataset_free(rentt_dataset* ds) { delete ds; }

size_t rentt_dataset_rows(const rentt_dataset* ds) { return ds->ds.size(); }

size_t rentt_dataset_cols(const rentt_dataset* ds) { return ds->ds.columns.size(); }

int rentt_dataset_has_labels(const rentt_dataset* ds) { return ds->ds.labels.has_value(); }

int rentt_transform(const rentt_network* net, const rentt_dataset* ds, rentt_tree** out) {
  return guarded([&] {
    // Sequence models take T stacked slices; the CSV stores them flat, so
    // re-augment per slice here.
    std::vector<std::vector<double>> rows;
    if (net->net.time_steps > 1) {
      for (const auto& f : ds->ds.features)
        rows.push_back(
            augment_features(f.data(), f.size(), net->net.input_dim - 1, net->net.time_steps));
    } else {
      rows = ds->rows;
    }
    *out = new rentt_tree{rentt::DecisionTree::transform(net->net, rows)};
    return static_cast<int>(RENTT_OK);
  });
}

void rentt_tree_free(rentt_tree* tree) { delete tree; }

size_t rentt_tree_nodes(const rentt_tree* tree) { return tree->tree.node_count(); }

size_t rentt_tree_leaves(const rentt_tree* tree) { return tree->tree.leaf_count(); }

size_t rentt_tree_levels(const rentt_tree* tree) { return tree->tree.total_levels(); }

size_t rentt_tree_nodes_at_depth(const rentt_tree* tree, int depth) {
  return tree->tree.nodes_at_depth(depth);
}

int rentt_tree_save(const rentt_tree* tree, const char* path) {
  return guarded([&] {
    rentt::TreeIo::save(tree->tree, path);
    return static_cast<int>(RENTT_OK);
  });
}

int rentt_tree_load(const char* path, rentt_tree** out) {
  return guarded([&] {
    *out = new rentt_tree{rentt::TreeIo::load(path)};
    return static_cast<int>(RENTT_OK);
  });
}

int rentt_tree_predict(rentt_tree* tree, const rentt_network* net, const double* features,
                       size_t n, double* out, size_t out_cap, size_t* out_n) {
  return guarded([&] {
    const int T = tree->tree.time_steps();
    const size_t per_slice_raw = tree->tree.stacked_input_dim() / T - 1;
    const auto x0 = augment_features(features, n, per_slice_raw, T);
    const std::vector<double> y =
        (net != nullptr) ? tree->tree.predict(x0, &net->net) : tree->tree.predict_const(x0);
    return emit_output(y, T, out, out_cap, out_n);
  });
}

int rentt_verify(const rentt_network* net, rentt_tree* tree, const rentt_dataset* ds,
                 double tolerance, int elastic, rentt_equivalence_report* out) {
  return guarded([&] {
    std::vector<std::vector<double>> rows;
    const std::vector<std::vector<double>>* rows_ptr = &ds->rows;
    if (net->net.time_steps > 1) {
      for (const auto& f : ds->ds.features)
        rows.push_back(
            augment_features(f.data(), f.size(), net->net.input_dim - 1, net->net.time_steps));
      rows_ptr = &rows;
    }
    const rentt::EquivalenceReport rep = rentt::verify_equivalence(
        net->net, tree->tree, *rows_ptr,
        ds->ds.labels ? &*ds->ds.labels : nullptr, tolerance, elastic != 0);
    out->samples_checked = rep.samples_checked;
    out->max_abs_diff = rep.max_abs_diff;
    out->max_rel_diff = rep.max_rel_diff;
    out->mismatch_count = rep.mismatch_count;
    out->unseen_count = rep.unseen_count;
    out->nn_metric = rep.nn_metric;
    out->dt_metric = rep.dt_metric;
    std::snprintf(out->metric_name, sizeof(out->metric_name), "%s", rep.metric_name.c_str());
    return static_cast<int>(RENTT_OK);
  });
}

int rentt_fi_csv(rentt_tree* tree, const rentt_network* net, const rentt_dataset* ds,
                 const char* scope, long sample_index, char** out_csv) {
  return guarded([&] {
    const rentt::Network* np = net != nullptr ? &net->net : nullptr;
    const std::string s = scope != nullptr ? scope : "";
    const int T = tree->tree.time_steps();
    std::vector<std::vector<double>> seq_rows;
    const std::vector<std::vector<double>>* rows_ptr = &ds->rows;
    if (T > 1) {
      const size_t per_slice_raw = tree->tree.stacked_input_dim() / T - 1;
      for (const auto& f : ds->ds.features)
        seq_rows.push_back(augment_features(f.data(), f.size(), per_slice_raw, T));
      rows_ptr = &seq_rows;
    }
    std::string csv;
    if (s == "local") {
      if (sample_index < 0 || static_cast<size_t>(sample_index) >= rows_ptr->size())
        return fail(RENTT_ERR_VALUE, "local scope requires a valid sample index");
      csv = rentt::fi_csv_local(rentt::fi_local(tree->tree, (*rows_ptr)[sample_index], np));
    } else if (s == "regional") {
      csv = rentt::fi_csv_regional(rentt::fi_regional(tree->tree, *rows_ptr, np));
    } else if (s == "global") {
      csv = rentt::fi_csv_global(rentt::fi_global(tree->tree, *rows_ptr, np));
    } else {
      return fail(RENTT_ERR_VALUE, "scope must be local, regional, or global");
    }
    *out_csv = dup_string(csv);
    return static_cast<int>(RENTT_OK);
  });
}

int rentt_bench_csv(const int* grid, size_t grid_len, uint64_t seed, int repeats,
                    char** out_csv) {
  return guarded([&] {
    rentt::BenchConfig cfg;
    cfg.seed = seed;
    cfg.repeats = repeats;
    const std::vector<int> g(grid, grid + grid_len);
    *out_csv = dup_string(rentt::bench_csv(rentt::bench_transform(g, cfg)));
    return static_cast<int>(RENTT_OK);
  });
}

int rentt_fit_power_law(const double* xs, const double* ys, size_t n, double x_min,
                        double x_max, rentt_power_law* out) {
  return guarded([&] {
    const rentt::PowerLawFit fit = rentt::fit_power_law(
        std::vector<double>(xs, xs + n), std::vector<double>(ys, ys + n), x_min, x_max);
    out->exponent = fit.exponent;
    out->coefficient = fit.coefficient;
    out->residual = fit.residual;
    return static_cast<int>(RENTT_OK);
  });
}

}  // extern "C"
