// Command-line front end. Talks to the engine exclusively through the C API
// so it doubles as a smoke test of the shared-library surface.
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rentt.h"

namespace {

bool g_verbose = false;

void log_line(const std::string& msg) {
  if (g_verbose) std::cerr << "[rentt] " << msg << "\n";
}

/// Maps an API status to the documented process exit code: 2 for schema
/// violations, 3 for empty datasets, 1 for everything else.
int exit_code_for(int status) {
  if (status == RENTT_ERR_SCHEMA) return 2;
  if (status == RENTT_ERR_EMPTY_DATASET) return 3;
  return 1;
}

[[noreturn]] void die(int status) {
  std::cerr << "error: " << rentt_last_error() << "\n";
  std::exit(exit_code_for(status));
}

struct NetworkHandle {
  rentt_network* ptr = nullptr;
  ~NetworkHandle() { rentt_network_free(ptr); }
};
struct DatasetHandle {
  rentt_dataset* ptr = nullptr;
  ~DatasetHandle() { rentt_dataset_free(ptr); }
};
struct TreeHandle {
  rentt_tree* ptr = nullptr;
  ~TreeHandle() { rentt_tree_free(ptr); }
};

void load_model(const std::string& path, NetworkHandle& net) {
  const int status = rentt_network_load(path.c_str(), &net.ptr);
  if (status != RENTT_OK) die(status);
  log_line("loaded model " + path);
}

void load_data(const std::string& path, DatasetHandle& ds) {
  const int status = rentt_dataset_load(path.c_str(), &ds.ptr);
  if (status != RENTT_OK) die(status);
  log_line("loaded dataset " + path + " (" + std::to_string(rentt_dataset_rows(ds.ptr)) +
           " rows)");
}

void load_tree(const std::string& path, TreeHandle& tree) {
  const int status = rentt_tree_load(path.c_str(), &tree.ptr);
  if (status != RENTT_OK) die(status);
  log_line("loaded tree " + path);
}

int cmd_transform(const std::string& model, const std::string& data, const std::string& out) {
  NetworkHandle net;
  DatasetHandle ds;
  TreeHandle tree;
  load_model(model, net);
  load_data(data, ds);

  int status = rentt_transform(net.ptr, ds.ptr, &tree.ptr);
  if (status != RENTT_OK) die(status);
  status = rentt_tree_save(tree.ptr, out.c_str());
  if (status != RENTT_OK) die(status);

  const size_t levels = rentt_tree_levels(tree.ptr);
  std::cout << "nodes: " << rentt_tree_nodes(tree.ptr) << "\n";
  std::cout << "leaves: " << rentt_tree_leaves(tree.ptr) << "\n";
  std::cout << "levels: " << levels << "\n";
  for (size_t d = 1; d <= levels; ++d)
    std::cout << "level " << d << ": " << rentt_tree_nodes_at_depth(tree.ptr, static_cast<int>(d))
              << " nodes\n";
  std::cout << "wrote " << out << "\n";
  return 0;
}

int cmd_verify(const std::string& model, const std::string& tree_path, const std::string& data,
               double tol, bool strict) {
  NetworkHandle net;
  DatasetHandle ds;
  TreeHandle tree;
  load_model(model, net);
  load_tree(tree_path, tree);
  load_data(data, ds);

  rentt_equivalence_report rep{};
  const int status = rentt_verify(net.ptr, tree.ptr, ds.ptr, tol, strict ? 0 : 1, &rep);
  if (status != RENTT_OK) die(status);

  std::cout << "samples_checked: " << rep.samples_checked << "\n";
  std::cout << "max_abs_diff: " << rep.max_abs_diff << "\n";
  std::cout << "max_rel_diff: " << rep.max_rel_diff << "\n";
  std::cout << "mismatches: " << rep.mismatch_count << "\n";
  std::cout << "unseen_patterns: " << rep.unseen_count << "\n";
  if (rep.metric_name[0] != '\0')
    std::cout << rep.metric_name << ": nn=" << rep.nn_metric << " dt=" << rep.dt_metric << "\n";
  if (rep.mismatch_count > 0 || (strict && rep.unseen_count > 0)) return 1;
  return 0;
}

int cmd_fi(const std::string& tree_path, const std::string& data, const std::string& model,
           const std::string& scope, long sample, long cls, const std::string& out) {
  TreeHandle tree;
  DatasetHandle ds;
  NetworkHandle net;
  load_tree(tree_path, tree);
  load_data(data, ds);
  if (!model.empty()) load_model(model, net);

  char* csv = nullptr;
  const int status = rentt_fi_csv(tree.ptr, net.ptr, ds.ptr, scope.c_str(), sample, &csv);
  if (status != RENTT_OK) die(status);
  std::string text(csv);
  rentt_string_free(csv);

  // Optional per-class view: keep the header and matching rows only.
  if (cls >= 0) {
    std::istringstream in(text);
    std::ostringstream filtered;
    std::string line;
    std::getline(in, line);
    filtered << line << "\n";
    const std::string needle = "," + std::to_string(cls) + ",";
    while (std::getline(in, line)) {
      // class is the third field
      const size_t first = line.find(',');
      const size_t second = line.find(',', first + 1);
      if (line.compare(second, needle.size(), needle) == 0) filtered << line << "\n";
    }
    text = filtered.str();
  }

  if (!out.empty()) {
    std::ofstream f(out, std::ios::binary);
    if (!f) {
      std::cerr << "error: cannot open " << out << " for writing\n";
      return 1;
    }
    f << text;
    std::cout << "wrote " << out << "\n";
  }
  std::cout << text;
  return 0;
}

int cmd_bench(const std::vector<int>& grid, uint64_t seed, int repeats, const std::string& out) {
  char* csv = nullptr;
  const int status = rentt_bench_csv(grid.data(), grid.size(), seed, repeats, &csv);
  if (status != RENTT_OK) die(status);
  std::string text(csv);
  rentt_string_free(csv);
  if (!out.empty()) {
    std::ofstream f(out, std::ios::binary | std::ios::app);  // append-safe
    if (!f) {
      std::cerr << "error: cannot open " << out << " for writing\n";
      return 1;
    }
    f << text;
    std::cout << "appended to " << out << "\n";
  }
  std::cout << text;
  return 0;
}

int cmd_fit(const std::string& csv_path, const std::string& metric, double x_min, double x_max) {
  std::ifstream in(csv_path, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot open " << csv_path << "\n";
    return 2;
  }
  std::string line;
  std::vector<double> xs, ys;
  bool saw_header = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.rfind("x,", 0) == 0) {
      saw_header = true;
      continue;
    }
    if (!saw_header) {
      std::cerr << "error: " << csv_path << ": missing header row\n";
      return 2;
    }
    double x, tm, ts, mm, ms;
    char c;
    std::istringstream ls(line);
    if (!(ls >> x >> c >> tm >> c >> ts >> c >> mm >> c >> ms)) {
      std::cerr << "error: " << csv_path << ": malformed row: " << line << "\n";
      return 2;
    }
    xs.push_back(x);
    ys.push_back(metric == "mem" ? mm : tm);
  }

  rentt_power_law fit{};
  const int status =
      rentt_fit_power_law(xs.data(), ys.data(), xs.size(), x_min, x_max, &fit);
  if (status != RENTT_OK) die(status);
  std::cout << "metric: " << metric << "\n";
  std::cout << "exponent: " << fit.exponent << "\n";
  std::cout << "coefficient: " << fit.coefficient << "\n";
  std::cout << "residual: " << fit.residual << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  const char* log_env = std::getenv("RENTT_LOG");
  g_verbose = log_env != nullptr && *log_env != '\0' && std::strcmp(log_env, "0") != 0;

  CLI::App app{"Exact neural-network-to-decision-tree transformation"};
  app.require_subcommand(1);

  std::string model, data, tree_path, out, scope = "global", metric = "time";
  double tol = 1e-9, x_min = 0.0, x_max = 1e18;
  bool strict = false, elastic = false;
  long sample = -1, cls = -1;
  std::vector<int> grid{16, 32, 64, 128, 256};
  uint64_t seed = 42;
  int repeats = 3, threads = 1;

  auto* t = app.add_subcommand("transform", "Build the equivalent decision tree");
  t->add_option("--model", model)->required();
  t->add_option("--data", data)->required();
  t->add_option("--out", out)->required();
  t->add_flag("--strict", strict);
  t->add_flag("--elastic", elastic);
  t->add_option("--threads", threads);

  auto* v = app.add_subcommand("verify", "Check network/tree equivalence");
  v->add_option("--model", model)->required();
  v->add_option("--tree", tree_path)->required();
  v->add_option("--data", data)->required();
  v->add_option("--tol", tol);
  v->add_flag("--strict", strict);
  v->add_flag("--elastic", elastic);

  auto* f = app.add_subcommand("fi", "Feature importance report");
  f->add_option("--tree", tree_path)->required();
  f->add_option("--data", data)->required();
  f->add_option("--model", model);
  f->add_option("--scope", scope)->check(CLI::IsMember({"local", "regional", "global"}));
  f->add_option("--sample", sample);
  f->add_option("--class", cls);
  f->add_option("--out", out);

  auto* b = app.add_subcommand("bench", "Scaling benchmark over hidden sizes");
  b->add_option("--grid", grid)->delimiter(',');
  b->add_option("--seed", seed);
  b->add_option("--repeats", repeats);
  b->add_option("--threads", threads);
  b->add_option("--out", out);

  auto* ft = app.add_subcommand("fit", "Power-law fit over a bench CSV");
  ft->add_option("--csv", data)->required();
  ft->add_option("--metric", metric)->check(CLI::IsMember({"time", "mem"}));
  ft->add_option("--min", x_min);
  ft->add_option("--max", x_max);

  CLI11_PARSE(app, argc, argv);

  if (t->parsed()) return cmd_transform(model, data, out);
  if (v->parsed()) return cmd_verify(model, tree_path, data, tol, strict);
  if (f->parsed()) {
    if (scope == "local" && sample < 0) {
      std::cerr << "error: --scope local requires --sample\n";
      return 1;
    }
    return cmd_fi(tree_path, data, model, scope, sample, cls, out);
  }
  if (b->parsed()) return cmd_bench(grid, seed, repeats, out);
  if (ft->parsed()) return cmd_fit(data, metric, x_min, x_max);
  return 1;
}
