#include "rentt/feature_importance.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rentt/error.hpp"

namespace rentt {

namespace {

// Non-dummy row/column indices of a leaf matrix. Sequence trees stack T
// slices; each slice keeps its own dummy row/column, which carries the
// intercept rather than a feature.
std::vector<std::size_t> real_indices(std::size_t total, int time_steps) {
  const std::size_t per_slice = total / time_steps;
  std::vector<std::size_t> out;
  out.reserve(total - time_steps);
  for (int t = 0; t < time_steps; ++t)
    for (std::size_t k = 1; k < per_slice; ++k) out.push_back(t * per_slice + k);
  return out;
}

FiTable zeros(std::size_t rows, std::size_t cols) {
  return FiTable(rows, std::vector<double>(cols, 0.0));
}

double sign(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

LocalFi local_from_leaf(const DecisionTree& tree, std::size_t leaf,
                        const std::vector<double>& x0) {
  const Matrix& eff = *tree.nodes()[leaf].decision;
  const auto classes = real_indices(eff.rows(), tree.time_steps());
  const auto features = real_indices(eff.cols(), tree.time_steps());

  LocalFi fi;
  fi.leaf = leaf;
  fi.leaf_id = tree.nodes()[leaf].id;
  fi.contribution = zeros(classes.size(), features.size());
  fi.effect = zeros(classes.size(), features.size());
  fi.intercept.assign(classes.size(), 0.0);
  for (std::size_t l = 0; l < classes.size(); ++l) {
    for (std::size_t j = 0; j < features.size(); ++j) {
      fi.effect[l][j] = eff(classes[l], features[j]);
      fi.contribution[l][j] = fi.effect[l][j] * x0[features[j]];
    }
    // Dummy columns see a constant 1, so their weights are the intercept.
    for (std::size_t c = 0; c < eff.cols(); ++c)
      if (c % (eff.cols() / tree.time_steps()) == 0)
        fi.intercept[l] += eff(classes[l], c) * x0[c];
  }
  return fi;
}

}  // namespace

LocalFi fi_local(DecisionTree& tree, const std::vector<double>& x0, const Network* net) {
  const std::size_t leaf = (net != nullptr) ? tree.append_path(*net, x0) : tree.route(x0);
  return local_from_leaf(tree, leaf, x0);
}

std::vector<RegionalFi> fi_regional(DecisionTree& tree,
                                    const std::vector<std::vector<double>>& rows,
                                    const Network* net) {
  if (rows.empty()) throw EmptyDatasetError("fi_regional: empty dataset");

  // Leaf index -> routed rows, preserving leaf creation order.
  std::vector<std::size_t> order;
  std::vector<std::vector<std::size_t>> members(tree.node_count());
  for (std::size_t s = 0; s < rows.size(); ++s) {
    const std::size_t leaf = (net != nullptr) ? tree.append_path(*net, rows[s])
                                              : tree.route(rows[s]);
    if (leaf >= members.size()) members.resize(tree.node_count());
    if (members[leaf].empty()) order.push_back(leaf);
    members[leaf].push_back(s);
  }
  std::sort(order.begin(), order.end());

  std::vector<RegionalFi> out;
  out.reserve(order.size());
  for (const std::size_t leaf : order) {
    const Matrix& eff = *tree.nodes()[leaf].decision;
    const auto classes = real_indices(eff.rows(), tree.time_steps());
    const auto features = real_indices(eff.cols(), tree.time_steps());

    RegionalFi fi;
    fi.leaf = leaf;
    fi.region_id = tree.nodes()[leaf].id;
    fi.support = members[leaf].size();
    fi.contribution = zeros(classes.size(), features.size());
    fi.signed_mean = zeros(classes.size(), features.size());
    fi.direction = zeros(classes.size(), features.size());
    fi.effect = zeros(classes.size(), features.size());

    for (std::size_t l = 0; l < classes.size(); ++l)
      for (std::size_t j = 0; j < features.size(); ++j) {
        const double e = eff(classes[l], features[j]);
        fi.effect[l][j] = e;
        double abs_sum = 0.0, signed_sum = 0.0;
        for (const std::size_t s : members[leaf]) {
          const double c = e * rows[s][features[j]];
          abs_sum += std::abs(c);
          signed_sum += c;
        }
        fi.contribution[l][j] = abs_sum / fi.support;
        fi.signed_mean[l][j] = signed_sum / fi.support;
        fi.direction[l][j] = sign(fi.signed_mean[l][j]);
      }
    out.push_back(std::move(fi));
  }
  return out;
}

GlobalFi fi_global(DecisionTree& tree, const std::vector<std::vector<double>>& rows,
                   const Network* net) {
  const std::vector<RegionalFi> regional = fi_regional(tree, rows, net);
  if (regional.empty()) throw EmptyDatasetError("fi_global: no populated regions");

  const std::size_t n_cls = regional.front().contribution.size();
  const std::size_t n_feat = regional.front().contribution.front().size();
  GlobalFi g;
  g.regions = regional.size();
  g.contribution = zeros(n_cls, n_feat);
  g.effect = zeros(n_cls, n_feat);
  g.direction = zeros(n_cls, n_feat);

  FiTable signed_mean = zeros(n_cls, n_feat);
  for (const RegionalFi& r : regional)
    for (std::size_t l = 0; l < n_cls; ++l)
      for (std::size_t j = 0; j < n_feat; ++j) {
        g.contribution[l][j] += r.contribution[l][j] / g.regions;
        g.effect[l][j] += r.effect[l][j] / g.regions;
        signed_mean[l][j] += r.signed_mean[l][j] / g.regions;
      }
  for (std::size_t l = 0; l < n_cls; ++l)
    for (std::size_t j = 0; j < n_feat; ++j) g.direction[l][j] = sign(signed_mean[l][j]);
  return g;
}

FiComparison fi_compare(const FiTable& a, const FiTable& b) {
  if (a.size() != b.size()) throw ShapeError("fi_compare: table row counts differ");
  double sq_sum = 0.0, mag_sum = 0.0;
  std::size_t n = 0;
  for (std::size_t l = 0; l < a.size(); ++l) {
    if (a[l].size() != b[l].size()) throw ShapeError("fi_compare: table column counts differ");
    for (std::size_t j = 0; j < a[l].size(); ++j) {
      const double d = a[l][j] - b[l][j];
      sq_sum += d * d;
      mag_sum += std::abs(a[l][j]) + std::abs(b[l][j]);
      ++n;
    }
  }
  if (n == 0) throw ShapeError("fi_compare: empty tables");
  FiComparison cmp;
  cmp.rmse = std::sqrt(sq_sum / n);
  const double pooled_mean = mag_sum / (2.0 * n);
  cmp.relative_error_pct = (cmp.rmse == 0.0) ? 0.0 : 100.0 * cmp.rmse / pooled_mean;
  return cmp;
}

namespace {

constexpr const char* kHeader = "scope,region_id,class,feature,contribution,effect,direction,support\n";

void append_rows(std::ostringstream& os, const std::string& scope, const std::string& region,
                 const FiTable& contribution, const FiTable& effect, const FiTable& direction,
                 const std::string& support) {
  os.precision(17);
  for (std::size_t l = 0; l < contribution.size(); ++l)
    for (std::size_t j = 0; j < contribution[l].size(); ++j)
      os << scope << ',' << region << ',' << l << ',' << j << ',' << contribution[l][j] << ','
         << effect[l][j] << ',' << (direction.empty() ? 0.0 : direction[l][j]) << ','
         << support << '\n';
}

}  // namespace

std::string fi_csv_local(const LocalFi& fi) {
  std::ostringstream os;
  os << kHeader;
  FiTable direction = fi.contribution;
  for (auto& row : direction)
    for (double& v : row) v = sign(v);
  append_rows(os, "local", std::to_string(fi.leaf_id), fi.contribution, fi.effect, direction,
              "1");
  return os.str();
}

std::string fi_csv_regional(const std::vector<RegionalFi>& fi) {
  std::ostringstream os;
  os << kHeader;
  for (const RegionalFi& r : fi)
    append_rows(os, "regional", std::to_string(r.region_id), r.contribution, r.effect,
                r.direction, std::to_string(r.support));
  return os.str();
}

std::string fi_csv_global(const GlobalFi& fi) {
  std::ostringstream os;
  os << kHeader;
  append_rows(os, "global", "-", fi.contribution, fi.effect, fi.direction,
              std::to_string(fi.regions));
  return os.str();
}

}  // namespace rentt
