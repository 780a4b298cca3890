#include "rentt/tree.hpp"

#include <algorithm>
#include <cmath>

#include "rentt/convpool.hpp"
#include "rentt/error.hpp"
#include "rentt/recurrent.hpp"

namespace rentt {

namespace {

std::vector<LevelInfo> build_levels(const Network& net) {
  std::vector<LevelInfo> levels;
  const int T = net.time_steps;
  for (std::size_t li = 0; li < net.layers.size(); ++li) {
    if (const auto* d = std::get_if<DenseLayer>(&net.layers[li])) {
      const int n = static_cast<int>(d->weights.rows());
      for (int t = 1; t <= T; ++t)
        for (int j = 1; j < n; ++j) {
          LevelInfo lv;
          lv.layer = static_cast<int>(li);
          lv.kind = LevelKind::kDense;
          lv.row = (t - 1) * n + j;
          lv.neuron = j;
          lv.timestep = t;
          lv.branching = static_cast<int>(d->activation.regions());
          lv.layer_first = (t == 1 && j == 1);
          lv.layer_last = (t == T && j == n - 1);
          lv.activation = d->activation;
          levels.push_back(std::move(lv));
        }
    } else if (const auto* c = std::get_if<ConvLayer>(&net.layers[li])) {
      const int n = c->out_dim();
      for (int j = 1; j < n; ++j) {
        LevelInfo lv;
        lv.layer = static_cast<int>(li);
        lv.kind = LevelKind::kConv;
        lv.row = j;
        lv.neuron = j;
        lv.branching = static_cast<int>(c->activation.regions());
        lv.layer_first = (j == 1);
        lv.layer_last = (j == n - 1);
        lv.activation = c->activation;
        levels.push_back(std::move(lv));
      }
    } else if (const auto* p = std::get_if<PoolLayer>(&net.layers[li])) {
      for (std::size_t k = 0; k < p->regions.size(); ++k) {
        LevelInfo lv;
        lv.layer = static_cast<int>(li);
        lv.kind = LevelKind::kPool;
        lv.row = static_cast<int>(k);
        lv.neuron = static_cast<int>(k) + 1;
        lv.branching = static_cast<int>(p->regions[k].size());
        lv.layer_first = (k == 0);
        lv.layer_last = (k + 1 == p->regions.size());
        lv.pool_region = p->regions[k];
        levels.push_back(std::move(lv));
      }
    } else {
      const auto& r = std::get<RecurrentLayer>(net.layers[li]);
      const int n = static_cast<int>(r.input_weights.rows());
      for (int t = 1; t <= T; ++t)
        for (int j = 1; j < n; ++j) {
          LevelInfo lv;
          lv.layer = static_cast<int>(li);
          lv.kind = LevelKind::kRecurrent;
          lv.row = j;
          lv.neuron = j;
          lv.timestep = t;
          lv.branching = static_cast<int>(r.activation.regions());
          lv.layer_first = (t == 1 && j == 1);
          lv.layer_last = (t == T && j == n - 1);
          lv.step_first = (j == 1);
          lv.step_last = (j == n - 1);
          lv.activation = r.activation;
          levels.push_back(std::move(lv));
        }
    }
  }
  return levels;
}

std::size_t layer_level_count(const Network& net, std::size_t li) {
  const std::size_t n = layer_out_dim(net.layers[li]) - 1;
  if (std::holds_alternative<PoolLayer>(net.layers[li]))
    return std::get<PoolLayer>(net.layers[li]).regions.size();
  if (std::holds_alternative<RecurrentLayer>(net.layers[li]) ||
      std::holds_alternative<DenseLayer>(net.layers[li]))
    return n * net.time_steps;
  return n;
}

/// Block-diagonal replication of a per-slice matrix over T time slices.
Matrix block_diag(const Matrix& m, int T) {
  if (T == 1) return m;
  Matrix out(m.rows() * T, m.cols() * T);
  for (int t = 0; t < T; ++t)
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j)
        out(t * m.rows() + i, t * m.cols() + j) = m(i, j);
  return out;
}

/// Per-slice activation matrices assembled block-diagonally from the layer's
/// T*(n-1) pattern entries (time-major).
Matrix stacked_activation(const std::vector<std::uint16_t>& entries,
                          const PiecewiseLinearActivation& act, int n, int T) {
  if (T == 1) return activation_matrix_from_regions(entries, act);
  Matrix out(static_cast<std::size_t>(n) * T, static_cast<std::size_t>(n) * T);
  for (int t = 0; t < T; ++t) {
    const std::vector<std::uint16_t> slice(entries.begin() + t * (n - 1),
                                           entries.begin() + (t + 1) * (n - 1));
    const Matrix lam = activation_matrix_from_regions(slice, act);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) out(t * n + i, t * n + j) = lam(i, j);
  }
  return out;
}

std::vector<std::uint16_t> tail(const ActivationPattern& prefix, std::size_t count) {
  return {prefix.end() - count, prefix.end()};
}

}  // namespace

std::size_t DecisionTree::leaf_count() const {
  std::size_t n = 0;
  for (const Node& node : nodes_)
    if (node.depth == static_cast<int>(levels_.size())) ++n;
  return n;
}

std::size_t DecisionTree::nodes_at_depth(int depth) const {
  std::size_t n = 0;
  for (const Node& node : nodes_)
    if (node.depth == depth) ++n;
  return n;
}

std::size_t DecisionTree::make_root(const Network& net) {
  Node root;
  root.id = 0;
  root.depth = 0;
  root.parent = 0;

  auto eff = std::make_shared<Matrix>(Matrix::identity(input_dim_));
  std::size_t li = 0;
  // Degenerate layers (only the dummy neuron) contribute no levels; fold
  // them straight into the running effective matrix.
  while (li < net.layers.size() && layer_level_count(net, li) == 0) {
    if (const auto* d = std::get_if<DenseLayer>(&net.layers[li]))
      eff = std::make_shared<Matrix>(block_diag(d->weights, time_steps_) * *eff);
    else
      throw UnsupportedError("degenerate non-dense layers are not supported");
    ++li;
  }
  if (li == net.layers.size()) {
    root.decision = eff;  // zero-level network: the root is the leaf
  } else {
    enter_layer(net, root, li, eff);
  }
  nodes_.push_back(std::move(root));
  return 0;
}

void DecisionTree::enter_layer(const Network& net, Node& node, std::size_t li,
                               std::shared_ptr<const Matrix> eff_in) {
  if (const auto* d = std::get_if<DenseLayer>(&net.layers[li])) {
    node.decision = std::make_shared<Matrix>(block_diag(d->weights, time_steps_) * *eff_in);
  } else if (std::holds_alternative<ConvLayer>(net.layers[li])) {
    const Matrix& omega = conv_matrix(net, li);
    node.decision = std::make_shared<Matrix>(omega * *eff_in);
  } else if (std::holds_alternative<PoolLayer>(net.layers[li])) {
    node.decision = std::move(eff_in);  // pool decisions compare input rows
  } else {
    const auto& r = std::get<RecurrentLayer>(net.layers[li]);
    const std::size_t n_in = r.input_weights.cols();
    node.rnn_input_map = eff_in;
    node.decision = std::make_shared<Matrix>(r.input_weights * eff_in->row_block(0, n_in));
    node.rnn_out_acc = std::make_shared<Matrix>(0, input_dim_);
  }
}

const Matrix& DecisionTree::conv_matrix(const Network& net, std::size_t li) {
  auto it = conv_cache_.find(li);
  if (it == conv_cache_.end())
    it = conv_cache_.emplace(li, build_super_conv(std::get<ConvLayer>(net.layers[li]))).first;
  return it->second;
}

std::size_t DecisionTree::make_child(const Network& net, std::size_t parent_idx, int branch) {
  const int depth = nodes_[parent_idx].depth + 1;
  Node child;
  child.parent = parent_idx;
  child.branch_from_parent = branch;
  child.depth = depth;
  child.id = nodes_[parent_idx].id * static_cast<std::uint64_t>(max_branching_) + branch + 1;
  child.prefix = nodes_[parent_idx].prefix;
  child.prefix.push_back(static_cast<std::uint16_t>(branch));

  const Node& parent = nodes_[parent_idx];
  const LevelInfo& decided = levels_[parent.depth];

  if (!decided.layer_last && !(decided.kind == LevelKind::kRecurrent && decided.step_last)) {
    // Mid-layer: the decision matrix is unchanged.
    child.decision = parent.decision;
    child.rnn_input_map = parent.rnn_input_map;
    child.rnn_out_acc = parent.rnn_out_acc;
  } else if (decided.kind == LevelKind::kRecurrent && !decided.layer_last) {
    // Completed one timestep of a recurrent layer; roll the recurrence.
    const auto& r = std::get<RecurrentLayer>(net.layers[decided.layer]);
    const std::size_t n = r.input_weights.rows();
    const std::size_t n_in = r.input_weights.cols();
    const Matrix lam = activation_matrix_from_regions(tail(child.prefix, n - 1), r.activation);
    const Matrix out_slice = lam * *parent.decision;
    Matrix pre = r.input_weights * parent.rnn_input_map->row_block(decided.timestep * n_in, n_in);
    const Matrix rec = r.hidden_weights * out_slice;
    for (std::size_t i = 0; i < pre.rows(); ++i)
      for (std::size_t j = 0; j < pre.cols(); ++j) pre(i, j) += rec(i, j);
    child.decision = std::make_shared<Matrix>(std::move(pre));
    child.rnn_input_map = parent.rnn_input_map;
    child.rnn_out_acc = std::make_shared<Matrix>(parent.rnn_out_acc->vstack(out_slice));
  } else {
    // Completed a whole layer: fold its activation/selection and move on.
    Matrix eff_out;
    if (decided.kind == LevelKind::kPool) {
      const auto& p = std::get<PoolLayer>(net.layers[decided.layer]);
      eff_out = pool_effective_from_pattern(tail(child.prefix, p.regions.size()), p) *
                *parent.decision;
    } else if (decided.kind == LevelKind::kRecurrent) {
      const auto& r = std::get<RecurrentLayer>(net.layers[decided.layer]);
      const std::size_t n = r.input_weights.rows();
      const Matrix lam = activation_matrix_from_regions(tail(child.prefix, n - 1), r.activation);
      eff_out = parent.rnn_out_acc->vstack(lam * *parent.decision);
    } else {
      const PiecewiseLinearActivation& act = decided.activation;
      const std::size_t n = (decided.kind == LevelKind::kDense)
                                ? std::get<DenseLayer>(net.layers[decided.layer]).weights.rows()
                                : std::get<ConvLayer>(net.layers[decided.layer]).out_dim();
      const int T = (decided.kind == LevelKind::kDense) ? time_steps_ : 1;
      const std::size_t count = (n - 1) * T;
      eff_out = stacked_activation(tail(child.prefix, count), act, static_cast<int>(n), T) *
                *parent.decision;
    }

    std::size_t li = static_cast<std::size_t>(decided.layer) + 1;
    auto eff = std::make_shared<Matrix>(std::move(eff_out));
    while (li < net.layers.size() && layer_level_count(net, li) == 0) {
      if (const auto* d = std::get_if<DenseLayer>(&net.layers[li]))
        eff = std::make_shared<Matrix>(block_diag(d->weights, time_steps_) * *eff);
      else
        throw UnsupportedError("degenerate non-dense layers are not supported");
      ++li;
    }
    if (li == net.layers.size()) {
      child.decision = eff;  // leaf: the final effective matrix
    } else {
      enter_layer(net, child, li, eff);
    }
  }

  nodes_.push_back(std::move(child));
  const std::size_t idx = nodes_.size() - 1;
  nodes_[parent_idx].children.emplace(branch, idx);
  return idx;
}

int DecisionTree::decide(const Node& node, const std::vector<double>& x0) const {
  const LevelInfo& lv = levels_[node.depth];
  if (lv.kind == LevelKind::kPool) {
    int best = 0;
    double best_val = node.decision->row_dot(1 + lv.pool_region[0], x0);
    for (std::size_t k = 1; k < lv.pool_region.size(); ++k) {
      const double v = node.decision->row_dot(1 + lv.pool_region[k], x0);
      if (v > best_val) {
        best_val = v;
        best = static_cast<int>(k);
      }
    }
    return best;
  }
  const double z = node.decision->row_dot(lv.row, x0);
  return lv.activation.region_of(z);
}

std::size_t DecisionTree::insert(const Network& net, const std::vector<double>& x0,
                                 std::optional<std::size_t> sample_idx) {
  if (x0.size() != input_dim_) throw ShapeError("tree insert: input dimension mismatch");
  std::size_t cur = 0;
  if (sample_idx) nodes_[cur].samples.push_back(*sample_idx);
  for (std::size_t depth = 0; depth < levels_.size(); ++depth) {
    const int b = decide(nodes_[cur], x0);
    auto it = nodes_[cur].children.find(b);
    const std::size_t next = (it != nodes_[cur].children.end()) ? it->second
                                                                : make_child(net, cur, b);
    if (sample_idx) nodes_[next].samples.push_back(*sample_idx);
    cur = next;
  }
  return cur;
}

DecisionTree DecisionTree::transform(const Network& net,
                                     const std::vector<std::vector<double>>& rows) {
  net.validate();
  if (rows.empty()) throw EmptyDatasetError("transform: empty dataset, no patterns to retain");

  DecisionTree tree;
  tree.levels_ = build_levels(net);
  tree.input_dim_ = net.stacked_input_dim();
  tree.time_steps_ = net.time_steps;
  tree.final_activation_ = net.final_activation;
  tree.max_branching_ = 1;
  for (const LevelInfo& lv : tree.levels_)
    tree.max_branching_ = std::max(tree.max_branching_, lv.branching);

  tree.make_root(net);
  for (std::size_t s = 0; s < rows.size(); ++s) tree.insert(net, rows[s], s);
  return tree;
}

std::size_t DecisionTree::append_path(const Network& net, const std::vector<double>& x0) {
  return insert(net, x0, std::nullopt);
}

std::size_t DecisionTree::route(const std::vector<double>& x0) const {
  if (x0.size() != input_dim_) throw ShapeError("tree route: input dimension mismatch");
  std::size_t cur = 0;
  for (std::size_t depth = 0; depth < levels_.size(); ++depth) {
    const int b = decide(nodes_[cur], x0);
    auto it = nodes_[cur].children.find(b);
    if (it == nodes_[cur].children.end())
      throw RoutingError("tree query hit an unseen activation pattern (strict mode)");
    cur = it->second;
  }
  return cur;
}

std::vector<double> DecisionTree::leaf_output(const Node& leaf,
                                              const std::vector<double>& x0) const {
  std::vector<double> y = *leaf.decision * x0;
  const std::size_t per_slice = y.size() / time_steps_;
  std::vector<double> out;
  out.reserve(y.size());
  for (int t = 0; t < time_steps_; ++t) {
    std::vector<double> slice(y.begin() + t * per_slice, y.begin() + (t + 1) * per_slice);
    apply_final_activation(slice, final_activation_);
    out.insert(out.end(), slice.begin(), slice.end());
  }
  return out;
}

std::vector<double> DecisionTree::predict(const std::vector<double>& x0, const Network* net) {
  if (net == nullptr) return predict_const(x0);
  return leaf_output(nodes_[insert(*net, x0, std::nullopt)], x0);
}

std::vector<double> DecisionTree::predict_const(const std::vector<double>& x0) const {
  return leaf_output(nodes_[route(x0)], x0);
}

ActivationPattern activation_pattern(const Network& net, const std::vector<double>& x0) {
  net.validate();
  if (x0.size() != net.stacked_input_dim())
    throw ShapeError("activation_pattern: input dimension mismatch");

  ActivationPattern pattern;
  const int T = net.time_steps;
  std::vector<std::vector<double>> state(T);
  for (int t = 0; t < T; ++t)
    state[t].assign(x0.begin() + t * net.input_dim, x0.begin() + (t + 1) * net.input_dim);

  for (const Layer& layer : net.layers) {
    if (const auto* r = std::get_if<RecurrentLayer>(&layer)) {
      std::vector<double> h(r->input_weights.rows(), 0.0);
      for (int t = 0; t < T; ++t) {
        std::vector<double> pre = r->input_weights * state[t];
        const std::vector<double> rec = r->hidden_weights * h;
        for (std::size_t k = 0; k < pre.size(); ++k) pre[k] += rec[k];
        for (std::size_t k = 1; k < pre.size(); ++k) {
          const int region = r->activation.region_of(pre[k]);
          pattern.push_back(static_cast<std::uint16_t>(region));
          pre[k] = r->activation.slopes[region] * pre[k] + r->activation.intercepts[region];
        }
        h = pre;
        state[t] = h;
      }
    } else if (const auto* p = std::get_if<PoolLayer>(&layer)) {
      for (int t = 0; t < T; ++t) {
        const auto argmax = pool_pattern(state[t], *p);
        pattern.insert(pattern.end(), argmax.begin(), argmax.end());
        std::vector<double> y(p->out_dim(), 0.0);
        y[0] = 1.0;
        for (std::size_t k = 0; k < p->regions.size(); ++k)
          y[1 + k] = state[t][1 + p->regions[k][argmax[k]]];
        state[t] = std::move(y);
      }
    } else {
      const PiecewiseLinearActivation& act =
          std::holds_alternative<DenseLayer>(layer) ? std::get<DenseLayer>(layer).activation
                                                    : std::get<ConvLayer>(layer).activation;
      for (int t = 0; t < T; ++t) {
        std::vector<double> pre;
        if (const auto* d = std::get_if<DenseLayer>(&layer)) {
          pre = d->weights * state[t];
        } else {
          const auto& c = std::get<ConvLayer>(layer);
          pre = build_super_conv(c) * state[t];
        }
        for (std::size_t k = 1; k < pre.size(); ++k) {
          const int region = act.region_of(pre[k]);
          pattern.push_back(static_cast<std::uint16_t>(region));
          pre[k] = act.slopes[region] * pre[k] + act.intercepts[region];
        }
        state[t] = std::move(pre);
      }
    }
  }
  return pattern;
}

Matrix effective_matrix(const Network& net, const ActivationPattern& pattern, int upto_layer) {
  if (upto_layer < 0 || upto_layer >= static_cast<int>(net.layers.size()))
    throw ContractError("effective_matrix: layer index out of range");
  const int T = net.time_steps;
  Matrix eff = Matrix::identity(net.stacked_input_dim());
  std::size_t cursor = 0;

  for (int k = 0; k <= upto_layer; ++k) {
    const Layer& layer = net.layers[k];
    if (const auto* d = std::get_if<DenseLayer>(&layer)) {
      Matrix pre = block_diag(d->weights, T) * eff;
      if (k == upto_layer) return pre;
      const std::size_t count = (d->weights.rows() - 1) * T;
      if (cursor + count > pattern.size()) throw ContractError("effective_matrix: pattern too short");
      const std::vector<std::uint16_t> entries(pattern.begin() + cursor,
                                               pattern.begin() + cursor + count);
      cursor += count;
      eff = stacked_activation(entries, d->activation, static_cast<int>(d->weights.rows()), T) * pre;
    } else if (const auto* c = std::get_if<ConvLayer>(&layer)) {
      Matrix pre = build_super_conv(*c) * eff;
      if (k == upto_layer) return pre;
      const std::size_t count = c->out_dim() - 1;
      if (cursor + count > pattern.size()) throw ContractError("effective_matrix: pattern too short");
      const std::vector<std::uint16_t> entries(pattern.begin() + cursor,
                                               pattern.begin() + cursor + count);
      cursor += count;
      eff = activation_matrix_from_regions(entries, c->activation) * pre;
    } else if (const auto* p = std::get_if<PoolLayer>(&layer)) {
      const std::size_t count = p->regions.size();
      if (cursor + count > pattern.size()) throw ContractError("effective_matrix: pattern too short");
      const std::vector<std::uint16_t> entries(pattern.begin() + cursor,
                                               pattern.begin() + cursor + count);
      cursor += count;
      eff = pool_effective_from_pattern(entries, *p) * eff;
      if (k == upto_layer) return eff;
    } else {
      const auto& r = std::get<RecurrentLayer>(layer);
      const std::size_t n = r.input_weights.rows();
      const std::size_t count = (n - 1) * T;
      if (cursor + count > pattern.size()) throw ContractError("effective_matrix: pattern too short");
      const std::vector<std::uint16_t> entries(pattern.begin() + cursor,
                                               pattern.begin() + cursor + count);
      std::vector<std::vector<std::uint16_t>> steps;
      for (int t = 1; t < T; ++t)
        steps.emplace_back(entries.begin() + (t - 1) * (n - 1), entries.begin() + t * (n - 1));
      Matrix pre = build_rnn_block(r, steps) * eff;
      if (k == upto_layer) return pre;
      cursor += count;
      eff = stacked_activation(entries, r.activation, static_cast<int>(n), T) * pre;
    }
  }
  return eff;
}

int decision_rule(const std::vector<double>& effective_row, const std::vector<double>& x0,
                  const PiecewiseLinearActivation& act) {
  if (effective_row.size() != x0.size())
    throw ShapeError("decision_rule: row/input length mismatch");
  double z = 0.0;
  for (std::size_t k = 0; k < x0.size(); ++k) z += effective_row[k] * x0[k];
  return act.region_of(z);
}

int level_of(const std::vector<int>& dims, int i, int j) {
  if (i < 1 || i > static_cast<int>(dims.size()) || j < 1 || j >= dims[i - 1])
    throw ContractError("level_of: invalid indices");
  int level = j;
  for (int k = 1; k < i; ++k) level += dims[k - 1] - 1;
  return level;
}

double node_count(const std::vector<int>& dims, const std::vector<int>& regions, int i, int j) {
  if (i < 1 || i > static_cast<int>(dims.size()) || j < 1 || j >= dims[i - 1] ||
      regions.size() != dims.size())
    throw ContractError("node_count: invalid indices");
  double count = std::pow(static_cast<double>(regions[i - 1]), j);
  for (int k = 1; k < i; ++k)
    count *= std::pow(static_cast<double>(regions[k - 1]), dims[k - 1] - 1);
  return count;
}

EquivalenceReport verify_equivalence(const Network& net, DecisionTree& tree,
                                     const std::vector<std::vector<double>>& rows,
                                     const std::vector<double>* labels, double tolerance,
                                     bool elastic) {
  EquivalenceReport report;
  report.tolerance = tolerance;

  double nn_loss = 0.0, dt_loss = 0.0;
  std::size_t nn_correct = 0, dt_correct = 0, scored = 0;

  for (std::size_t s = 0; s < rows.size(); ++s) {
    const std::vector<double> nn = net.forward(rows[s]);
    std::vector<double> dt;
    try {
      dt = elastic ? tree.predict(rows[s], &net) : tree.predict_const(rows[s]);
    } catch (const RoutingError&) {
      ++report.unseen_count;
      continue;
    }
    ++report.samples_checked;
    const std::size_t per_slice = nn.size() / net.time_steps;
    for (std::size_t t = 0; t < static_cast<std::size_t>(net.time_steps); ++t)
      for (std::size_t k = 1; k < per_slice; ++k) {
        const double a = nn[t * per_slice + k], b = dt[t * per_slice + k];
        const double abs_diff = std::abs(a - b);
        const double rel = abs_diff / (1.0 + std::abs(a));
        report.max_abs_diff = std::max(report.max_abs_diff, abs_diff);
        if (rel > report.max_rel_diff) report.max_rel_diff = rel;
      }
    bool mismatch = false;
    for (std::size_t k = 1; k < nn.size(); ++k)
      if (std::abs(nn[k] - dt[k]) > tolerance * (1.0 + std::abs(nn[k]))) mismatch = true;
    if (mismatch) ++report.mismatch_count;

    if (labels != nullptr) {
      ++scored;
      const double label = (*labels)[s];
      if (per_slice > 2) {  // multi-output: argmax accuracy
        auto argmax = [per_slice](const std::vector<double>& v) {
          std::size_t best = 1;
          for (std::size_t k = 2; k < per_slice; ++k)
            if (v[k] > v[best]) best = k;
          return static_cast<double>(best - 1);
        };
        if (argmax(nn) == label) ++nn_correct;
        if (argmax(dt) == label) ++dt_correct;
      } else {
        nn_loss += (nn[1] - label) * (nn[1] - label);
        dt_loss += (dt[1] - label) * (dt[1] - label);
      }
    }
  }

  if (labels != nullptr && scored > 0) {
    const std::size_t per_slice = net.output_dim();
    if (per_slice > 2) {
      report.metric_name = "accuracy";
      report.nn_metric = static_cast<double>(nn_correct) / scored;
      report.dt_metric = static_cast<double>(dt_correct) / scored;
    } else {
      report.metric_name = "mse";
      report.nn_metric = nn_loss / scored;
      report.dt_metric = dt_loss / scored;
    }
  }
  return report;
}

}  // namespace rentt
