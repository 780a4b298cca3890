#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rentt/activation.hpp"
#include "rentt/matrix.hpp"
#include "rentt/network.hpp"

namespace rentt {

/// Region index per non-dummy neuron (per timestep for recurrent layers,
/// per pooling region for pool layers), in layer-then-time-then-neuron order.
using ActivationPattern = std::vector<std::uint16_t>;

enum class LevelKind { kDense, kConv, kPool, kRecurrent };

/// One tree level = one decision. Carries everything routing needs so a
/// serialized tree can be queried without the source network.
struct LevelInfo {
  int layer = 0;  // index into Network::layers
  LevelKind kind = LevelKind::kDense;
  int row = 0;       // row of the node's decision matrix (pool: region index)
  int neuron = 0;    // 1-based, reporting only
  int timestep = 1;  // 1-based
  int branching = 2;
  bool layer_first = false, layer_last = false;
  bool step_first = false, step_last = false;  // recurrent sub-boundaries
  PiecewiseLinearActivation activation;  // empty for pool levels
  std::vector<int> pool_region;          // flat 0-based indices, pool only
};

struct EquivalenceReport {
  std::size_t samples_checked = 0;
  double max_abs_diff = 0.0;
  double max_rel_diff = 0.0;
  std::size_t mismatch_count = 0;  // relative diff above tolerance
  std::size_t unseen_count = 0;    // strict-mode routing misses
  double tolerance = 0.0;
  std::string metric_name;  // "accuracy" or "mse", empty without labels
  double nn_metric = 0.0;
  double dt_metric = 0.0;
};

/// Multivariate decision tree exactly equivalent to the source network on
/// every input whose activation pattern has a materialized path.
class DecisionTree {
 public:
  struct Node {
    std::uint64_t id = 0;
    int depth = 0;
    ActivationPattern prefix;
    // Decision matrix for this node's pending level: the layer's effective
    // preactivation map (for pool levels, the layer's input map). At a leaf
    // this is the final effective matrix.
    std::shared_ptr<const Matrix> decision;
    // Recurrent bookkeeping, empty elsewhere: the layer's stacked input map
    // and the output slices accumulated from completed timesteps.
    std::shared_ptr<const Matrix> rnn_input_map;
    std::shared_ptr<const Matrix> rnn_out_acc;
    std::map<int, std::size_t> children;  // branch -> node index
    std::size_t parent = 0;
    int branch_from_parent = -1;
    std::vector<std::size_t> samples;
  };

  /// Algorithm: one routed pass per dataset row, materializing only the
  /// branches whose activation patterns occur (ante-hoc pruning). Effective
  /// matrices are computed once per distinct prefix; mid-layer nodes share
  /// their boundary ancestor's matrix. Deterministic for a fixed row order.
  static DecisionTree transform(const Network& net,
                                const std::vector<std::vector<double>>& rows);

  /// Routes x0 root-to-leaf and evaluates the leaf's effective matrix. With
  /// a network, unseen patterns are appended on the fly (elastic mode);
  /// without one they raise RoutingError. Output matches Network::forward.
  std::vector<double> predict(const std::vector<double>& x0, const Network* net = nullptr);
  std::vector<double> predict_const(const std::vector<double>& x0) const;

  /// Materializes x0's path (idempotent) and returns the leaf node index.
  std::size_t append_path(const Network& net, const std::vector<double>& x0);

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t leaf_count() const;
  std::size_t nodes_at_depth(int depth) const;
  std::size_t total_levels() const { return levels_.size(); }
  const std::vector<LevelInfo>& levels() const { return levels_; }
  const std::vector<Node>& nodes() const { return nodes_; }
  const Node& root() const { return nodes_.front(); }
  int max_branching() const { return max_branching_; }
  std::size_t stacked_input_dim() const { return input_dim_; }
  int time_steps() const { return time_steps_; }
  FinalActivation final_activation() const { return final_activation_; }

  /// Leaf reached by x0 (strict). Throws RoutingError on a missing path.
  std::size_t route(const std::vector<double>& x0) const;

  friend class TreeIo;  // serialization (io.cpp)

 private:
  DecisionTree() = default;

  std::size_t make_root(const Network& net);
  std::size_t make_child(const Network& net, std::size_t parent_idx, int branch);
  void enter_layer(const Network& net, Node& node, std::size_t li,
                   std::shared_ptr<const Matrix> eff_in);
  const Matrix& conv_matrix(const Network& net, std::size_t li);
  std::size_t insert(const Network& net, const std::vector<double>& x0,
                     std::optional<std::size_t> sample_idx);
  int decide(const Node& node, const std::vector<double>& x0) const;
  std::vector<double> leaf_output(const Node& leaf, const std::vector<double>& x0) const;

  std::vector<LevelInfo> levels_;
  std::vector<Node> nodes_;
  std::map<std::size_t, Matrix> conv_cache_;  // layer index -> super conv matrix
  int max_branching_ = 1;
  std::size_t input_dim_ = 0;  // stacked, augmented
  int time_steps_ = 1;
  FinalActivation final_activation_ = FinalActivation::kNone;
};

/// Full activation pattern of x0, recorded from the reference forward pass
/// (independent of the tree's matrix route).
ActivationPattern activation_pattern(const Network& net, const std::vector<double>& x0);

/// Effective matrix chain folded from a pattern alone: index `upto_layer`
/// selects how many weight matrices are folded (0 -> the first layer's
/// weights). Result maps the raw input to layer upto_layer+1 preactivations.
Matrix effective_matrix(const Network& net, const ActivationPattern& pattern, int upto_layer);

/// Region index chosen by one decision: z = row . x0 against the breakpoints.
int decision_rule(const std::vector<double>& effective_row, const std::vector<double>& x0,
                  const PiecewiseLinearActivation& act);

/// Tree level of (layer i, neuron j), 1-based, from augmented layer sizes.
int level_of(const std::vector<int>& dims, int i, int j);

/// Full-tree node-count bound at level (i, j): r_i^j * prod over earlier
/// layers of r^(n-1) (non-dummy exponents).
double node_count(const std::vector<int>& dims, const std::vector<int>& regions, int i, int j);

/// Compares network and tree outputs over a dataset; metrics use labels when
/// given (argmax accuracy for multi-output, MSE otherwise).
EquivalenceReport verify_equivalence(const Network& net, DecisionTree& tree,
                                     const std::vector<std::vector<double>>& rows,
                                     const std::vector<double>* labels, double tolerance,
                                     bool elastic);

}  // namespace rentt
