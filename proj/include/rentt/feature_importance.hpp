#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rentt/network.hpp"
#include "rentt/tree.hpp"

namespace rentt {

/// Per-class, per-feature table. Rows index output classes (1..n_out-1 of
/// the augmented output, reported 0-based), columns index raw input features
/// (excluding the dummy).
using FiTable = std::vector<std::vector<double>>;

struct LocalFi {
  std::size_t leaf = 0;  // node index within the tree
  std::uint64_t leaf_id = 0;
  FiTable contribution;           // E_{l,j} * x0[j]
  FiTable effect;                 // E_{l,j}
  std::vector<double> intercept;  // column 0 of the leaf matrix, per class
};

struct RegionalFi {
  std::size_t leaf = 0;
  std::uint64_t region_id = 0;
  FiTable contribution;  // mean |E_{l,j} * x[j]| over routed samples
  FiTable signed_mean;   // mean of the signed products (carries the sign)
  FiTable direction;     // sign(signed_mean), in {-1, 0, +1}
  FiTable effect;
  std::size_t support = 0;  // routed sample count
};

struct GlobalFi {
  FiTable contribution;  // unweighted mean of regional contributions
  FiTable direction;     // sign of the mean regional signed product
  FiTable effect;
  std::size_t regions = 0;  // populated regions averaged over
};

struct FiComparison {
  double rmse = 0.0;
  double relative_error_pct = 0.0;  // rmse / pooled mean magnitude, in %
};

/// Local importance of one input. With a network, unseen patterns are
/// appended; without one, routing misses raise RoutingError.
LocalFi fi_local(DecisionTree& tree, const std::vector<double>& x0,
                 const Network* net = nullptr);

/// Regional importance per populated leaf, in leaf creation order. Rows are
/// routed (appending with a network); regions left empty are omitted.
std::vector<RegionalFi> fi_regional(DecisionTree& tree,
                                    const std::vector<std::vector<double>>& rows,
                                    const Network* net = nullptr);

/// Unweighted mean of the regional tables over populated regions.
GlobalFi fi_global(DecisionTree& tree, const std::vector<std::vector<double>>& rows,
                   const Network* net = nullptr);

FiComparison fi_compare(const FiTable& a, const FiTable& b);

/// CSV rows (scope, region_id or -, class, feature, contribution, effect,
/// direction, support), header included.
std::string fi_csv_local(const LocalFi& fi);
std::string fi_csv_regional(const std::vector<RegionalFi>& fi);
std::string fi_csv_global(const GlobalFi& fi);

}  // namespace rentt
