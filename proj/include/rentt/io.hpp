#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rentt/network.hpp"
#include "rentt/tree.hpp"

namespace rentt {

/// Tabular input data. Features exclude the dummy coordinate; use
/// augmented_rows() to prepend it.
struct Dataset {
  std::vector<std::string> columns;  // feature column names
  std::vector<std::vector<double>> features;
  std::optional<std::vector<double>> labels;

  std::size_t size() const { return features.size(); }
  std::vector<std::vector<double>> augmented_rows() const;
};

/// Loads the model JSON (weights unaugmented on disk, augmented here).
/// Throws SchemaError with a path-precise message on any contract violation.
Network load_network(const std::string& path);
Network parse_network(const std::string& json_text);

/// Loads a CSV; a header row is required. A column named "label" or
/// "target" becomes the labels; everything else must parse as a finite
/// double. Throws SchemaError on format errors, EmptyDatasetError on a
/// header-only file.
Dataset load_dataset(const std::string& path);
Dataset parse_dataset(const std::string& csv_text);

/// Tree JSON serialization. Byte-deterministic: key order is fixed and
/// nodes are emitted in creation order with full double precision.
class TreeIo {
 public:
  static std::string to_json(const DecisionTree& tree);
  static DecisionTree from_json(const std::string& json_text);
  static void save(const DecisionTree& tree, const std::string& path);
  static DecisionTree load(const std::string& path);
};

}  // namespace rentt
