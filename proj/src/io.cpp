#include "rentt/io.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "rentt/error.hpp"

namespace rentt {

using json = nlohmann::ordered_json;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError(path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw SchemaError(path + ": " + what);
}

const json& member(const json& obj, const std::string& path, const std::string& key) {
  if (!obj.is_object()) fail(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(path + "." + key, "missing required key");
  return *it;
}

double number_at(const json& v, const std::string& path) {
  if (!v.is_number()) fail(path, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) fail(path, "non-finite number");
  return d;
}

int int_at(const json& v, const std::string& path) {
  if (!v.is_number_integer()) fail(path, "expected an integer");
  return v.get<int>();
}

std::vector<double> vector_at(const json& v, const std::string& path) {
  if (!v.is_array()) fail(path, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    out.push_back(number_at(v[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

/// Unaugmented 2D weight array -> Matrix (raw shape, no dummy yet).
Matrix raw_matrix_at(const json& v, const std::string& path) {
  if (!v.is_array() || v.empty()) fail(path, "expected a non-empty 2D array");
  const std::size_t cols = v[0].is_array() ? v[0].size() : 0;
  if (cols == 0) fail(path + "[0]", "expected a non-empty row");
  Matrix m(v.size(), cols);
  for (std::size_t r = 0; r < v.size(); ++r) {
    const std::string rp = path + "[" + std::to_string(r) + "]";
    if (!v[r].is_array() || v[r].size() != cols) fail(rp, "ragged row");
    for (std::size_t c = 0; c < cols; ++c)
      m(r, c) = number_at(v[r][c], rp + "[" + std::to_string(c) + "]");
  }
  return m;
}

PiecewiseLinearActivation activation_at(const json& v, const std::string& path) {
  if (!v.is_object()) fail(path, "expected an activation object");
  std::string name = "";
  if (v.contains("name")) {
    if (!v["name"].is_string()) fail(path + ".name", "expected a string");
    name = v["name"].get<std::string>();
  }
  PiecewiseLinearActivation act;
  if (v.contains("slopes")) {
    act.name = name.empty() ? "custom" : name;
    act.slopes = vector_at(v["slopes"], path + ".slopes");
    act.intercepts = vector_at(member(v, path, "intercepts"), path + ".intercepts");
    act.breakpoints = vector_at(member(v, path, "breakpoints"), path + ".breakpoints");
  } else if (name == "relu") {
    act = PiecewiseLinearActivation::relu();
  } else if (name == "identity" || name == "linear") {
    act = PiecewiseLinearActivation::identity();
  } else if (name == "abs" || name == "absolute") {
    act = PiecewiseLinearActivation::absolute();
  } else if (name == "leaky_relu") {
    const double alpha = v.contains("alpha") ? number_at(v["alpha"], path + ".alpha") : 0.01;
    act = PiecewiseLinearActivation::leaky_relu(alpha);
  } else if (v.contains("breakpoints")) {
    try {
      act = PiecewiseLinearActivation::tabulate(
          name, vector_at(v["breakpoints"], path + ".breakpoints"));
    } catch (const Error& e) {
      fail(path, e.what());
    }
  } else {
    fail(path, "unknown activation '" + name + "' and no explicit slopes given");
  }
  try {
    act.validate();
  } catch (const Error& e) {
    fail(path, e.what());
  }
  return act;
}

std::array<int, 3> chw_at(const json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 3) fail(path, "expected [channels, height, width]");
  return {int_at(v[0], path + "[0]"), int_at(v[1], path + "[1]"), int_at(v[2], path + "[2]")};
}

Layer parse_layer(const json& v, const std::string& path, int& time_steps) {
  const std::string type = [&] {
    const json& t = member(v, path, "type");
    if (!t.is_string()) fail(path + ".type", "expected a string");
    return t.get<std::string>();
  }();

  if (type == "dense") {
    const Matrix raw = raw_matrix_at(member(v, path, "weights"), path + ".weights");
    const std::vector<double> bias = vector_at(member(v, path, "bias"), path + ".bias");
    if (bias.size() != raw.rows()) fail(path + ".bias", "length must equal weight row count");
    DenseLayer d;
    d.weights = augment(raw, bias);
    d.activation = activation_at(member(v, path, "activation"), path + ".activation");
    return d;
  }

  if (type == "conv") {
    ConvLayer c;
    const auto [ch, h, w] = chw_at(member(v, path, "input"), path + ".input");
    c.in_channels = ch;
    c.in_h = h;
    c.in_w = w;
    const json& f = member(v, path, "filters");
    if (!f.is_array() || f.empty()) fail(path + ".filters", "expected [f][c][kh][kw] tensor");
    c.num_filters = static_cast<int>(f.size());
    for (std::size_t fi = 0; fi < f.size(); ++fi) {
      const std::string fp = path + ".filters[" + std::to_string(fi) + "]";
      if (!f[fi].is_array() || static_cast<int>(f[fi].size()) != ch)
        fail(fp, "channel count mismatch");
      for (int ci = 0; ci < ch; ++ci) {
        const Matrix k = raw_matrix_at(f[fi][ci], fp + "[" + std::to_string(ci) + "]");
        if (fi == 0 && ci == 0) {
          c.kh = static_cast<int>(k.rows());
          c.kw = static_cast<int>(k.cols());
        } else if (static_cast<int>(k.rows()) != c.kh || static_cast<int>(k.cols()) != c.kw) {
          fail(fp, "inconsistent kernel shape");
        }
        c.filters.insert(c.filters.end(), k.data().begin(), k.data().end());
      }
    }
    if (c.kh > c.in_h || c.kw > c.in_w) fail(path + ".filters", "kernel larger than input");
    c.bias = vector_at(member(v, path, "bias"), path + ".bias");
    if (static_cast<int>(c.bias.size()) != c.num_filters)
      fail(path + ".bias", "length must equal filter count");
    c.activation = activation_at(member(v, path, "activation"), path + ".activation");
    return c;
  }

  if (type == "maxpool") {
    const auto [ch, h, w] = chw_at(member(v, path, "input"), path + ".input");
    if (v.contains("regions")) {
      PoolLayer p;
      p.in_channels = ch;
      p.in_h = h;
      p.in_w = w;
      const json& regions = v["regions"];
      if (!regions.is_array() || regions.empty())
        fail(path + ".regions", "expected a non-empty array of index sets");
      for (std::size_t k = 0; k < regions.size(); ++k) {
        const std::string rp = path + ".regions[" + std::to_string(k) + "]";
        if (!regions[k].is_array() || regions[k].empty()) fail(rp, "expected a non-empty array");
        std::vector<int> region;
        for (std::size_t m = 0; m < regions[k].size(); ++m) {
          const int idx = int_at(regions[k][m], rp + "[" + std::to_string(m) + "]");
          if (idx < 0 || idx >= ch * h * w) fail(rp, "index out of feature-map range");
          region.push_back(idx);
        }
        p.regions.push_back(std::move(region));
        p.dh = 1;
        p.dw = static_cast<int>(p.regions.back().size());
      }
      return p;
    }
    const json& filter = member(v, path, "filter");
    if (!filter.is_array() || filter.size() != 2) fail(path + ".filter", "expected [dh, dw]");
    const int dh = int_at(filter[0], path + ".filter[0]");
    const int dw = int_at(filter[1], path + ".filter[1]");
    const int stride = v.contains("stride") ? int_at(v["stride"], path + ".stride") : dh;
    if (dh < 1 || dw < 1 || stride < 1) fail(path + ".filter", "dims and stride must be >= 1");
    if (dh > h || dw > w) fail(path + ".filter", "window larger than input");
    return PoolLayer::from_window(ch, h, w, dh, dw, stride);
  }

  if (type == "recurrent") {
    const Matrix wx = raw_matrix_at(member(v, path, "input_weights"), path + ".input_weights");
    const Matrix wh = raw_matrix_at(member(v, path, "hidden_weights"), path + ".hidden_weights");
    const std::vector<double> bias = vector_at(member(v, path, "bias"), path + ".bias");
    if (bias.size() != wx.rows()) fail(path + ".bias", "length must equal hidden size");
    if (wh.rows() != wx.rows() || wh.cols() != wx.rows())
      fail(path + ".hidden_weights", "must be square with the hidden size");
    if (v.contains("initial_hidden")) {
      const auto h0 = vector_at(v["initial_hidden"], path + ".initial_hidden");
      for (const double h : h0)
        if (h != 0.0)
          fail(path + ".initial_hidden",
               "nonzero initial hidden states are not supported; h(0) must be zero");
    }
    RecurrentLayer r;
    r.input_weights = augment(wx, bias);
    // Hidden map gets a zero dummy row/column: the dummy 1 enters through
    // the input weights only, never through the recurrence.
    r.hidden_weights = Matrix(wh.rows() + 1, wh.cols() + 1);
    for (std::size_t i = 0; i < wh.rows(); ++i)
      for (std::size_t j = 0; j < wh.cols(); ++j) r.hidden_weights(i + 1, j + 1) = wh(i, j);
    r.activation = activation_at(member(v, path, "activation"), path + ".activation");
    r.time_steps = int_at(member(v, path, "time_steps"), path + ".time_steps");
    if (r.time_steps < 1) fail(path + ".time_steps", "must be >= 1");
    if (time_steps != 1 && time_steps != r.time_steps)
      fail(path + ".time_steps", "inconsistent across recurrent layers");
    time_steps = r.time_steps;
    return r;
  }

  fail(path + ".type", "unknown layer type '" + type + "'");
}

}  // namespace

Network parse_network(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("model: invalid JSON: ") + e.what());
  }

  Network net;
  const json& layers = member(doc, "model", "layers");
  if (!layers.is_array() || layers.empty()) fail("model.layers", "expected a non-empty array");
  int time_steps = 1;
  for (std::size_t i = 0; i < layers.size(); ++i)
    net.layers.push_back(
        parse_layer(layers[i], "model.layers[" + std::to_string(i) + "]", time_steps));
  net.time_steps = time_steps;

  if (doc.contains("final_activation") && !doc["final_activation"].is_null()) {
    const json& fa = doc["final_activation"];
    if (!fa.is_string()) fail("model.final_activation", "expected a string or null");
    const std::string name = fa.get<std::string>();
    if (name == "tanh")
      net.final_activation = FinalActivation::kTanh;
    else if (name == "softmax")
      net.final_activation = FinalActivation::kSoftmax;
    else if (name == "identity")
      net.final_activation = FinalActivation::kNone;
    else
      fail("model.final_activation", "unknown value '" + name + "'");
  }

  net.input_dim = layer_in_dim(net.layers.front());
  try {
    net.validate();
  } catch (const SchemaError&) {
    throw;
  } catch (const Error& e) {
    throw SchemaError(std::string("model: ") + e.what());
  }
  return net;
}

Network load_network(const std::string& path) {
  try {
    return parse_network(read_file(path));
  } catch (const SchemaError& e) {
    throw SchemaError(path + ": " + e.what());
  }
}

std::vector<std::vector<double>> Dataset::augmented_rows() const {
  std::vector<std::vector<double>> rows;
  rows.reserve(features.size());
  for (const auto& f : features) {
    std::vector<double> row;
    row.reserve(f.size() + 1);
    row.push_back(1.0);
    row.insert(row.end(), f.begin(), f.end());
    rows.push_back(std::move(row));
  }
  return rows;
}

Dataset parse_dataset(const std::string& csv_text) {
  std::istringstream in(csv_text);
  std::string line;
  if (!std::getline(in, line)) throw SchemaError("dataset: missing header row");
  if (!line.empty() && line.back() == '\r') line.pop_back();

  auto split = [](const std::string& s) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(s);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!s.empty() && s.back() == ',') cells.push_back("");
    return cells;
  };

  const std::vector<std::string> header = split(line);
  if (header.empty()) throw SchemaError("dataset: empty header row");
  std::ptrdiff_t label_col = -1;
  Dataset ds;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (header[c] == "label" || header[c] == "target") {
      if (label_col >= 0) throw SchemaError("dataset: multiple label columns");
      label_col = static_cast<std::ptrdiff_t>(c);
    } else {
      ds.columns.push_back(header[c]);
    }
  }
  if (label_col >= 0) ds.labels.emplace();

  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> cells = split(line);
    if (cells.size() != header.size())
      throw SchemaError("dataset: line " + std::to_string(line_no) + ": expected " +
                        std::to_string(header.size()) + " cells, got " +
                        std::to_string(cells.size()));
    std::vector<double> row;
    row.reserve(ds.columns.size());
    for (std::size_t c = 0; c < cells.size(); ++c) {
      double value = 0.0;
      std::size_t used = 0;
      try {
        value = std::stod(cells[c], &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != cells[c].size() || cells[c].empty() || !std::isfinite(value))
        throw SchemaError("dataset: line " + std::to_string(line_no) + ", column '" +
                          header[c] + "': not a finite number: '" + cells[c] + "'");
      if (static_cast<std::ptrdiff_t>(c) == label_col)
        ds.labels->push_back(value);
      else
        row.push_back(value);
    }
    ds.features.push_back(std::move(row));
  }
  if (ds.features.empty()) throw EmptyDatasetError("dataset: no data rows");
  return ds;
}

Dataset load_dataset(const std::string& path) {
  try {
    return parse_dataset(read_file(path));
  } catch (const EmptyDatasetError&) {
    throw;
  } catch (const SchemaError& e) {
    throw SchemaError(path + ": " + e.what());
  }
}

namespace {

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& v, const std::string& path) {
  if (!v.is_array()) fail(path, "expected a 2D array");
  if (v.empty()) return Matrix(0, 0);
  return raw_matrix_at(v, path);
}

const char* kind_name(LevelKind k) {
  switch (k) {
    case LevelKind::kDense: return "dense";
    case LevelKind::kConv: return "conv";
    case LevelKind::kPool: return "pool";
    default: return "recurrent";
  }
}

LevelKind kind_from(const std::string& s, const std::string& path) {
  if (s == "dense") return LevelKind::kDense;
  if (s == "conv") return LevelKind::kConv;
  if (s == "pool") return LevelKind::kPool;
  if (s == "recurrent") return LevelKind::kRecurrent;
  fail(path, "unknown level kind '" + s + "'");
}

}  // namespace

std::string TreeIo::to_json(const DecisionTree& tree) {
  json meta;
  meta["levels"] = tree.total_levels();
  json branching = json::array();
  for (const LevelInfo& lv : tree.levels()) branching.push_back(lv.branching);
  meta["branching"] = std::move(branching);
  meta["final_activation"] = to_string(tree.final_activation());
  meta["input_dim"] = tree.stacked_input_dim();
  meta["time_steps"] = tree.time_steps();
  meta["max_branching"] = tree.max_branching();

  json level_table = json::array();
  for (const LevelInfo& lv : tree.levels()) {
    json e;
    e["layer"] = lv.layer;
    e["kind"] = kind_name(lv.kind);
    e["row"] = lv.row;
    e["neuron"] = lv.neuron;
    e["timestep"] = lv.timestep;
    e["branching"] = lv.branching;
    e["layer_first"] = lv.layer_first;
    e["layer_last"] = lv.layer_last;
    e["step_first"] = lv.step_first;
    e["step_last"] = lv.step_last;
    if (lv.kind == LevelKind::kPool) {
      e["pool_region"] = lv.pool_region;
    } else {
      json act;
      act["name"] = lv.activation.name;
      act["breakpoints"] = lv.activation.breakpoints;
      act["slopes"] = lv.activation.slopes;
      act["intercepts"] = lv.activation.intercepts;
      e["activation"] = std::move(act);
    }
    level_table.push_back(std::move(e));
  }
  meta["level_table"] = std::move(level_table);

  json nodes = json::array();
  for (const DecisionTree::Node& n : tree.nodes()) {
    json e;
    e["id"] = n.id;
    e["depth"] = n.depth;
    e["branch_from_parent"] = n.branch_from_parent;
    e["effective"] = matrix_to_json(*n.decision);
    e["samples"] = n.samples.size();
    e["prefix"] = n.prefix;
    json children = json::object();
    for (const auto& [branch, idx] : n.children)
      children[std::to_string(branch)] = tree.nodes()[idx].id;
    e["children"] = std::move(children);
    if (n.rnn_input_map) e["rnn_input_map"] = matrix_to_json(*n.rnn_input_map);
    if (n.rnn_out_acc) e["rnn_out_acc"] = matrix_to_json(*n.rnn_out_acc);
    nodes.push_back(std::move(e));
  }

  json doc;
  doc["meta"] = std::move(meta);
  doc["nodes"] = std::move(nodes);
  return doc.dump(2) + "\n";
}

DecisionTree TreeIo::from_json(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("tree: invalid JSON: ") + e.what());
  }

  DecisionTree tree;
  const json& meta = member(doc, "tree", "meta");
  tree.input_dim_ = member(meta, "tree.meta", "input_dim").get<std::size_t>();
  tree.time_steps_ = int_at(member(meta, "tree.meta", "time_steps"), "tree.meta.time_steps");
  tree.max_branching_ =
      int_at(member(meta, "tree.meta", "max_branching"), "tree.meta.max_branching");
  const std::string fa =
      member(meta, "tree.meta", "final_activation").get<std::string>();
  if (fa == "tanh")
    tree.final_activation_ = FinalActivation::kTanh;
  else if (fa == "softmax")
    tree.final_activation_ = FinalActivation::kSoftmax;
  else if (fa == "identity")
    tree.final_activation_ = FinalActivation::kNone;
  else
    fail("tree.meta.final_activation", "unknown value '" + fa + "'");

  const json& level_table = member(meta, "tree.meta", "level_table");
  if (!level_table.is_array()) fail("tree.meta.level_table", "expected an array");
  for (std::size_t i = 0; i < level_table.size(); ++i) {
    const json& e = level_table[i];
    const std::string p = "tree.meta.level_table[" + std::to_string(i) + "]";
    LevelInfo lv;
    lv.layer = int_at(member(e, p, "layer"), p + ".layer");
    lv.kind = kind_from(member(e, p, "kind").get<std::string>(), p + ".kind");
    lv.row = int_at(member(e, p, "row"), p + ".row");
    lv.neuron = int_at(member(e, p, "neuron"), p + ".neuron");
    lv.timestep = int_at(member(e, p, "timestep"), p + ".timestep");
    lv.branching = int_at(member(e, p, "branching"), p + ".branching");
    lv.layer_first = member(e, p, "layer_first").get<bool>();
    lv.layer_last = member(e, p, "layer_last").get<bool>();
    lv.step_first = member(e, p, "step_first").get<bool>();
    lv.step_last = member(e, p, "step_last").get<bool>();
    if (lv.kind == LevelKind::kPool) {
      for (const json& idx : member(e, p, "pool_region"))
        lv.pool_region.push_back(idx.get<int>());
    } else {
      const json& act = member(e, p, "activation");
      lv.activation.name = member(act, p + ".activation", "name").get<std::string>();
      lv.activation.breakpoints =
          vector_at(member(act, p + ".activation", "breakpoints"), p + ".activation.breakpoints");
      lv.activation.slopes =
          vector_at(member(act, p + ".activation", "slopes"), p + ".activation.slopes");
      lv.activation.intercepts = vector_at(member(act, p + ".activation", "intercepts"),
                                           p + ".activation.intercepts");
      try {
        lv.activation.validate();
      } catch (const Error& err) {
        fail(p + ".activation", err.what());
      }
    }
    tree.levels_.push_back(std::move(lv));
  }

  const json& nodes = member(doc, "tree", "nodes");
  if (!nodes.is_array() || nodes.empty()) fail("tree.nodes", "expected a non-empty array");
  std::map<std::uint64_t, std::size_t> by_id;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const json& e = nodes[i];
    const std::string p = "tree.nodes[" + std::to_string(i) + "]";
    DecisionTree::Node n;
    n.id = member(e, p, "id").get<std::uint64_t>();
    n.depth = int_at(member(e, p, "depth"), p + ".depth");
    n.branch_from_parent = int_at(member(e, p, "branch_from_parent"), p + ".branch_from_parent");
    if (e.contains("prefix"))
      for (const json& b : e["prefix"]) n.prefix.push_back(b.get<std::uint16_t>());
    // Only the construction-time sample count survives a round trip; the row
    // indices themselves are meaningless without the original dataset.
    if (e.contains("samples")) {
      if (!e["samples"].is_number_unsigned()) fail(p + ".samples", "expected a count");
      n.samples.assign(e["samples"].get<std::size_t>(), 0);
    }
    n.decision =
        std::make_shared<Matrix>(matrix_from_json(member(e, p, "effective"), p + ".effective"));
    if (e.contains("rnn_input_map"))
      n.rnn_input_map =
          std::make_shared<Matrix>(matrix_from_json(e["rnn_input_map"], p + ".rnn_input_map"));
    if (e.contains("rnn_out_acc"))
      n.rnn_out_acc =
          std::make_shared<Matrix>(matrix_from_json(e["rnn_out_acc"], p + ".rnn_out_acc"));
    by_id.emplace(n.id, i);
    tree.nodes_.push_back(std::move(n));
  }
  // Second pass: resolve children ids to vector indices.
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const json& children = member(nodes[i], "tree.nodes", "children");
    const std::string p = "tree.nodes[" + std::to_string(i) + "].children";
    if (!children.is_object()) fail(p, "expected an object");
    for (const auto& [key, value] : children.items()) {
      const int branch = std::stoi(key);
      auto it = by_id.find(value.get<std::uint64_t>());
      if (it == by_id.end()) fail(p, "child id not present in node list");
      tree.nodes_[i].children.emplace(branch, it->second);
      tree.nodes_[it->second].parent = i;
    }
  }
  return tree;
}

void TreeIo::save(const DecisionTree& tree, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw SchemaError(path + ": cannot open for writing");
  out << to_json(tree);
}

DecisionTree TreeIo::load(const std::string& path) {
  return from_json(read_file(path));
}

}  // namespace rentt
