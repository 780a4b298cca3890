#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>
#include <set>

#include "doctest.h"
#include "rentt/convpool.hpp"
#include "rentt/error.hpp"
#include "rentt/io.hpp"
#include "rentt/tree.hpp"
#include "support/trainer.hpp"

using namespace rentt;
using rentt::testing::augment_rows;
using rentt::testing::uniform_rows;

namespace {

Matrix from_rows(const std::vector<std::vector<double>>& rows) {
  Matrix m(rows.size(), rows[0].size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c) m(r, c) = rows[r][c];
  return m;
}

Network random_dense_net(std::uint64_t seed, const std::vector<int>& sizes,
                         FinalActivation fa = FinalActivation::kNone) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Network net;
  net.input_dim = sizes.front() + 1;
  net.final_activation = fa;
  for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
    Matrix raw(sizes[l + 1], sizes[l]);
    for (std::size_t i = 0; i < raw.rows(); ++i)
      for (std::size_t j = 0; j < raw.cols(); ++j) raw(i, j) = dist(rng);
    std::vector<double> bias(sizes[l + 1]);
    for (double& b : bias) b = dist(rng);
    const bool last = l + 2 == sizes.size();
    net.layers.push_back(DenseLayer{augment(raw, bias),
                                    last ? PiecewiseLinearActivation::identity()
                                         : PiecewiseLinearActivation::relu()});
  }
  return net;
}

void check_close(const std::vector<double>& a, const std::vector<double>& b, double tol) {
  REQUIRE(a.size() == b.size());
  for (std::size_t k = 0; k < a.size(); ++k)
    CHECK(std::abs(a[k] - b[k]) <= tol * (1.0 + std::abs(a[k])));
}

}  // namespace

TEST_CASE("activation_pattern agrees with forward-pass preactivations") {
  const Network net = random_dense_net(31, {3, 4, 2});
  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  const auto& w0 = std::get<DenseLayer>(net.layers[0]).weights;
  for (int it = 0; it < 50; ++it) {
    std::vector<double> x0{1.0, dist(rng), dist(rng), dist(rng)};
    const ActivationPattern pat = activation_pattern(net, x0);
    REQUIRE(pat.size() == 6);  // 4 hidden + 2 identity output entries
    const std::vector<double> pre = w0 * x0;
    for (int j = 1; j <= 4; ++j) CHECK(pat[j - 1] == (pre[j] >= 0.0 ? 1 : 0));
    CHECK(pat[4] == 0);
    CHECK(pat[5] == 0);
  }
}

TEST_CASE("effective_matrix: identities and forward consistency") {
  const Network net = random_dense_net(41, {2, 3, 3, 1});
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);

  // All-active pattern: E_1 = W_1 * W_0 exactly.
  const ActivationPattern all_active(6, 1);
  const Matrix e1 = effective_matrix(net, all_active, 1);
  const Matrix prod = std::get<DenseLayer>(net.layers[1]).weights *
                      std::get<DenseLayer>(net.layers[0]).weights;
  CHECK(e1 == prod);

  // All-inactive first layer: non-dummy columns of E_1 vanish.
  ActivationPattern inactive(6, 1);
  for (int k = 0; k < 3; ++k) inactive[k] = 0;
  const Matrix e1z = effective_matrix(net, inactive, 1);
  for (std::size_t i = 1; i < e1z.rows(); ++i)
    for (std::size_t j = 1; j < e1z.cols(); ++j) CHECK(e1z(i, j) == 0.0);

  // E_{N-1} x equals the final preactivation from the forward oracle.
  for (int it = 0; it < 50; ++it) {
    const std::vector<double> x0{1.0, dist(rng), dist(rng)};
    const ActivationPattern pat = activation_pattern(net, x0);
    const std::vector<double> pre = effective_matrix(net, pat, 2) * x0;
    const std::vector<double> y = net.forward(x0);  // identity output layer
    check_close(pre, y, 1e-10);
  }

  CHECK_THROWS_AS(effective_matrix(net, ActivationPattern{1}, 2), ContractError);
}

TEST_CASE("decision_rule matches region membership") {
  const auto relu = PiecewiseLinearActivation::relu();
  CHECK(decision_rule({0.5, 2.0}, {1.0, 3.0}, relu) == 1);
  CHECK(decision_rule({0.5, 2.0}, {1.0, -1.0}, relu) == 0);
  PiecewiseLinearActivation three{"t", {-1.0, 1.0}, {1, 1, 1}, {0, 0, 0}};
  CHECK(decision_rule({0.2, 0.0}, {1.0, 9.0}, three) == 1);
}

TEST_CASE("level_of and node_count formulas") {
  // Augmented sizes for the worked [2,3] example: n_1=3, n_2=4, ReLU (r=2).
  const std::vector<int> dims{3, 4, 2};
  const std::vector<int> regions{2, 2, 2};
  CHECK(level_of(dims, 1, 1) == 1);
  CHECK(level_of(dims, 1, 2) == 2);
  CHECK(level_of(dims, 2, 1) == 3);
  CHECK(level_of(dims, 3, 1) == 6);
  CHECK(node_count(dims, regions, 1, 2) == 4.0);
  CHECK(node_count(dims, regions, 2, 1) == 8.0);
  CHECK(node_count({4}, {2}, 1, 3) == 8.0);  // one layer of 3 binary neurons
  CHECK_THROWS_AS(level_of(dims, 1, 3), ContractError);
}

TEST_CASE("transform: single pattern gives a single path") {
  const Network net = random_dense_net(51, {2, 3, 1});
  const std::vector<std::vector<double>> rows{{1.0, 0.3, 0.4}, {1.0, 0.3, 0.4}};
  DecisionTree tree = DecisionTree::transform(net, rows);
  CHECK(tree.total_levels() == 4);  // 3 hidden + 1 identity output level
  CHECK(tree.node_count() == 5);    // root + one node per level
  CHECK(tree.leaf_count() == 1);

  // Leaf matrix equals the pattern's effective matrix with the final
  // activation folded.
  const ActivationPattern pat = activation_pattern(net, rows[0]);
  const Matrix pre = effective_matrix(net, pat, 1);
  const auto& leaf = tree.nodes().back();
  CHECK(*leaf.decision == pre);  // identity activation leaves it unchanged
}

TEST_CASE("transform: prediction equals forward, strict routing errors on unseen") {
  const Network net = random_dense_net(61, {3, 5, 4, 2}, FinalActivation::kSoftmax);
  const auto rows = augment_rows(uniform_rows(62, 200, 3, -2.0, 2.0));
  DecisionTree tree = DecisionTree::transform(net, rows);

  for (const auto& x0 : rows) check_close(tree.predict_const(x0), net.forward(x0), 1e-12);

  // Pattern-leaf bijection.
  std::set<ActivationPattern> patterns;
  for (const auto& x0 : rows) patterns.insert(activation_pattern(net, x0));
  CHECK(tree.leaf_count() == patterns.size());

  // Find an input whose pattern was not realized by the training rows.
  std::mt19937_64 probe_rng(63);
  std::uniform_real_distribution<double> probe(-100.0, 100.0);
  std::vector<double> far;
  for (int it = 0; it < 10000 && far.empty(); ++it) {
    std::vector<double> cand{1.0, probe(probe_rng), probe(probe_rng), probe(probe_rng)};
    if (patterns.count(activation_pattern(net, cand)) == 0) far = std::move(cand);
  }
  REQUIRE(!far.empty());
  CHECK_THROWS_AS(tree.route(far), RoutingError);
  CHECK_THROWS_AS((void)tree.predict_const(far), RoutingError);

  // Elastic mode appends it, then strict mode succeeds.
  const std::size_t before = tree.leaf_count();
  check_close(tree.predict(far, &net), net.forward(far), 1e-12);
  CHECK(tree.leaf_count() == before + 1);
  CHECK(tree.route(far) < tree.node_count());

  // append_path is idempotent.
  const std::size_t leaf1 = tree.append_path(net, far);
  const std::size_t leaf2 = tree.append_path(net, far);
  CHECK(leaf1 == leaf2);
  CHECK(tree.leaf_count() == before + 1);
}

TEST_CASE("transform: empty dataset and determinism") {
  const Network net = random_dense_net(71, {2, 3, 1});
  CHECK_THROWS_AS(DecisionTree::transform(net, {}), EmptyDatasetError);

  const auto rows = augment_rows(uniform_rows(72, 100, 2, -1.0, 1.0));
  const std::string a = TreeIo::to_json(DecisionTree::transform(net, rows));
  const std::string b = TreeIo::to_json(DecisionTree::transform(net, rows));
  CHECK(a == b);
}

TEST_CASE("node ids follow the multiway numbering scheme") {
  const Network net = random_dense_net(81, {2, 2, 1});
  const auto rows = augment_rows(uniform_rows(82, 200, 2, -3.0, 3.0));
  DecisionTree tree = DecisionTree::transform(net, rows);
  const int mb = tree.max_branching();
  for (const auto& node : tree.nodes())
    for (const auto& [branch, idx] : node.children)
      CHECK(tree.nodes()[idx].id == node.id * mb + branch + 1);
}

TEST_CASE("prefix consistency: stored matrices match recomputation from the pattern") {
  const Network net = random_dense_net(91, {3, 4, 3, 2});
  const auto rows = augment_rows(uniform_rows(92, 50, 3, -2.0, 2.0));
  DecisionTree tree = DecisionTree::transform(net, rows);

  for (const auto& node : tree.nodes()) {
    if (node.depth == static_cast<int>(tree.total_levels())) {
      // Leaf: prefix covers all levels including the final identity layer.
      const std::size_t hidden_levels = tree.total_levels() - 2;
      ActivationPattern pat(node.prefix.begin(), node.prefix.begin() + hidden_levels);
      const Matrix pre = effective_matrix(net, pat, static_cast<int>(net.layers.size()) - 1);
      const Matrix want =
          activation_matrix_from_regions({node.prefix.end() - 2, node.prefix.end()},
                                         PiecewiseLinearActivation::identity()) *
          pre;
      REQUIRE(node.decision->rows() == want.rows());
      for (std::size_t i = 0; i < want.rows(); ++i)
        for (std::size_t j = 0; j < want.cols(); ++j)
          CHECK((*node.decision)(i, j) == doctest::Approx(want(i, j)).epsilon(1e-12));
    }
  }
}

TEST_CASE("monotone growth under dataset union") {
  const Network net = random_dense_net(101, {2, 4, 2});
  const auto d1 = augment_rows(uniform_rows(102, 60, 2, -2.0, 2.0));
  auto d12 = d1;
  const auto d2 = augment_rows(uniform_rows(103, 60, 2, -2.0, 2.0));
  d12.insert(d12.end(), d2.begin(), d2.end());

  DecisionTree t1 = DecisionTree::transform(net, d1);
  DecisionTree t12 = DecisionTree::transform(net, d12);
  CHECK(t12.leaf_count() >= t1.leaf_count());
}

TEST_CASE("conv/pool network transforms exactly") {
  std::mt19937_64 rng(111);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  ConvLayer conv;
  conv.num_filters = 2;
  conv.in_channels = 1;
  conv.in_h = 3;
  conv.in_w = 3;
  conv.kh = conv.kw = 2;
  conv.filters.resize(2 * 1 * 2 * 2);
  for (double& v : conv.filters) v = dist(rng);
  conv.bias = {dist(rng), dist(rng)};
  conv.activation = PiecewiseLinearActivation::relu();

  const PoolLayer pool = PoolLayer::from_window(2, 2, 2, 2, 2, 2);

  Matrix raw(1, 2);
  raw(0, 0) = dist(rng);
  raw(0, 1) = dist(rng);
  Network net;
  net.input_dim = 10;
  net.layers.push_back(conv);
  net.layers.push_back(pool);
  net.layers.push_back(DenseLayer{augment(raw, {0.1}), PiecewiseLinearActivation::identity()});
  net.validate();

  const auto rows = augment_rows(uniform_rows(112, 120, 9, -1.5, 1.5));
  DecisionTree tree = DecisionTree::transform(net, rows);
  CHECK(tree.total_levels() == 8 + 2 + 1);  // conv outputs + pool regions + output
  for (const auto& x0 : rows) check_close(tree.predict_const(x0), net.forward(x0), 1e-12);
}

TEST_CASE("recurrent network transforms exactly") {
  std::mt19937_64 rng(121);
  std::uniform_real_distribution<double> dist(-0.8, 0.8);
  RecurrentLayer r;
  r.input_weights = Matrix(3, 3);
  r.input_weights(0, 0) = 1.0;
  for (int i = 1; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r.input_weights(i, j) = dist(rng);
  r.hidden_weights = Matrix(3, 3);
  for (int i = 1; i < 3; ++i)
    for (int j = 1; j < 3; ++j) r.hidden_weights(i, j) = dist(rng);
  r.activation = PiecewiseLinearActivation::relu();
  r.time_steps = 3;

  Matrix raw(1, 2);
  raw(0, 0) = dist(rng);
  raw(0, 1) = dist(rng);

  Network net;
  net.input_dim = 3;
  net.time_steps = 3;
  net.layers.push_back(r);
  net.layers.push_back(DenseLayer{augment(raw, {0.2}), PiecewiseLinearActivation::identity()});
  net.validate();

  // Stacked rows: 3 slices of 2 features, each with its own dummy.
  std::vector<std::vector<double>> rows;
  for (int s = 0; s < 150; ++s) {
    std::vector<double> row;
    for (int t = 0; t < 3; ++t) {
      row.push_back(1.0);
      row.push_back(dist(rng));
      row.push_back(dist(rng));
    }
    rows.push_back(std::move(row));
  }

  DecisionTree tree = DecisionTree::transform(net, rows);
  CHECK(tree.total_levels() == 3 * 2 + 3 * 1);  // recurrent levels + output per step
  for (const auto& x0 : rows) check_close(tree.predict_const(x0), net.forward(x0), 1e-10);
}

TEST_CASE("T=1 recurrent layer builds the same tree as the equivalent dense layer") {
  std::mt19937_64 rng(131);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Matrix wx(3, 3);
  wx(0, 0) = 1.0;
  for (int i = 1; i < 3; ++i)
    for (int j = 0; j < 3; ++j) wx(i, j) = dist(rng);

  RecurrentLayer r;
  r.input_weights = wx;
  r.hidden_weights = Matrix(3, 3);
  r.hidden_weights(1, 2) = 0.7;  // irrelevant at T=1
  r.activation = PiecewiseLinearActivation::relu();
  r.time_steps = 1;

  Matrix raw(1, 2);
  raw(0, 0) = 0.3;
  raw(0, 1) = -0.9;
  const DenseLayer out{augment(raw, {0.0}), PiecewiseLinearActivation::identity()};

  Network rnet, dnet;
  rnet.input_dim = dnet.input_dim = 3;
  rnet.layers = {r, out};
  dnet.layers = {DenseLayer{wx, PiecewiseLinearActivation::relu()}, out};

  const auto rows = augment_rows(uniform_rows(132, 80, 2, -2.0, 2.0));
  DecisionTree rt = DecisionTree::transform(rnet, rows);
  DecisionTree dt = DecisionTree::transform(dnet, rows);
  CHECK(rt.node_count() == dt.node_count());
  CHECK(rt.leaf_count() == dt.leaf_count());
  for (const auto& x0 : rows) check_close(rt.predict_const(x0), dt.predict_const(x0), 1e-12);
}
