#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "doctest.h"
#include "rentt/error.hpp"
#include "rentt/network.hpp"

using namespace rentt;

namespace {

Matrix from_rows(const std::vector<std::vector<double>>& rows) {
  Matrix m(rows.size(), rows[0].size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c) m(r, c) = rows[r][c];
  return m;
}

}  // namespace

TEST_CASE("forward: single augmented dense layer with ReLU") {
  Network net;
  net.input_dim = 2;
  net.layers.push_back(
      DenseLayer{from_rows({{1, 0}, {0.5, 2}}), PiecewiseLinearActivation::relu()});
  net.validate();

  CHECK(net.forward({1.0, 3.0}) == std::vector<double>{1.0, 6.5});
  CHECK(net.forward({1.0, -1.0}) == std::vector<double>{1.0, 0.0});
  CHECK_THROWS_AS(net.forward({1.0, 3.0, 4.0}), ShapeError);
}

TEST_CASE("augment wraps raw weights into the dummy block form") {
  const Matrix raw = from_rows({{2, 3}, {4, 5}});
  const Matrix a = augment(raw, {10, 20});
  CHECK(a.rows() == 3);
  CHECK(a.cols() == 3);
  CHECK(a(0, 0) == 1.0);
  CHECK(a(0, 1) == 0.0);
  CHECK(a(1, 0) == 10.0);
  CHECK(a(2, 0) == 20.0);
  CHECK(a(1, 1) == 2.0);
  CHECK(a(2, 2) == 5.0);
}

TEST_CASE("forward matches hand-composed layers on a [2,3] + tanh network") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  auto rand_aug = [&](std::size_t out, std::size_t in) {
    Matrix raw(out, in);
    for (std::size_t r = 0; r < out; ++r)
      for (std::size_t c = 0; c < in; ++c) raw(r, c) = dist(rng);
    std::vector<double> bias(out);
    for (double& b : bias) b = dist(rng);
    return augment(raw, bias);
  };

  Network net;
  net.input_dim = 3;
  net.final_activation = FinalActivation::kTanh;
  const Matrix w0 = rand_aug(2, 2), w1 = rand_aug(3, 2), w2 = rand_aug(1, 3);
  net.layers.push_back(DenseLayer{w0, PiecewiseLinearActivation::relu()});
  net.layers.push_back(DenseLayer{w1, PiecewiseLinearActivation::relu()});
  net.layers.push_back(DenseLayer{w2, PiecewiseLinearActivation::identity()});
  net.validate();

  for (int it = 0; it < 50; ++it) {
    std::vector<double> x0{1.0, dist(rng), dist(rng)};
    // Manual composition oracle.
    auto relu_vec = [](std::vector<double> v) {
      for (std::size_t k = 1; k < v.size(); ++k) v[k] = std::max(0.0, v[k]);
      return v;
    };
    const std::vector<double> h1 = relu_vec(w0 * x0);
    const std::vector<double> h2 = relu_vec(w1 * h1);
    std::vector<double> y = w2 * h2;
    y[1] = std::tanh(y[1]);

    const std::vector<double> got = net.forward(x0);
    CHECK(got[0] == 1.0);  // dummy propagates
    CHECK(got[1] == doctest::Approx(y[1]).epsilon(1e-12));
  }
}

TEST_CASE("softmax final activation: positive, sums to 1") {
  Network net;
  net.input_dim = 3;
  net.final_activation = FinalActivation::kSoftmax;
  net.layers.push_back(DenseLayer{from_rows({{1, 0, 0}, {0.1, 1, -1}, {-0.2, 0.5, 2}}),
                                  PiecewiseLinearActivation::identity()});
  net.validate();

  const std::vector<double> y = net.forward({1.0, 0.7, -0.9});
  CHECK(y[1] > 0.0);
  CHECK(y[2] > 0.0);
  CHECK(y[1] + y[2] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("validate rejects inconsistent sequence configurations") {
  RecurrentLayer r;
  r.input_weights = from_rows({{1, 0}, {0.5, 1}});
  r.hidden_weights = Matrix(2, 2);
  r.hidden_weights(1, 1) = 0.5;
  r.activation = PiecewiseLinearActivation::relu();
  r.time_steps = 3;

  Network net;
  net.input_dim = 2;
  net.time_steps = 2;  // disagrees with the layer
  net.layers.push_back(r);
  CHECK_THROWS_AS(net.validate(), ShapeError);

  net.time_steps = 3;
  net.validate();
  CHECK(net.stacked_input_dim() == 6);
}

TEST_CASE("recurrent forward follows the zero-initial-state recurrence") {
  // Scalar ReLU cell, both weights 1, bias 0: inputs (1,1,1) -> states 1,2,3.
  RecurrentLayer r;
  r.input_weights = from_rows({{1, 0}, {0, 1}});
  r.hidden_weights = Matrix(2, 2);
  r.hidden_weights(1, 1) = 1.0;
  r.activation = PiecewiseLinearActivation::relu();
  r.time_steps = 3;

  Network net;
  net.input_dim = 2;
  net.time_steps = 3;
  net.layers.push_back(r);
  net.validate();

  const std::vector<double> y = net.forward({1, 1, 1, 1, 1, 1});
  CHECK(y == std::vector<double>{1, 1, 1, 2, 1, 3});
}
