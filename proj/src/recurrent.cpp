#include "rentt/recurrent.hpp"

#include "rentt/activation.hpp"
#include "rentt/error.hpp"

namespace rentt {

std::vector<double> rnn_forward(const RecurrentLayer& layer, const std::vector<double>& x_seq) {
  const std::size_t n_in = layer.input_weights.cols();
  const std::size_t n_out = layer.input_weights.rows();
  const int T = layer.time_steps;
  if (x_seq.size() != n_in * T) throw ShapeError("rnn_forward: input length != n_in * T");
  std::vector<double> h(n_out, 0.0);
  std::vector<double> out;
  out.reserve(n_out * T);
  for (int t = 0; t < T; ++t) {
    std::vector<double> x(x_seq.begin() + t * n_in, x_seq.begin() + (t + 1) * n_in);
    if (x[0] != 1.0) throw ShapeError("rnn_forward: each time slice must carry the dummy 1");
    std::vector<double> pre = layer.input_weights * x;
    const std::vector<double> rec = layer.hidden_weights * h;
    for (std::size_t k = 0; k < pre.size(); ++k) pre[k] += rec[k];
    for (std::size_t k = 1; k < pre.size(); ++k) pre[k] = layer.activation.eval(pre[k]);
    h = pre;
    out.insert(out.end(), h.begin(), h.end());
  }
  return out;
}

Matrix build_rnn_block(const RecurrentLayer& layer,
                       const std::vector<std::vector<std::uint16_t>>& patterns) {
  const int T = layer.time_steps;
  if (static_cast<int>(patterns.size()) != T - 1)
    throw ShapeError("build_rnn_block: need T-1 per-timestep patterns");
  const std::size_t n_in = layer.input_weights.cols();
  const std::size_t n_out = layer.input_weights.rows();

  // hop[k] = Wh * Lambda(k), the one-step carry from timestep k, k = 1..T-1.
  std::vector<Matrix> hop;
  hop.reserve(T > 0 ? T - 1 : 0);
  for (int k = 1; k < T; ++k)
    hop.push_back(layer.hidden_weights *
                  activation_matrix_from_regions(patterns[k - 1], layer.activation));

  Matrix block(n_out * T, n_in * T);
  for (int t = 1; t <= T; ++t) {
    Matrix h = Matrix::identity(n_out);  // H(t,t)
    for (int p = t; p >= 1; --p) {
      const Matrix b = h * layer.input_weights;
      for (std::size_t i = 0; i < n_out; ++i)
        for (std::size_t j = 0; j < n_in; ++j)
          block((t - 1) * n_out + i, (p - 1) * n_in + j) = b(i, j);
      if (p > 1) h = h * hop[p - 2];  // extend product to H(t,p-1)
    }
  }
  return block;
}

int rnn_tree_level(int layer_i, int neuron_j, int t, const std::vector<int>& layer_sizes) {
  if (layer_i < 1 || layer_i > static_cast<int>(layer_sizes.size()) || neuron_j < 1 ||
      neuron_j > layer_sizes[layer_i - 1] - 1 || t < 1)
    throw ContractError("rnn_tree_level: invalid indices");
  int level = neuron_j;
  for (int i = 1; i < layer_i; ++i) level += t * (layer_sizes[i - 1] - 1);
  return level;
}

}  // namespace rentt
