#pragma once

#include <cstdint>
#include <vector>

#include "rentt/matrix.hpp"
#include "rentt/network.hpp"

namespace rentt {

/// Reference recurrence h(t) = act(Wh h(t-1) + Wx x(t)), h(0)=0. `x_seq`
/// stacks T input slices, each starting with the dummy 1; the result stacks
/// the T hidden states.
std::vector<double> rnn_forward(const RecurrentLayer& layer, const std::vector<double>& x_seq);

/// Time-unrolled lower-block-triangular matrix mapping the stacked input
/// sequence to the stacked preactivations. Block (t,p) is H(t,p) * Wx with
/// H(t,t) = I and H(t,p) = (Wh L(t-1)) (Wh L(t-2)) ... (Wh L(p)), where L(k)
/// is the activation matrix of timestep k taken from `patterns`.
/// `patterns[k-1]` holds the region indices of timestep k, k = 1..T-1.
Matrix build_rnn_block(const RecurrentLayer& layer,
                       const std::vector<std::vector<std::uint16_t>>& patterns);

/// Tree-level index of (layer i, neuron j, timestep t) per the unrolled-level
/// formula: L = j + sum over earlier layers of t*(n_i - 1). `layer_sizes` are
/// the augmented layer dimensions n_1..n_{N}; i, j, t are 1-based.
int rnn_tree_level(int layer_i, int neuron_j, int t, const std::vector<int>& layer_sizes);

}  // namespace rentt
