#pragma once

#include <cstdint>
#include <vector>

#include "rentt/matrix.hpp"
#include "rentt/network.hpp"

namespace rentt {

/// Row-major flattening of a (c,h,w) tensor, slices concatenated, with the
/// dummy 1 prepended.
std::vector<double> flatten_input(const std::vector<double>& tensor, int c, int h, int w);

/// Inverse of flatten_input (drops the dummy).
std::vector<double> unflatten_input(const std::vector<double>& flat, int c, int h, int w);

/// Dense-matrix equivalent of a stride-1 convolution on the flattened input:
/// row 0 is the dummy row, column 0 replicates each filter's bias over its
/// spatial positions.
Matrix build_super_conv(const ConvLayer& layer);

/// +-1 pairwise-comparison matrix Q: one row per ordered pair (a,b), a<b,
/// within each region, lexicographic by (region, a, b), leading zero bias
/// column. Q x > 0 componentwise encodes the orderings.
Matrix build_pool_decision(const PoolLayer& layer);

/// 0/1 selection matrix P for a concrete input: row 0 selects the bias, row
/// k+1 selects the argmax of region k (ties to the lowest flat index), so
/// P x == (1, max over R_1, ..., max over R_l).
Matrix pool_effective(const std::vector<double>& x_flat, const PoolLayer& layer);

/// Selection matrix from per-region argmax indices (region-local, 0..d-1).
Matrix pool_effective_from_pattern(const std::vector<std::uint16_t>& argmax,
                                   const PoolLayer& layer);

/// Per-region argmax (region-local index), the tree branching label for pool
/// levels. Ties break to the lowest flat index.
std::vector<std::uint16_t> pool_pattern(const std::vector<double>& x_flat,
                                        const PoolLayer& layer);

}  // namespace rentt
