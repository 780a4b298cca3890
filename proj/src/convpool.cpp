#include "rentt/convpool.hpp"

#include "rentt/error.hpp"

namespace rentt {

std::vector<double> flatten_input(const std::vector<double>& tensor, int c, int h, int w) {
  if (tensor.size() != static_cast<std::size_t>(c * h * w))
    throw ShapeError("flatten_input: tensor size != c*h*w");
  std::vector<double> flat(tensor.size() + 1);
  flat[0] = 1.0;
  std::copy(tensor.begin(), tensor.end(), flat.begin() + 1);
  return flat;
}

std::vector<double> unflatten_input(const std::vector<double>& flat, int c, int h, int w) {
  if (flat.size() != static_cast<std::size_t>(c * h * w) + 1 || flat[0] != 1.0)
    throw ShapeError("unflatten_input: bad flattened vector");
  return {flat.begin() + 1, flat.end()};
}

Matrix build_super_conv(const ConvLayer& layer) {
  Matrix omega(layer.out_dim(), layer.in_dim());
  omega(0, 0) = 1.0;
  const int oh = layer.out_h(), ow = layer.out_w();
  for (int f = 0; f < layer.num_filters; ++f)
    for (int r = 0; r < oh; ++r)
      for (int s = 0; s < ow; ++s) {
        const int row = 1 + (f * oh + r) * ow + s;
        omega(row, 0) = layer.bias[f];
        for (int c = 0; c < layer.in_channels; ++c)
          for (int m = 0; m < layer.kh; ++m)
            for (int n = 0; n < layer.kw; ++n)
              omega(row, 1 + (c * layer.in_h + r + m) * layer.in_w + s + n) +=
                  layer.filter_at(f, c, m, n);
      }
  return omega;
}

Matrix build_pool_decision(const PoolLayer& layer) {
  const int p = layer.pairs_per_region();
  Matrix q(layer.regions.size() * p, layer.in_dim());
  std::size_t row = 0;
  for (const auto& region : layer.regions) {
    const int d = static_cast<int>(region.size());
    for (int a = 0; a < d; ++a)
      for (int b = a + 1; b < d; ++b, ++row) {
        q(row, 1 + region[a]) += 1.0;
        q(row, 1 + region[b]) -= 1.0;
      }
  }
  return q;
}

std::vector<std::uint16_t> pool_pattern(const std::vector<double>& x_flat,
                                        const PoolLayer& layer) {
  if (x_flat.size() != static_cast<std::size_t>(layer.in_dim()) || x_flat[0] != 1.0)
    throw ShapeError("pool_pattern: bad flattened input");
  std::vector<std::uint16_t> out;
  out.reserve(layer.regions.size());
  for (const auto& region : layer.regions) {
    int best = 0;
    for (int k = 1; k < static_cast<int>(region.size()); ++k)
      if (x_flat[1 + region[k]] > x_flat[1 + region[best]]) best = k;
    out.push_back(static_cast<std::uint16_t>(best));
  }
  return out;
}

Matrix pool_effective_from_pattern(const std::vector<std::uint16_t>& argmax,
                                   const PoolLayer& layer) {
  if (argmax.size() != layer.regions.size())
    throw ContractError("pool_effective_from_pattern: one argmax per region required");
  Matrix p(layer.out_dim(), layer.in_dim());
  p(0, 0) = 1.0;
  for (std::size_t k = 0; k < layer.regions.size(); ++k) {
    if (argmax[k] >= layer.regions[k].size())
      throw ContractError("pool_effective_from_pattern: argmax index out of range");
    p(1 + k, 1 + layer.regions[k][argmax[k]]) = 1.0;
  }
  return p;
}

Matrix pool_effective(const std::vector<double>& x_flat, const PoolLayer& layer) {
  return pool_effective_from_pattern(pool_pattern(x_flat, layer), layer);
}

}  // namespace rentt
