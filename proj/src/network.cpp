#include "rentt/network.hpp"

#include <algorithm>
#include <cmath>

#include "rentt/error.hpp"

namespace rentt {

std::string to_string(FinalActivation fa) {
  switch (fa) {
    case FinalActivation::kTanh: return "tanh";
    case FinalActivation::kSoftmax: return "softmax";
    default: return "identity";
  }
}

PoolLayer PoolLayer::from_window(int channels, int h, int w, int dh, int dw, int stride) {
  if (dh <= 0 || dw <= 0 || stride <= 0 || dh > h || dw > w)
    throw ShapeError("pool window does not fit the feature map");
  PoolLayer p;
  p.dh = dh;
  p.dw = dw;
  p.stride = stride;
  p.in_channels = channels;
  p.in_h = h;
  p.in_w = w;
  for (int c = 0; c < channels; ++c)
    for (int y = 0; y + dh <= h; y += stride)
      for (int x = 0; x + dw <= w; x += stride) {
        std::vector<int> region;
        region.reserve(dh * dw);
        for (int m = 0; m < dh; ++m)
          for (int n = 0; n < dw; ++n) region.push_back((c * h + y + m) * w + x + n);
        p.regions.push_back(std::move(region));
      }
  return p;
}

std::size_t layer_out_dim(const Layer& layer) {
  return std::visit(
      [](const auto& l) -> std::size_t {
        using T = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<T, DenseLayer>) return l.weights.rows();
        else if constexpr (std::is_same_v<T, ConvLayer>) return l.out_dim();
        else if constexpr (std::is_same_v<T, PoolLayer>) return l.out_dim();
        else return l.input_weights.rows();
      },
      layer);
}

std::size_t layer_in_dim(const Layer& layer) {
  return std::visit(
      [](const auto& l) -> std::size_t {
        using T = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<T, DenseLayer>) return l.weights.cols();
        else if constexpr (std::is_same_v<T, ConvLayer>) return l.in_dim();
        else if constexpr (std::is_same_v<T, PoolLayer>) return l.in_dim();
        else return l.input_weights.cols();
      },
      layer);
}

std::size_t Network::output_dim() const {
  if (layers.empty()) throw ShapeError("network has no layers");
  return layer_out_dim(layers.back());
}

void Network::validate() const {
  if (layers.empty()) throw ShapeError("network has no layers");
  std::size_t dim = input_dim;
  for (std::size_t i = 0; i < layers.size(); ++i) {
    if (layer_in_dim(layers[i]) != dim)
      throw ShapeError("layer " + std::to_string(i) + ": expects input dim " +
                       std::to_string(layer_in_dim(layers[i])) + ", got " + std::to_string(dim));
    if (const auto* d = std::get_if<DenseLayer>(&layers[i])) {
      if (d->weights(0, 0) != 1.0) throw ShapeError("layer " + std::to_string(i) + ": missing dummy row");
      d->activation.validate();
    } else if (const auto* c = std::get_if<ConvLayer>(&layers[i])) {
      if (c->kh > c->in_h || c->kw > c->in_w)
        throw ShapeError("layer " + std::to_string(i) + ": filter larger than input");
      c->activation.validate();
      if (time_steps > 1) throw UnsupportedError("convolution inside sequence networks is not supported");
    } else if (const auto* p = std::get_if<PoolLayer>(&layers[i])) {
      for (const auto& region : p->regions)
        for (int idx : region)
          if (idx < 0 || idx >= p->in_dim() - 1)
            throw ShapeError("layer " + std::to_string(i) + ": pool region index out of bounds");
      if (time_steps > 1) throw UnsupportedError("pooling inside sequence networks is not supported");
    } else {
      const auto& r = std::get<RecurrentLayer>(layers[i]);
      if (r.hidden_weights.rows() != r.hidden_weights.cols() ||
          r.hidden_weights.rows() != r.input_weights.rows())
        throw ShapeError("layer " + std::to_string(i) + ": hidden weight matrix must be square n_i x n_i");
      if (r.time_steps != time_steps)
        throw ShapeError("layer " + std::to_string(i) + ": time_steps inconsistent with network");
      r.activation.validate();
    }
    dim = layer_out_dim(layers[i]);
  }
}

Matrix augment(const Matrix& raw, const std::vector<double>& bias) {
  if (bias.size() != raw.rows())
    throw ShapeError("augment: bias length " + std::to_string(bias.size()) +
                     " != weight rows " + std::to_string(raw.rows()));
  Matrix out(raw.rows() + 1, raw.cols() + 1);
  out(0, 0) = 1.0;
  for (std::size_t i = 0; i < raw.rows(); ++i) {
    out(i + 1, 0) = bias[i];
    for (std::size_t j = 0; j < raw.cols(); ++j) out(i + 1, j + 1) = raw(i, j);
  }
  return out;
}

void apply_final_activation(std::vector<double>& y, FinalActivation fa) {
  if (fa == FinalActivation::kTanh) {
    for (std::size_t k = 1; k < y.size(); ++k) y[k] = std::tanh(y[k]);
  } else if (fa == FinalActivation::kSoftmax) {
    double mx = -1e300;
    for (std::size_t k = 1; k < y.size(); ++k) mx = std::max(mx, y[k]);
    double sum = 0.0;
    for (std::size_t k = 1; k < y.size(); ++k) sum += std::exp(y[k] - mx);
    for (std::size_t k = 1; k < y.size(); ++k) y[k] = std::exp(y[k] - mx) / sum;
  }
}

namespace {

void apply_pointwise(std::vector<double>& v, const PiecewiseLinearActivation& act) {
  for (std::size_t k = 1; k < v.size(); ++k) v[k] = act.eval(v[k]);
}

std::vector<double> dense_forward(const DenseLayer& l, const std::vector<double>& x) {
  std::vector<double> y = l.weights * x;
  apply_pointwise(y, l.activation);
  return y;
}

std::vector<double> conv_forward(const ConvLayer& l, const std::vector<double>& x) {
  std::vector<double> y(l.out_dim(), 0.0);
  y[0] = 1.0;
  const int oh = l.out_h(), ow = l.out_w();
  for (int f = 0; f < l.num_filters; ++f)
    for (int r = 0; r < oh; ++r)
      for (int s = 0; s < ow; ++s) {
        double acc = l.bias[f];
        for (int c = 0; c < l.in_channels; ++c)
          for (int m = 0; m < l.kh; ++m)
            for (int n = 0; n < l.kw; ++n)
              acc += l.filter_at(f, c, m, n) * x[1 + (c * l.in_h + r + m) * l.in_w + s + n];
        y[1 + (f * oh + r) * ow + s] = acc;
      }
  apply_pointwise(y, l.activation);
  return y;
}

std::vector<double> pool_forward(const PoolLayer& l, const std::vector<double>& x) {
  std::vector<double> y(l.out_dim(), 0.0);
  y[0] = 1.0;
  for (std::size_t k = 0; k < l.regions.size(); ++k) {
    double mx = x[1 + l.regions[k][0]];
    for (int idx : l.regions[k]) mx = std::max(mx, x[1 + idx]);
    y[1 + k] = mx;
  }
  return y;
}

}  // namespace

std::vector<double> Network::forward(const std::vector<double>& x0) const {
  if (x0.size() != stacked_input_dim())
    throw ShapeError("forward: input length " + std::to_string(x0.size()) + " != " +
                     std::to_string(stacked_input_dim()));
  for (int t = 0; t < time_steps; ++t)
    if (x0[t * input_dim] != 1.0)
      throw ShapeError("forward: each input slice must start with the dummy 1");
  for (double v : x0)
    if (std::isnan(v)) throw ValueError("forward: NaN in input");

  // Per-timestep slices of the current state.
  std::vector<std::vector<double>> state(time_steps);
  for (int t = 0; t < time_steps; ++t)
    state[t].assign(x0.begin() + t * input_dim, x0.begin() + (t + 1) * input_dim);

  for (const Layer& layer : layers) {
    if (const auto* r = std::get_if<RecurrentLayer>(&layer)) {
      std::vector<double> h(r->input_weights.rows(), 0.0);  // h(0) = 0
      for (int t = 0; t < time_steps; ++t) {
        std::vector<double> pre = r->input_weights * state[t];
        const std::vector<double> rec = r->hidden_weights * h;
        for (std::size_t k = 0; k < pre.size(); ++k) pre[k] += rec[k];
        apply_pointwise(pre, r->activation);
        h = pre;
        state[t] = h;
      }
    } else {
      for (int t = 0; t < time_steps; ++t) {
        if (const auto* d = std::get_if<DenseLayer>(&layer)) state[t] = dense_forward(*d, state[t]);
        else if (const auto* c = std::get_if<ConvLayer>(&layer)) state[t] = conv_forward(*c, state[t]);
        else state[t] = pool_forward(std::get<PoolLayer>(layer), state[t]);
      }
    }
  }

  std::vector<double> out;
  for (int t = 0; t < time_steps; ++t) {
    apply_final_activation(state[t], final_activation);
    out.insert(out.end(), state[t].begin(), state[t].end());
  }
  return out;
}

}  // namespace rentt
