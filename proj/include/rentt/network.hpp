#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "rentt/activation.hpp"
#include "rentt/matrix.hpp"

namespace rentt {

/// Fully connected layer with bias-augmented weights: row 0 is (1,0,...,0)
/// and column 0 carries the bias, so the dummy input coordinate propagates.
struct DenseLayer {
  Matrix weights;  // n_out x n_in, augmented
  PiecewiseLinearActivation activation;
};

/// Stride-1 convolution over a (channels, height, width) feature map.
/// Filters are stored flat as [filter][channel][kh][kw].
struct ConvLayer {
  int num_filters = 0;
  int in_channels = 0, in_h = 0, in_w = 0;
  int kh = 0, kw = 0;
  std::vector<double> filters;
  std::vector<double> bias;  // one per filter
  PiecewiseLinearActivation activation;

  int out_h() const { return in_h - kh + 1; }
  int out_w() const { return in_w - kw + 1; }
  int in_dim() const { return in_channels * in_h * in_w + 1; }    // augmented
  int out_dim() const { return num_filters * out_h() * out_w() + 1; }
  double filter_at(int f, int c, int m, int n) const {
    return filters[((f * in_channels + c) * kh + m) * kw + n];
  }
};

/// Max pooling over explicit index sets into the unflattened feature map
/// (0-based, excluding the dummy). Regions may overlap.
struct PoolLayer {
  int dh = 0, dw = 0, stride = 1;
  int in_channels = 0, in_h = 0, in_w = 0;
  std::vector<std::vector<int>> regions;

  int filter_size() const { return dh * dw; }
  int pairs_per_region() const { return filter_size() * (filter_size() - 1) / 2; }
  int in_dim() const { return in_channels * in_h * in_w + 1; }
  int out_dim() const { return static_cast<int>(regions.size()) + 1; }

  /// Regions from a sliding (dh x dw) window with the given stride, applied
  /// per channel; ordered channel-major then row-major over window positions.
  static PoolLayer from_window(int channels, int h, int w, int dh, int dw, int stride);
};

/// Single recurrent cell h(t) = act(Wh h(t-1) + Wx x(t)), h(0)=0, with both
/// weight matrices bias-augmented (bias lives in Wx's column 0; Wh's dummy
/// row and column are zero so the dummy stays 1).
struct RecurrentLayer {
  Matrix input_weights;   // n_i x n_{i-1}, augmented
  Matrix hidden_weights;  // n_i x n_i, augmented with zero dummy row
  PiecewiseLinearActivation activation;
  int time_steps = 1;
};

enum class FinalActivation { kNone, kTanh, kSoftmax };

std::string to_string(FinalActivation fa);

using Layer = std::variant<DenseLayer, ConvLayer, PoolLayer, RecurrentLayer>;

/// Augmented output dimension of a layer (per time slice).
std::size_t layer_out_dim(const Layer& layer);
std::size_t layer_in_dim(const Layer& layer);

/// An ingested network. `input_dim` is the augmented per-slice input size;
/// sequence networks (any recurrent layer) take time_steps stacked slices,
/// each with its own dummy 1. All values are immutable after construction.
struct Network {
  std::vector<Layer> layers;
  std::size_t input_dim = 0;
  int time_steps = 1;
  FinalActivation final_activation = FinalActivation::kNone;

  std::size_t output_dim() const;       // augmented, per slice
  std::size_t stacked_input_dim() const { return input_dim * time_steps; }

  void validate() const;

  /// Reference forward pass using direct layer evaluation (explicit
  /// convolution/pooling loops, step-by-step recurrence). Returns the
  /// augmented output with the final activation applied.
  std::vector<double> forward(const std::vector<double>& x0) const;
};

/// Bias augmentation: wraps an (n_out x n_in) raw weight matrix and a bias
/// vector into the ((n_out+1) x (n_in+1)) block form with leading dummy row.
Matrix augment(const Matrix& raw, const std::vector<double>& bias);

/// Applies the final activation in place to the non-dummy part.
void apply_final_activation(std::vector<double>& y, FinalActivation fa);

}  // namespace rentt
