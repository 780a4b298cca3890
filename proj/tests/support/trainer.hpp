#pragma once

#include <cstdint>
#include <vector>

#include "rentt/network.hpp"

namespace rentt::testing {

struct TrainConfig {
  std::vector<int> hidden;  // non-dummy hidden sizes
  int inputs = 1;
  int outputs = 1;
  std::uint64_t seed = 1;
  int epochs = 5000;
  double lr = 1e-2;
  int restarts = 1;            // keep the best run
  double target_mse = 0.0;     // early stop when reached (0 = never)
  double bias_init = 0.0;      // hidden bias start; positive keeps ReLUs alive
  FinalActivation final_activation = FinalActivation::kNone;
};

/// Full-batch Adam on MSE over a ReLU MLP with identity output layer.
/// Returns the trained network (augmented weights); final_mse receives the
/// best training MSE (pre-final-activation fit, i.e. on raw outputs).
Network train_mlp(const std::vector<std::vector<double>>& X,
                  const std::vector<std::vector<double>>& Y, const TrainConfig& cfg,
                  double* final_mse = nullptr);

/// Uniform [lo, hi] feature rows, seeded.
std::vector<std::vector<double>> uniform_rows(std::uint64_t seed, std::size_t n, int dim,
                                              double lo, double hi);

/// Prepends the dummy 1 to every row.
std::vector<std::vector<double>> augment_rows(const std::vector<std::vector<double>>& X);

}  // namespace rentt::testing
