#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rentt/io.hpp"
#include "rentt/network.hpp"

namespace rentt {

struct BenchRecord {
  int hidden_neurons = 0;  // x
  double time_mean = 0.0, time_std = 0.0;       // seconds
  double memory_mean = 0.0, memory_std = 0.0;   // bytes
  int repeats = 0;
  bool aborted = false;  // memory cap hit; values are partial
};

struct PowerLawFit {
  double exponent = 0.0;     // b in y = a x^b
  double coefficient = 0.0;  // a
  double residual = 0.0;     // RMS residual in log space
  double x_min = 0.0, x_max = 0.0;
};

struct BenchConfig {
  std::uint64_t seed = 42;
  int repeats = 3;
  std::size_t samples = 64;
  int features = 8;
  int outputs = 2;         // non-dummy output count
  std::size_t memory_cap = 0;  // bytes, 0 = unlimited
};

/// Untrained ReLU network with two hidden layers splitting `hidden` neurons
/// evenly; weights are uniform on [-1, 1] from the seeded generator.
Network make_random_relu_network(std::uint64_t seed, int features, int hidden, int outputs);

/// I.i.d. uniform [-1, 1] feature rows (unaugmented), seeded.
std::vector<std::vector<double>> make_random_dataset(std::uint64_t seed, std::size_t rows,
                                                     int features);

/// Times transform() per grid size with a resident-set watcher sampling at
/// >= 100 Hz; memory is the peak RSS delta over the run.
std::vector<BenchRecord> bench_transform(const std::vector<int>& grid, const BenchConfig& cfg);

/// Least squares on (log x, log y) over records with x in [x_min, x_max].
/// Throws DomainError on nonpositive values or fewer than 3 points in range.
PowerLawFit fit_power_law(const std::vector<double>& xs, const std::vector<double>& ys,
                          double x_min, double x_max);

std::string bench_csv(const std::vector<BenchRecord>& records);  // header + rows
std::vector<BenchRecord> parse_bench_csv(const std::string& text);

}  // namespace rentt
