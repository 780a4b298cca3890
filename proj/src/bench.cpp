#include "rentt/bench.hpp"

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <thread>

#include "rentt/error.hpp"
#include "rentt/tree.hpp"

namespace rentt {

namespace {

/// Current resident set size in bytes (Linux /proc/self/statm).
std::size_t current_rss() {
  std::ifstream statm("/proc/self/statm");
  std::size_t total = 0, resident = 0;
  if (!(statm >> total >> resident)) return 0;
  return resident * static_cast<std::size_t>(sysconf(_SC_PAGESIZE));
}

/// Samples RSS on a background thread (>= 100 Hz) and tracks the peak seen
/// between start() and stop().
class RssWatcher {
 public:
  void start() {
    baseline_ = current_rss();
    peak_.store(baseline_);
    running_.store(true);
    thread_ = std::thread([this] {
      while (running_.load()) {
        const std::size_t rss = current_rss();
        std::size_t prev = peak_.load();
        while (rss > prev && !peak_.compare_exchange_weak(prev, rss)) {
        }
        std::this_thread::sleep_for(std::chrono::milliseconds(5));
      }
    });
  }

  /// Peak RSS delta in bytes since start(), at least one page.
  std::size_t stop() {
    running_.store(false);
    if (thread_.joinable()) thread_.join();
    const std::size_t peak = std::max(peak_.load(), current_rss());
    const std::size_t delta = peak > baseline_ ? peak - baseline_ : 0;
    return std::max<std::size_t>(delta, 4096);
  }

  std::size_t peak_so_far() const { return peak_.load(); }

 private:
  std::thread thread_;
  std::atomic<bool> running_{false};
  std::atomic<std::size_t> peak_{0};
  std::size_t baseline_ = 0;
};

Matrix random_raw(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = dist(rng);
  return m;
}

void mean_std(const std::vector<double>& v, double& mean, double& sd) {
  mean = 0.0;
  for (const double x : v) mean += x;
  mean /= v.size();
  double var = 0.0;
  for (const double x : v) var += (x - mean) * (x - mean);
  sd = v.size() > 1 ? std::sqrt(var / (v.size() - 1)) : 0.0;
}

}  // namespace

Network make_random_relu_network(std::uint64_t seed, int features, int hidden, int outputs) {
  if (features < 1 || hidden < 2 || outputs < 1)
    throw ValueError("make_random_relu_network: need features >= 1, hidden >= 2, outputs >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  const int h1 = hidden / 2, h2 = hidden - h1;

  auto dense = [&](int out, int in, const PiecewiseLinearActivation& act) {
    const Matrix raw = random_raw(rng, out, in);
    std::vector<double> bias(out);
    for (double& b : bias) b = dist(rng);
    return DenseLayer{augment(raw, bias), act};
  };

  Network net;
  net.input_dim = features + 1;
  net.layers.push_back(dense(h1, features, PiecewiseLinearActivation::relu()));
  net.layers.push_back(dense(h2, h1, PiecewiseLinearActivation::relu()));
  net.layers.push_back(dense(outputs, h2, PiecewiseLinearActivation::identity()));
  return net;
}

std::vector<std::vector<double>> make_random_dataset(std::uint64_t seed, std::size_t rows,
                                                     int features) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<std::vector<double>> out(rows, std::vector<double>(features));
  for (auto& row : out)
    for (double& v : row) v = dist(rng);
  return out;
}

std::vector<BenchRecord> bench_transform(const std::vector<int>& grid, const BenchConfig& cfg) {
  if (cfg.repeats < 3) throw ValueError("bench_transform: repeats must be >= 3");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (grid[i] <= grid[i - 1]) throw ValueError("bench_transform: grid must be ascending");

  std::vector<BenchRecord> records;
  for (const int x : grid) {
    const Network net = make_random_relu_network(cfg.seed, cfg.features, x, cfg.outputs);
    const auto raw = make_random_dataset(cfg.seed + 1, cfg.samples, cfg.features);
    std::vector<std::vector<double>> rows;
    rows.reserve(raw.size());
    for (const auto& r : raw) {
      std::vector<double> row{1.0};
      row.insert(row.end(), r.begin(), r.end());
      rows.push_back(std::move(row));
    }

    BenchRecord rec;
    rec.hidden_neurons = x;
    rec.repeats = cfg.repeats;
    std::vector<double> times, mems;
    for (int rep = 0; rep < cfg.repeats; ++rep) {
      RssWatcher watcher;
      watcher.start();
      const auto t0 = std::chrono::steady_clock::now();
      DecisionTree tree = DecisionTree::transform(net, rows);
      const auto t1 = std::chrono::steady_clock::now();
      const std::size_t mem = watcher.stop();
      if (cfg.memory_cap > 0 && mem > cfg.memory_cap) rec.aborted = true;
      times.push_back(std::chrono::duration<double>(t1 - t0).count());
      mems.push_back(static_cast<double>(mem));
      (void)tree.node_count();
      if (rec.aborted) break;
    }
    mean_std(times, rec.time_mean, rec.time_std);
    mean_std(mems, rec.memory_mean, rec.memory_std);
    records.push_back(rec);
    if (rec.aborted) break;
  }
  return records;
}

PowerLawFit fit_power_law(const std::vector<double>& xs, const std::vector<double>& ys,
                          double x_min, double x_max) {
  if (xs.size() != ys.size()) throw ShapeError("fit_power_law: x/y length mismatch");
  std::vector<double> lx, ly;
  double used_min = 0.0, used_max = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i] < x_min || xs[i] > x_max) continue;
    if (xs[i] <= 0.0 || ys[i] <= 0.0)
      throw DomainError("fit_power_law: values must be positive for a log-log fit");
    used_min = lx.empty() ? xs[i] : std::min(used_min, xs[i]);
    used_max = lx.empty() ? xs[i] : std::max(used_max, xs[i]);
    lx.push_back(std::log(xs[i]));
    ly.push_back(std::log(ys[i]));
  }
  if (lx.size() < 3) throw DomainError("fit_power_law: need at least 3 points in range");

  const std::size_t n = lx.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw DomainError("fit_power_law: degenerate x values");

  PowerLawFit fit;
  fit.exponent = (n * sxy - sx * sy) / denom;
  const double intercept = (sy - fit.exponent * sx) / n;
  fit.coefficient = std::exp(intercept);
  fit.x_min = used_min;  // extent of the points actually fitted
  fit.x_max = used_max;
  double rss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = ly[i] - (intercept + fit.exponent * lx[i]);
    rss += e * e;
  }
  fit.residual = std::sqrt(rss / n);
  return fit;
}

std::string bench_csv(const std::vector<BenchRecord>& records) {
  std::ostringstream os;
  os.precision(17);
  os << "x,t_mean,t_std,mem_mean,mem_std\n";
  for (const BenchRecord& r : records)
    os << r.hidden_neurons << ',' << r.time_mean << ',' << r.time_std << ',' << r.memory_mean
       << ',' << r.memory_std << '\n';
  return os.str();
}

std::vector<BenchRecord> parse_bench_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<BenchRecord> records;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.rfind("x,", 0) == 0) {  // header (repeated on append)
      first = false;
      continue;
    }
    if (first) throw SchemaError("bench csv: missing header row");
    BenchRecord r;
    std::istringstream ls(line);
    char comma;
    if (!(ls >> r.hidden_neurons >> comma >> r.time_mean >> comma >> r.time_std >> comma >>
          r.memory_mean >> comma >> r.memory_std))
      throw SchemaError("bench csv: malformed row: " + line);
    records.push_back(r);
  }
  if (records.empty()) throw EmptyDatasetError("bench csv: no records");
  return records;
}

}  // namespace rentt
