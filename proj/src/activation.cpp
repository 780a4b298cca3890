#include "rentt/activation.hpp"

#include <cmath>
#include <functional>

#include "rentt/error.hpp"

namespace rentt {

namespace {
constexpr double kContinuityTol = 1e-12;
}

void PiecewiseLinearActivation::validate() const {
  if (slopes.size() != breakpoints.size() + 1 || intercepts.size() != slopes.size())
    throw ValueError("activation '" + name + "': slopes/intercepts must have breakpoints+1 entries");
  for (std::size_t k = 0; k + 1 < breakpoints.size(); ++k)
    if (!(breakpoints[k] < breakpoints[k + 1]))
      throw ValueError("activation '" + name + "': breakpoints must be strictly increasing");
  for (std::size_t k = 0; k < breakpoints.size(); ++k) {
    const double tau = breakpoints[k];
    const double left = slopes[k] * tau + intercepts[k];
    const double right = slopes[k + 1] * tau + intercepts[k + 1];
    if (std::abs(left - right) > kContinuityTol * std::max(1.0, std::abs(left)))
      throw ValueError("activation '" + name + "': discontinuity at breakpoint " +
                       std::to_string(tau));
  }
}

int PiecewiseLinearActivation::region_of(double z) const {
  if (std::isnan(z)) throw ValueError("region_of: NaN preactivation");
  int k = 0;
  while (k < static_cast<int>(breakpoints.size()) && z >= breakpoints[k]) ++k;
  return k;
}

double PiecewiseLinearActivation::eval(double z) const {
  const int k = region_of(z);
  return slopes[k] * z + intercepts[k];
}

PiecewiseLinearActivation PiecewiseLinearActivation::relu() {
  return {"relu", {0.0}, {0.0, 1.0}, {0.0, 0.0}};
}

PiecewiseLinearActivation PiecewiseLinearActivation::leaky_relu(double alpha) {
  return {"leaky_relu", {0.0}, {alpha, 1.0}, {0.0, 0.0}};
}

PiecewiseLinearActivation PiecewiseLinearActivation::identity() {
  return {"identity", {}, {1.0}, {0.0}};
}

PiecewiseLinearActivation PiecewiseLinearActivation::absolute() {
  return {"abs", {0.0}, {-1.0, 1.0}, {0.0, 0.0}};
}

PiecewiseLinearActivation PiecewiseLinearActivation::tabulate(
    const std::string& fn, std::vector<double> breakpoints) {
  for (std::size_t k = 0; k + 1 < breakpoints.size(); ++k)
    if (!(breakpoints[k] < breakpoints[k + 1]))
      throw ValueError("tabulate: breakpoints must be strictly increasing");

  std::function<double(double)> f;
  double slope_left = 0.0, slope_right = 0.0;
  if (fn == "relu") {
    f = [](double x) { return x > 0 ? x : 0.0; };
    slope_left = 0.0;
    slope_right = 1.0;
  } else if (fn == "abs") {
    f = [](double x) { return std::abs(x); };
    slope_left = -1.0;
    slope_right = 1.0;
  } else if (fn == "identity") {
    f = [](double x) { return x; };
    slope_left = slope_right = 1.0;
  } else if (fn == "tanh") {
    f = [](double x) { return std::tanh(x); };
    slope_left = slope_right = 0.0;
  } else if (fn == "sigmoid") {
    f = [](double x) { return 1.0 / (1.0 + std::exp(-x)); };
    slope_left = slope_right = 0.0;
  } else if (fn == "leaky_relu") {
    f = [](double x) { return x > 0 ? x : 0.01 * x; };
    slope_left = 0.01;
    slope_right = 1.0;
  } else {
    throw UnsupportedError("tabulate: unsupported function '" + fn + "'");
  }
  if (breakpoints.empty()) throw ValueError("tabulate: need at least one breakpoint");

  PiecewiseLinearActivation act;
  act.name = fn;
  act.breakpoints = breakpoints;
  const std::size_t r = breakpoints.size() + 1;
  act.slopes.resize(r);
  act.intercepts.resize(r);

  // Left unbounded region: asymptotic slope anchored at the first breakpoint.
  act.slopes[0] = slope_left;
  act.intercepts[0] = f(breakpoints.front()) - slope_left * breakpoints.front();
  // Interior regions: secants through adjacent breakpoint values.
  for (std::size_t k = 1; k + 1 < r; ++k) {
    const double a = breakpoints[k - 1], b = breakpoints[k];
    const double s = (f(b) - f(a)) / (b - a);
    act.slopes[k] = s;
    act.intercepts[k] = f(a) - s * a;
  }
  // Right unbounded region.
  act.slopes[r - 1] = slope_right;
  act.intercepts[r - 1] = f(breakpoints.back()) - slope_right * breakpoints.back();

  act.validate();
  return act;
}

Matrix activation_matrix(const std::vector<double>& preactivation,
                         const PiecewiseLinearActivation& act) {
  if (preactivation.empty() || preactivation[0] != 1.0)
    throw ShapeError("activation_matrix: preactivation must carry the dummy 1 at index 0");
  const std::size_t n = preactivation.size();
  Matrix lambda(n, n);
  lambda(0, 0) = 1.0;
  for (std::size_t k = 1; k < n; ++k) {
    const int r = act.region_of(preactivation[k]);
    lambda(k, k) = act.slopes[r];
    lambda(k, 0) = act.intercepts[r];
  }
  return lambda;
}

Matrix activation_matrix_from_regions(const std::vector<std::uint16_t>& regions,
                                      const PiecewiseLinearActivation& act) {
  const std::size_t n = regions.size() + 1;
  Matrix lambda(n, n);
  lambda(0, 0) = 1.0;
  for (std::size_t k = 1; k < n; ++k) {
    const int r = regions[k - 1];
    if (r >= static_cast<int>(act.regions()))
      throw ContractError("activation_matrix_from_regions: region index out of range");
    lambda(k, k) = act.slopes[r];
    lambda(k, 0) = act.intercepts[r];
  }
  return lambda;
}

}  // namespace rentt
