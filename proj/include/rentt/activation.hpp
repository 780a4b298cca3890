#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rentt/matrix.hpp"

namespace rentt {

/// A continuous piecewise-linear scalar function. `breakpoints` splits the
/// real line into regions()==breakpoints.size()+1 intervals; region k uses
/// slopes[k] and intercepts[k]. A value exactly on a breakpoint belongs to
/// the region on its right (so ReLU has slope 1 at 0).
struct PiecewiseLinearActivation {
  std::string name;
  std::vector<double> breakpoints;
  std::vector<double> slopes;
  std::vector<double> intercepts;

  std::size_t regions() const { return slopes.size(); }

  /// Throws ValueError if breakpoints are not strictly increasing, the
  /// slope/intercept lengths disagree, or adjacent pieces are discontinuous.
  void validate() const;

  int region_of(double z) const;
  double eval(double z) const;

  static PiecewiseLinearActivation relu();
  static PiecewiseLinearActivation leaky_relu(double alpha);
  static PiecewiseLinearActivation identity();
  static PiecewiseLinearActivation absolute();

  /// Secant interpolant of a named pointwise function through the given
  /// breakpoints; unbounded end regions use the one-sided asymptotic slope,
  /// anchored at the boundary value so the result stays continuous.
  /// Supported names: relu, abs, identity, tanh, sigmoid, leaky_relu.
  static PiecewiseLinearActivation tabulate(const std::string& fn,
                                            std::vector<double> breakpoints);
};

/// Builds the activation matrix for a given preactivation vector: slope of
/// each component's region on the diagonal, intercept folded into column 0,
/// dummy row 0 = (1,0,...,0). Applying it to the preactivation reproduces
/// the activation component-wise.
Matrix activation_matrix(const std::vector<double>& preactivation,
                         const PiecewiseLinearActivation& act);

/// Same matrix, but built purely from region indices (one per non-dummy
/// component). This is what the tree uses: no data needed.
Matrix activation_matrix_from_regions(const std::vector<std::uint16_t>& regions,
                                      const PiecewiseLinearActivation& act);

}  // namespace rentt
