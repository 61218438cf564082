#pragma once
// Power-law parameter extraction by log-log least squares.

#include <cstddef>
#include <vector>

#include "nlshift/core.hpp"

namespace nlshift {

struct FitPoint {
  double x = 0.0;
  double y = 0.0;  // sign recorded, fit runs on |y|
  double w = 1.0;  // optional weight (used only by the weighted variant)
};

struct FitResult {
  double exponent = 0.0;
  double exponent_stderr = 0.0;
  double coefficient = 0.0;
  double coefficient_stderr = 0.0;
  double r_squared = 0.0;
  std::size_t n_points = 0;
  int sign = +1;  // common sign of the y values
};

// OLS on (ln x, ln |y|): exponent = slope, coefficient = exp(intercept),
// standard errors from the residual variance.  Rejects fewer than 3 points,
// non-positive x, zero y, mixed-sign y, and degenerate (all x equal) data.
FitResult power_law_fit(const std::vector<FitPoint>& points, bool weighted = false);

}  // namespace nlshift
