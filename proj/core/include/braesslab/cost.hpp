#pragma once

#include <utility>
#include <vector>

#include "braesslab/errors.hpp"

namespace braesslab {

// Nondecreasing piecewise-linear cost function on loads t >= 0.  Given
// breakpoints (t_0, v_0), ..., (t_k, v_k) with t_0 = 0, the function
// interpolates linearly between breakpoints and continues beyond t_k with
// slope `final_slope`.  Integrals from 0 are piecewise quadratic and are
// evaluated in closed form; breakpoint prefix integrals are precomputed.
class CostFunction {
 public:
  CostFunction(std::vector<std::pair<double, double>> breakpoints, double final_slope);

  static CostFunction constant(double value);
  static CostFunction linear(double slope, double intercept = 0.0);

  double value(double t) const;
  // Integral of the cost from 0 to t (the summand of the potential).
  double integral(double t) const;
  // One-sided derivatives at t: the slope of the segment just above and just
  // below the load.  Both equal final_slope beyond the last breakpoint;
  // below 0 there is no function, so slope_below(0) is the slope above 0.
  double slope_above(double t) const;
  double slope_below(double t) const;

  const std::vector<std::pair<double, double>>& breakpoints() const { return breakpoints_; }
  double final_slope() const { return final_slope_; }

  // Pointwise scaling by a nonnegative factor; factor <= 1 yields a valid
  // cost reduction.
  CostFunction scaled(double factor) const;

 private:
  std::vector<std::pair<double, double>> breakpoints_;
  double final_slope_;
  std::vector<double> prefix_integral_;  // integral up to each breakpoint
};

// Exact decision of c1(t) <= c2(t) for all t >= 0.  Both functions are
// linear between consecutive points of their merged breakpoint grid, so it
// suffices to compare values on the grid and the final slopes.
bool pointwise_leq(const CostFunction& c1, const CostFunction& c2);

}  // namespace braesslab
