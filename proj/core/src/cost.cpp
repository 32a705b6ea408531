#include "braesslab/cost.hpp"

#include <algorithm>
#include <cmath>

namespace braesslab {

CostFunction::CostFunction(std::vector<std::pair<double, double>> breakpoints,
                           double final_slope)
    : breakpoints_(std::move(breakpoints)), final_slope_(final_slope) {
  if (breakpoints_.empty()) {
    throw ValidationError("cost function needs at least one breakpoint");
  }
  if (breakpoints_.front().first != 0.0) {
    throw ValidationError("first cost breakpoint must be at load 0");
  }
  for (size_t i = 0; i < breakpoints_.size(); ++i) {
    auto [t, v] = breakpoints_[i];
    if (!std::isfinite(t) || !std::isfinite(v)) {
      throw ValidationError("cost breakpoints must be finite");
    }
    if (v < 0.0) {
      throw ValidationError("cost values must be nonnegative");
    }
    if (i > 0) {
      if (t <= breakpoints_[i - 1].first) {
        throw ValidationError("cost breakpoint loads must be strictly increasing");
      }
      if (v < breakpoints_[i - 1].second) {
        throw ValidationError("cost values must be nondecreasing");
      }
    }
  }
  if (!std::isfinite(final_slope_) || final_slope_ < 0.0) {
    throw ValidationError("final cost slope must be finite and nonnegative");
  }
  prefix_integral_.resize(breakpoints_.size(), 0.0);
  for (size_t i = 1; i < breakpoints_.size(); ++i) {
    auto [t0, v0] = breakpoints_[i - 1];
    auto [t1, v1] = breakpoints_[i];
    prefix_integral_[i] = prefix_integral_[i - 1] + 0.5 * (v0 + v1) * (t1 - t0);
  }
}

CostFunction CostFunction::constant(double value) {
  return CostFunction({{0.0, value}}, 0.0);
}

CostFunction CostFunction::linear(double slope, double intercept) {
  return CostFunction({{0.0, intercept}}, slope);
}

double CostFunction::value(double t) const {
  if (t <= 0.0) return breakpoints_.front().second;
  auto [tk, vk] = breakpoints_.back();
  if (t >= tk) return vk + final_slope_ * (t - tk);
  // Last breakpoint with load <= t.
  auto it = std::upper_bound(
      breakpoints_.begin(), breakpoints_.end(), t,
      [](double lhs, const std::pair<double, double>& bp) { return lhs < bp.first; });
  size_t i = static_cast<size_t>(it - breakpoints_.begin()) - 1;
  auto [t0, v0] = breakpoints_[i];
  auto [t1, v1] = breakpoints_[i + 1];
  return v0 + (v1 - v0) * (t - t0) / (t1 - t0);
}

double CostFunction::integral(double t) const {
  if (t <= 0.0) return 0.0;
  auto [tk, vk] = breakpoints_.back();
  if (t >= tk) {
    double dt = t - tk;
    return prefix_integral_.back() + vk * dt + 0.5 * final_slope_ * dt * dt;
  }
  auto it = std::upper_bound(
      breakpoints_.begin(), breakpoints_.end(), t,
      [](double lhs, const std::pair<double, double>& bp) { return lhs < bp.first; });
  size_t i = static_cast<size_t>(it - breakpoints_.begin()) - 1;
  auto [t0, v0] = breakpoints_[i];
  return prefix_integral_[i] + 0.5 * (v0 + value(t)) * (t - t0);
}

double CostFunction::slope_above(double t) const {
  if (t < 0.0) t = 0.0;
  if (t >= breakpoints_.back().first) return final_slope_;
  // Segment [t_i, t_{i+1}) containing t; at a breakpoint this is the segment
  // to its right.
  auto it = std::upper_bound(
      breakpoints_.begin(), breakpoints_.end(), t,
      [](double lhs, const std::pair<double, double>& bp) { return lhs < bp.first; });
  size_t i = static_cast<size_t>(it - breakpoints_.begin()) - 1;
  auto [t0, v0] = breakpoints_[i];
  auto [t1, v1] = breakpoints_[i + 1];
  return (v1 - v0) / (t1 - t0);
}

double CostFunction::slope_below(double t) const {
  if (t <= 0.0) return slope_above(0.0);
  if (t > breakpoints_.back().first) return final_slope_;
  // First breakpoint with load >= t; the segment ending there covers t from
  // the left.
  auto it = std::lower_bound(
      breakpoints_.begin(), breakpoints_.end(), t,
      [](const std::pair<double, double>& bp, double rhs) { return bp.first < rhs; });
  size_t i = static_cast<size_t>(it - breakpoints_.begin());
  if (i == 0) return slope_above(0.0);
  auto [t0, v0] = breakpoints_[i - 1];
  auto [t1, v1] = breakpoints_[i];
  return (v1 - v0) / (t1 - t0);
}

CostFunction CostFunction::scaled(double factor) const {
  if (!std::isfinite(factor) || factor < 0.0) {
    throw ValidationError("cost scaling factor must be finite and nonnegative");
  }
  auto bps = breakpoints_;
  for (auto& [t, v] : bps) v *= factor;
  return CostFunction(std::move(bps), final_slope_ * factor);
}

bool pointwise_leq(const CostFunction& c1, const CostFunction& c2) {
  std::vector<double> grid;
  for (const auto& [t, v] : c1.breakpoints()) grid.push_back(t);
  for (const auto& [t, v] : c2.breakpoints()) grid.push_back(t);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  for (double t : grid) {
    if (c1.value(t) > c2.value(t)) return false;
  }
  // Beyond the last grid point both functions are affine.
  return c1.final_slope() <= c2.final_slope();
}

}  // namespace braesslab
