#include "braesslab/polymatroid.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace braesslab {

namespace {

void require_small_ground(const WeightedRankSum& ws, const char* op) {
  if (ws.ground().size() > 20) {
    throw GroundSetTooLarge(std::string(op) + " enumerates all subsets and is limited to 20 resources");
  }
}

void require_matching_size(const WeightedRankSum& ws, const BaseVector& x) {
  if (static_cast<int>(x.size()) != ws.ground().size()) {
    throw ValidationError("load vector length does not match the ground set");
  }
}

}  // namespace

WeightedRankSum::WeightedRankSum(GroundSet ground, std::vector<WeightedRank> terms)
    : ground_(std::move(ground)), terms_(std::move(terms)) {
  for (const auto& term : terms_) {
    if (!std::isfinite(term.weight) || term.weight < 0.0) {
      throw ValidationError("rank weights must be finite and nonnegative");
    }
    if (term.matroid.ground() != ground_) {
      throw ValidationError("all matroids in a weighted rank sum must share the ground set");
    }
  }
}

double WeightedRankSum::rho(const IndexSet& u) const {
  double sum = 0.0;
  for (const auto& term : terms_) sum += term.weight * term.matroid.rank(u);
  return sum;
}

double WeightedRankSum::rho_of_mask(std::uint64_t u) const {
  double sum = 0.0;
  for (const auto& term : terms_) sum += term.weight * term.matroid.rank_of_mask(u);
  return sum;
}

double WeightedRankSum::total() const {
  double sum = 0.0;
  for (const auto& term : terms_) sum += term.weight * term.matroid.rank();
  return sum;
}

bool in_base_polytope(const WeightedRankSum& ws, const BaseVector& x, double tol) {
  require_small_ground(ws, "in_base_polytope");
  require_matching_size(ws, x);
  const int n = ws.ground().size();
  double total = 0.0;
  for (double xe : x) {
    if (xe < -tol) return false;
    total += xe;
  }
  if (std::abs(total - ws.total()) > tol) return false;
  for (std::uint64_t u = 1; u < (std::uint64_t{1} << n); ++u) {
    double xu = 0.0;
    for (int e = 0; e < n; ++e) {
      if (u & (std::uint64_t{1} << e)) xu += x[static_cast<size_t>(e)];
    }
    if (xu > ws.rho_of_mask(u) + tol) return false;
  }
  return true;
}

ExchangeCapacity exchange_capacity(const WeightedRankSum& ws, const BaseVector& x,
                                   int from, int to) {
  require_small_ground(ws, "exchange_capacity");
  require_matching_size(ws, x);
  if (from == to) {
    throw ValidationError("exchange capacity needs two distinct resources");
  }
  const int n = ws.ground().size();
  double cap = x[static_cast<size_t>(from)];
  const std::uint64_t to_bit = std::uint64_t{1} << to;
  const std::uint64_t from_bit = std::uint64_t{1} << from;
  for (std::uint64_t u = 0; u < (std::uint64_t{1} << n); ++u) {
    if (!(u & to_bit) || (u & from_bit)) continue;
    double xu = 0.0;
    for (int e = 0; e < n; ++e) {
      if (u & (std::uint64_t{1} << e)) xu += x[static_cast<size_t>(e)];
    }
    cap = std::min(cap, ws.rho_of_mask(u) - xu);
  }
  return {from, to, std::max(cap, 0.0)};
}

BaseVector greedy_min_base(const WeightedRankSum& ws, std::span<const double> weights) {
  const int n = ws.ground().size();
  if (static_cast<int>(weights.size()) != n) {
    throw ValidationError("weight vector length does not match the ground set");
  }
  std::vector<int> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return weights[static_cast<size_t>(a)] < weights[static_cast<size_t>(b)];
  });
  BaseVector x(static_cast<size_t>(n), 0.0);
  IndexSet prefix;
  double rho_prev = 0.0;
  for (int e : order) {
    prefix.insert(std::lower_bound(prefix.begin(), prefix.end(), e), e);
    double rho_cur = ws.rho(prefix);
    x[static_cast<size_t>(e)] = rho_cur - rho_prev;
    rho_prev = rho_cur;
  }
  return x;
}

CertificateReport certify_optimality(const WeightedRankSum& ws, const BaseVector& x,
                                     const std::vector<CostFunction>& costs, double tol) {
  require_small_ground(ws, "certify_optimality");
  require_matching_size(ws, x);
  const int n = ws.ground().size();
  if (static_cast<int>(costs.size()) != n) {
    throw ValidationError("cost vector length does not match the ground set");
  }
  std::vector<double> cost_at(static_cast<size_t>(n));
  for (int e = 0; e < n; ++e) {
    cost_at[static_cast<size_t>(e)] = costs[static_cast<size_t>(e)].value(x[static_cast<size_t>(e)]);
  }
  CertificateReport report;
  for (int from = 0; from < n; ++from) {
    for (int to = 0; to < n; ++to) {
      if (from == to) continue;
      if (cost_at[static_cast<size_t>(from)] <= cost_at[static_cast<size_t>(to)] + tol) continue;
      double cap = exchange_capacity(ws, x, from, to).capacity;
      if (cap > tol) {
        report.violations.push_back({from, to, cap, cost_at[static_cast<size_t>(from)],
                                     cost_at[static_cast<size_t>(to)]});
      }
    }
  }
  return report;
}

}  // namespace braesslab
