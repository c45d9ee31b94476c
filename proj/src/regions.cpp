#include "rampsim/regions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace rampsim {
namespace {

// Solve a small dense system in place; returns false when singular.
bool solve(std::vector<std::vector<double>> A, std::vector<double> b,
           std::vector<double>& x) {
  const int n = static_cast<int>(b.size());
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(A[r][col]) > std::abs(A[piv][col])) piv = r;
    if (std::abs(A[piv][col]) < 1e-12) return false;
    std::swap(A[piv], A[col]);
    std::swap(b[piv], b[col]);
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      double f = A[r][col] / A[col][col];
      for (int c = col; c < n; ++c) A[r][c] -= f * A[col][c];
      b[r] -= f * b[col];
    }
  }
  x.resize(n);
  for (int i = 0; i < n; ++i) x[i] = b[i] / A[i][i];
  return true;
}

double dot(const std::vector<double>& a, const std::vector<double>& x) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * x[i];
  return s;
}

}  // namespace

bool ThroughputRegion::contains(std::span<const double> lambda, double tol) const {
  if (static_cast<int>(lambda.size()) != dim) return false;
  for (double l : lambda)
    if (l < -tol || l > 1 + tol) return false;
  for (const auto& c : constraints) {
    double v = 0;
    for (int i = 0; i < dim; ++i) v += c.a[i] * lambda[i];
    if (c.strict ? v >= c.b - tol : v > c.b + tol) return false;
  }
  return true;
}

double ThroughputRegion::max_equal_rate() const {
  double best = 1.0;  // Bernoulli rates cannot exceed one
  for (const auto& c : constraints) {
    double s = 0;
    for (double a : c.a) s += a;
    if (s > 0) best = std::min(best, c.b / s);
  }
  return best;
}

ThroughputRegion inner_region_renewal(const CumulativeRouting& Rt,
                                      const std::vector<int>& k) {
  const int m = Rt.size();
  if (static_cast<int>(k.size()) != m)
    throw std::invalid_argument("one headway multiple per ramp required");
  ThroughputRegion reg;
  reg.dim = m;
  for (int i = 0; i < m; ++i) {
    if (k[i] < 2) throw std::invalid_argument("headway multiples are at least 2");
    LinearConstraint c;
    c.a.assign(m, 0.0);
    for (int s = 0; s < m; ++s) c.a[s] = (k[i] - 1) * Rt.Rt[s][i];
    c.a[i] -= (k[i] - 2);
    c.b = 1.0;
    c.strict = true;
    reg.constraints.push_back(std::move(c));
  }
  return reg;
}

ThroughputRegion inner_region_fixed_cycle(const CumulativeRouting& Rt,
                                          const std::vector<int>& k) {
  const int m = Rt.size();
  if (static_cast<int>(k.size()) != m)
    throw std::invalid_argument("one headway multiple per ramp required");
  ThroughputRegion reg;
  reg.dim = m;
  for (int i = 0; i < m; ++i) {
    if (k[i] < 2) throw std::invalid_argument("headway multiples are at least 2");
    LinearConstraint c;
    c.a.assign(m, 0.0);
    for (int s = 0; s < m; ++s) c.a[s] = (k[i] - 1) * Rt.Rt[s][i];
    c.b = 1.0;
    c.strict = true;
    reg.constraints.push_back(std::move(c));
  }
  return reg;
}

ThroughputRegion outer_region(const CumulativeRouting& Rt) {
  const int m = Rt.size();
  ThroughputRegion reg;
  reg.dim = m;
  for (int i = 0; i < m; ++i) {
    LinearConstraint c;
    c.a.assign(m, 0.0);
    for (int s = 0; s < m; ++s) c.a[s] = Rt.Rt[s][i];
    c.b = 1.0;
    c.strict = false;
    reg.constraints.push_back(std::move(c));
  }
  return reg;
}

ThroughputRegion restrict_region(const ThroughputRegion& region,
                                 const std::vector<std::optional<double>>& fixed) {
  if (static_cast<int>(fixed.size()) != region.dim)
    throw std::invalid_argument("fixed vector must match region dimension");
  std::vector<int> free_idx;
  for (int i = 0; i < region.dim; ++i)
    if (!fixed[i]) free_idx.push_back(i);
  const int d = static_cast<int>(free_idx.size());

  ThroughputRegion out;
  out.dim = d;
  std::vector<LinearConstraint> pool;
  for (const auto& c : region.constraints) {
    LinearConstraint nc;
    nc.b = c.b;
    nc.strict = c.strict;
    for (int i = 0; i < region.dim; ++i) {
      if (fixed[i])
        nc.b -= c.a[i] * *fixed[i];
      else
        nc.a.push_back(c.a[i]);
    }
    bool all_zero = true;
    for (double a : nc.a) all_zero = all_zero && std::abs(a) < 1e-15;
    if (all_zero) {
      if (nc.b <= 0)
        throw std::domain_error("restriction leaves an empty region");
      continue;  // constraint holds everywhere
    }
    pool.push_back(std::move(nc));
  }

  if (d == 0) {
    return out;
  }

  // A constraint is redundant when its left side cannot reach its bound
  // anywhere in the box intersected with the other constraints.  The maximum
  // of a linear functional over that polytope sits at a vertex, and every
  // vertex solves d active conditions chosen among {other constraints,
  // lambda_i = 0, lambda_i = 1}.
  std::vector<bool> alive(pool.size(), true);
  auto max_over_others = [&](std::size_t skip) {
    std::vector<LinearConstraint> conds;
    for (std::size_t j = 0; j < pool.size(); ++j)
      if (j != skip && alive[j]) conds.push_back(pool[j]);
    for (int i = 0; i < d; ++i) {
      LinearConstraint lo, hi;
      lo.a.assign(d, 0.0);
      lo.a[i] = -1;
      lo.b = 0;
      hi.a.assign(d, 0.0);
      hi.a[i] = 1;
      hi.b = 1;
      conds.push_back(lo);
      conds.push_back(hi);
    }
    const int n = static_cast<int>(conds.size());
    double best = -std::numeric_limits<double>::infinity();
    std::vector<int> pick(d);
    // enumerate d-subsets of active conditions
    std::vector<int> idx(d);
    for (int i = 0; i < d; ++i) idx[i] = i;
    while (true) {
      std::vector<std::vector<double>> A;
      std::vector<double> rhs;
      for (int i = 0; i < d; ++i) {
        A.push_back(conds[idx[i]].a);
        rhs.push_back(conds[idx[i]].b);
      }
      std::vector<double> x;
      if (solve(A, rhs, x)) {
        bool feasible = true;
        for (const auto& c : conds)
          if (dot(c.a, x) > c.b + 1e-9) feasible = false;
        if (feasible) best = std::max(best, dot(pool[skip].a, x));
      }
      // next combination
      int i = d - 1;
      while (i >= 0 && idx[i] == n - d + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < d; ++j) idx[j] = idx[j - 1] + 1;
    }
    return best;
  };

  for (std::size_t i = 0; i < pool.size(); ++i) {
    double reach = max_over_others(i);
    bool redundant = pool[i].strict ? reach < pool[i].b - 1e-9
                                    : reach <= pool[i].b + 1e-9;
    if (redundant) alive[i] = false;
  }
  for (std::size_t i = 0; i < pool.size(); ++i)
    if (alive[i]) out.constraints.push_back(pool[i]);
  return out;
}

}  // namespace rampsim
