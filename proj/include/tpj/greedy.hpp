#pragma once

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <vector>

#include "tpj/jump.hpp"
#include "tpj/rational.hpp"

namespace tpj {

struct GreedyResult {
  DemandVector optimum;
  Rational value;
  std::vector<int> order;  // coordinate ranks in the order they were fixed
};

/// Maximizes w . x over an explicit jump system by the coordinate-fixing
/// greedy: process coordinates by decreasing |w| (ties by rank), and at each
/// one fix the extreme value achievable together with the already-fixed
/// coordinates - the maximum when w >= 0, the minimum when w < 0.  For jump
/// systems this is optimal; the test suite pins that against brute force.
inline GreedyResult greedy_optimize(const FiniteJumpSystem& j, const std::vector<Rational>& w) {
  const int n = static_cast<int>(j.ground.size());
  if (static_cast<int>(w.size()) != n)
    throw std::invalid_argument("greedy_optimize: weight length mismatch");
  if (j.vectors.empty()) throw std::invalid_argument("greedy_optimize: empty system");
  GreedyResult res;
  res.order.resize(n);
  for (int i = 0; i < n; ++i) res.order[i] = i;
  std::stable_sort(res.order.begin(), res.order.end(), [&](int a, int b) {
    return abs(w[a]) > abs(w[b]);  // stable: equal weights keep rank order
  });
  std::vector<const DemandVector*> alive;
  for (const auto& v : j.vectors) alive.push_back(&v);
  for (int t : res.order) {
    bool maximize = w[t] >= 0;
    int extreme = maximize ? std::numeric_limits<int>::min() : std::numeric_limits<int>::max();
    for (const auto* v : alive)
      extreme = maximize ? std::max(extreme, (*v)[t]) : std::min(extreme, (*v)[t]);
    std::vector<const DemandVector*> next;
    for (const auto* v : alive)
      if ((*v)[t] == extreme) next.push_back(v);
    alive = std::move(next);
  }
  // Every coordinate is fixed, so exactly one vector remains.
  res.optimum = *alive.front();
  res.value = 0;
  for (int i = 0; i < n; ++i) res.value += w[i] * res.optimum[i];
  return res;
}

/// Brute-force maximum of w . x over the system, for cross-checking.
inline GreedyResult brute_force_optimize(const FiniteJumpSystem& j,
                                         const std::vector<Rational>& w) {
  const int n = static_cast<int>(j.ground.size());
  if (static_cast<int>(w.size()) != n)
    throw std::invalid_argument("brute_force_optimize: weight length mismatch");
  if (j.vectors.empty()) throw std::invalid_argument("brute_force_optimize: empty system");
  GreedyResult res;
  bool first = true;
  for (const auto& v : j.vectors) {
    Rational val = 0;
    for (int i = 0; i < n; ++i) val += w[i] * v[i];
    if (first || val > res.value) {
      res.value = val;
      res.optimum = v;
      first = false;
    }
  }
  return res;
}

}  // namespace tpj
