#include "pprd/assignment.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace pprd {

namespace {
thread_local std::uint64_t g_solve_count = 0;
}

std::uint64_t assignment_solve_count() { return g_solve_count; }

Assignment solve_assignment_flat(const std::vector<double>& cost, std::size_t n) {
  if (n == 0 || cost.size() != n * n)
    throw std::invalid_argument("solve_assignment: cost matrix must be square, n >= 1");
  for (double v : cost) {
    if (!std::isfinite(v))
      throw std::invalid_argument("solve_assignment: cost matrix must be finite");
  }
  ++g_solve_count;

  const double inf = std::numeric_limits<double>::infinity();
  // 1-based shortest augmenting path with dual potentials u, v.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
  std::vector<double> minv(n + 1);
  std::vector<char> used(n + 1);

  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = p[j0];
      std::size_t j1 = 0;
      double delta = inf;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost[(i0 - 1) * n + (j - 1)] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  Assignment result;
  result.permutation.assign(n, 0);
  for (std::size_t j = 1; j <= n; ++j) {
    if (p[j] != 0) result.permutation[p[j] - 1] = j - 1;
  }
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) total += cost[i * n + result.permutation[i]];
  result.total_cost = total;
  return result;
}

Assignment solve_assignment(const std::vector<std::vector<double>>& cost) {
  const std::size_t n = cost.size();
  if (n == 0) throw std::invalid_argument("solve_assignment: empty cost matrix");
  std::vector<double> flat;
  flat.reserve(n * n);
  for (const auto& row : cost) {
    if (row.size() != n)
      throw std::invalid_argument("solve_assignment: cost matrix must be square");
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return solve_assignment_flat(flat, n);
}

}  // namespace pprd
