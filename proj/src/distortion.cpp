#include "pprd/distortion.hpp"

#include <algorithm>
#include <stdexcept>

#include "pprd/assignment.hpp"

namespace pprd {

namespace {

void check_dims(const PointPattern& x, const PointPattern& y) {
  if (!x.is_empty() && !y.is_empty() && x.dim() != y.dim())
    throw std::invalid_argument("distortion: dimension mismatch");
}

}  // namespace

double rho2(const PointPattern& x, const PointPattern& y) {
  if (x.size() != y.size())
    throw std::invalid_argument("rho2: patterns must have equal cardinality");
  check_dims(x, y);
  const std::size_t n = x.size();
  if (n == 0) return 0.0;
  std::vector<double> cost(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) cost[i * n + j] = squared_distance(x, i, y, j);
  return solve_assignment_flat(cost, n).total_cost;
}

double usospa(const PointPattern& x, const PointPattern& y, double c) {
  if (!(c > 0.0)) throw std::invalid_argument("usospa: cutoff must be positive");
  check_dims(x, y);
  const PointPattern& small = x.size() <= y.size() ? x : y;
  const PointPattern& large = x.size() <= y.size() ? y : x;
  const std::size_t k = small.size();
  const std::size_t l = large.size();
  if (l == 0) return 0.0;
  const double c2 = c * c;
  // Rows: the k real points of the smaller pattern plus l-k virtual points
  // with constant cost c^2. Columns: the points of the larger pattern. The
  // virtual rows contribute exactly the (l-k) c^2 cardinality penalty.
  std::vector<double> cost(l * l, c2);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < l; ++j)
      cost[i * l + j] = std::min(squared_distance(small, i, large, j), c2);
  return solve_assignment_flat(cost, l).total_cost;
}

std::pair<double, double> usospa_lower_bounds(const PointPattern& x,
                                              const PointPattern& y, double c) {
  if (!(c > 0.0)) throw std::invalid_argument("usospa_lower_bounds: cutoff must be positive");
  check_dims(x, y);
  const double c2 = c * c;
  double nn_sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double best = c2;  // empty-y convention
    for (std::size_t j = 0; j < y.size(); ++j)
      best = std::min(best, squared_distance(x, i, y, j));
    nn_sum += best;
  }
  double penalty = 0.0;
  if (y.size() > x.size())
    penalty = static_cast<double>(y.size() - x.size()) * c2;
  return {nn_sum, penalty + nn_sum};
}

double distortion(const DistortionSpec& spec, const PointPattern& x,
                  const PointPattern& y) {
  switch (spec.kind) {
    case DistortionKind::FixedCardinalitySquared:
      return rho2(x, y);
    case DistortionKind::Usospa:
      return usospa(x, y, spec.cutoff);
  }
  throw std::invalid_argument("distortion: unknown kind");
}

}  // namespace pprd
