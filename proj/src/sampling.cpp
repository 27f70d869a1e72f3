#include "pprd/sampling.hpp"

#include <stdexcept>

namespace pprd {

PointPattern sample_gaussian_fixed(const GaussianFixedSource& source, Rng& rng) {
  if (source.k == 0 || source.d == 0)
    throw std::invalid_argument("sample_gaussian_fixed: k and d must be positive");
  std::vector<double> coords(source.k * source.d);
  for (double& v : coords) v = rng.next_normal();
  return PointPattern(std::move(coords), source.d);
}

PointPattern sample_poisson_unit_square(const PoissonUnitSquareSource& source, Rng& rng) {
  if (!(source.mean_cardinality > 0.0))
    throw std::invalid_argument("sample_poisson_unit_square: mean cardinality must be positive");
  const std::uint64_t n = rng.next_poisson(source.mean_cardinality);
  std::vector<double> coords(2 * n);
  for (double& v : coords) v = rng.next_unit();
  return PointPattern(std::move(coords), 2);
}

std::pair<PointPattern, PointPattern> sample_quantized_pair(std::size_t n_grid,
                                                            std::size_t k, Rng& rng) {
  if (n_grid == 0 || k == 0)
    throw std::invalid_argument("sample_quantized_pair: n_grid and k must be positive");
  const double n = static_cast<double>(n_grid);
  std::vector<double> xs(2 * k), ys(2 * k);
  for (std::size_t i = 0; i < k; ++i) {
    const double cx = (static_cast<double>(rng.next_below(n_grid)) + 0.5) / n;
    const double cy = (static_cast<double>(rng.next_below(n_grid)) + 0.5) / n;
    ys[2 * i] = cx;
    ys[2 * i + 1] = cy;
    xs[2 * i] = cx + (rng.next_unit() - 0.5) / n;
    xs[2 * i + 1] = cy + (rng.next_unit() - 0.5) / n;
  }
  return {PointPattern(std::move(xs), 2), PointPattern(std::move(ys), 2)};
}

}  // namespace pprd
