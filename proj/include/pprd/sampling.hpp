#pragma once

#include <utility>

#include "pprd/point_pattern.hpp"
#include "pprd/rng.hpp"

namespace pprd {

// Fixed cardinality k, points i.i.d. standard normal in R^d.
struct GaussianFixedSource {
  std::size_t k = 1;
  std::size_t d = 1;
};

// Poisson point process with uniform intensity on the unit square [0,1)^2.
struct PoissonUnitSquareSource {
  double mean_cardinality = 1.0;
};

PointPattern sample_gaussian_fixed(const GaussianFixedSource& source, Rng& rng);

PointPattern sample_poisson_unit_square(const PoissonUnitSquareSource& source, Rng& rng);

// Joint quantizer pair for the unit-square upper bound construction:
// Y is k i.i.d. uniform draws from the N^2 grid cell centers, and each point
// of X is uniform on the cell of its paired center. The marginal of X is
// k i.i.d. uniform points on [0,1)^2.
std::pair<PointPattern, PointPattern> sample_quantized_pair(std::size_t n_grid,
                                                            std::size_t k, Rng& rng);

}  // namespace pprd
