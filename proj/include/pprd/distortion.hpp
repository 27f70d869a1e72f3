#pragma once

#include <utility>

#include "pprd/point_pattern.hpp"

namespace pprd {

// Minimum over point pairings of the sum of squared Euclidean distances.
// Defined for patterns of equal cardinality only; throws
// std::invalid_argument on a cardinality or dimension mismatch.
double rho2(const PointPattern& x, const PointPattern& y);

// Unnormalized squared OSPA distortion with cut-off c: the cardinality
// difference is penalized by c^2 per unmatched point and matched squared
// distances are capped at c^2. Symmetric; either pattern may be empty.
// Computed as one (max-cardinality)-sized assignment where the smaller
// pattern is padded with virtual points that cost c^2 against every real
// point.
double usospa(const PointPattern& x, const PointPattern& y, double c);

// Nearest-neighbor lower bounds on usospa(x, y, c). Returns
//   first:  sum_i min_j min{||x_i - y_j||^2, c^2}                (case |X| >= |Y|)
//   second: (|Y| - |X|) c^2 + the same nearest-neighbor sum      (case |X| <= |Y|)
// The inner min over an empty y is taken as c^2 per point.
std::pair<double, double> usospa_lower_bounds(const PointPattern& x,
                                              const PointPattern& y, double c);

// Dispatch on a DistortionSpec.
double distortion(const DistortionSpec& spec, const PointPattern& x,
                  const PointPattern& y);

}  // namespace pprd
