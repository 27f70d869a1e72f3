#include "pprd/rng.hpp"

#include <cmath>

namespace pprd {

double Rng::next_normal() {
  if (has_spare_normal_) {
    has_spare_normal_ = false;
    return spare_normal_;
  }
  // Box-Muller on (0,1] x [0,1).
  const double u1 = 1.0 - next_unit();
  const double u2 = next_unit();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * 3.14159265358979323846 * u2;
  spare_normal_ = r * std::sin(theta);
  has_spare_normal_ = true;
  return r * std::cos(theta);
}

std::uint64_t Rng::next_poisson(double mean) {
  if (mean <= 0.0) return 0;
  if (mean > 30.0) {
    const double half = mean / 2.0;
    return next_poisson(half) + next_poisson(mean - half);
  }
  // Inversion: walk the CDF.
  const double u = next_unit();
  double p = std::exp(-mean);
  double cdf = p;
  std::uint64_t k = 0;
  while (u >= cdf && k < 10000) {
    ++k;
    p *= mean / static_cast<double>(k);
    cdf += p;
  }
  return k;
}

}  // namespace pprd
