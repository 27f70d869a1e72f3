#pragma once

#include <cstddef>
#include <functional>

#include "pprd/point_pattern.hpp"

namespace pprd {

// Parameters of the Poisson unit-square bounds.
struct PoissonBoundParams {
  double mean_cardinality = 10.0;  // lambda-bar
  double cutoff = 0.1;             // c
  std::size_t k_max = 15;          // lower-bound truncation
  std::size_t n_grid = 8;          // N (upper bound)
  std::size_t n_max = 8;           // upper-bound truncation, <= n_grid
  double s_lo = 0.0;               // defaults to 3/c^2 when 0
  double s_hi = 0.0;               // defaults to 1e6/c^2 when 0

  // k_max = floor(1/(2 pi c^2)), n_max = min(N, 10), s range defaults.
  static PoissonBoundParams defaults(double lambda, double c, std::size_t n_grid);
};

// Rate (nats) of a standard Gaussian vector of dimension k*d at squared-error
// distortion D: (kd/2) log(kd/D). Requires 0 < D <= kd.
double gaussian_vector_rd(std::size_t k, std::size_t d, double D);

// Point-pattern lower bound: gaussian_vector_rd - log k!. May be negative.
double gaussian_pp_lower(std::size_t k, std::size_t d, double D);

// Default epsilon schedule, decaying with distortion: (D/(kd))^(3/8) = sigma^(3/4).
double gaussian_default_epsilon(std::size_t k, std::size_t d, double D);

// Point-pattern upper bound at sigma^2 = D/(kd) with slack parameter epsilon.
// Requires 0 < D < kd and epsilon > 0. For k = 1 all correction terms vanish
// and the bound equals the vector rate.
double gaussian_pp_upper(std::size_t k, std::size_t d, double D, double epsilon);

// log of gamma-tilde_k(s) for the uniform unit square (d = 2, area 1):
// k * log( e^(-s c^2) (1 - pi c^2 k - pi k / s) + pi k / s ).
// Throws std::domain_error if the log argument is not positive.
double poisson_log_gamma_tilde_unit_square(std::size_t k, double s, double c);

// General-dimension variant over a region of the given Lebesgue measure.
// Reduces to the unit-square form for d = 2, area = 1.
double poisson_log_gamma_tilde_general(std::size_t k, double s, double c,
                                       std::size_t dim, double area);

struct PoissonLowerResult {
  double rate = 0.0;   // raw bound value in nats, may be negative
  double s_opt = 0.0;  // maximizing slope parameter
  bool nonconcave = false;  // true when k_max exceeds the concavity threshold
};

// Lower bound on R(D) for the uniform unit-square Poisson PP, maximized over
// the slope parameter s. Concave regime (k_max <= 1/(2 pi c^2)) uses a single
// golden-section search; otherwise a multi-start search over log-spaced
// subintervals, flagged nonconcave.
PoissonLowerResult poisson_lower_unit_square(const PoissonBoundParams& params, double D);

// Upper bound point (D = lambda/(6 N^2), rate) for the uniform unit-square
// Poisson PP from the grid-quantizer construction. Requires N >= 1/(sqrt(2) c).
RdPoint poisson_upper_unit_square(const PoissonBoundParams& params);

struct MaxResult {
  double x = 0.0;
  double value = 0.0;
};

// Golden-section maximization of a concave objective on [lo, hi].
// Throws std::runtime_error (with the location) on a non-finite evaluation.
MaxResult maximize_concave_1d(const std::function<double(double)>& objective,
                              double lo, double hi, double tol);

}  // namespace pprd
