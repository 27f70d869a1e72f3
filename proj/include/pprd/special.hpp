#pragma once

#include <cstddef>

namespace pprd {

// log(k!). Exact integer product for k <= 20, log-gamma beyond.
double log_factorial(unsigned k);

// log(k! - 1) for k >= 2; used by the Gaussian upper bound. Exact for
// k <= 20 (k! fits in 64 bits), log(k!) beyond (relative error < 1e-13).
double log_factorial_minus_one(unsigned k);

// Regularized lower incomplete gamma P(a, x), a > 0, x >= 0.
double regularized_gamma_p(double a, double x);

// CDF of the chi-squared distribution with `dof` degrees of freedom.
double chi2_cdf(double x, unsigned dof);

// Binary entropy in nats, with 0 log 0 = 0.
double binary_entropy(double p);

// Volume of the d-dimensional ball of radius c.
double ball_volume(std::size_t d, double c);

// Integral of exp(-s ||x||^2) over the d-ball of radius c:
// (pi/s)^(d/2) * P(d/2, s c^2).
double gauss_ball_integral(double s, double c, std::size_t d);

}  // namespace pprd
