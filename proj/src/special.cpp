#include "pprd/special.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace pprd {

namespace {

std::uint64_t factorial_u64(unsigned k) {
  std::uint64_t f = 1;
  for (unsigned i = 2; i <= k; ++i) f *= i;
  return f;  // k <= 20 only
}

constexpr double kPi = 3.14159265358979323846;

// Lower incomplete gamma by series expansion, for x < a + 1.
double gamma_p_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  double ap = a;
  for (int i = 0; i < 500; ++i) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * 1e-16) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Upper incomplete gamma by Lentz continued fraction, for x >= a + 1.
double gamma_q_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 500; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < 1e-16) break;
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double log_factorial(unsigned k) {
  if (k <= 20) return std::log(static_cast<double>(factorial_u64(k)));
  return std::lgamma(static_cast<double>(k) + 1.0);
}

double log_factorial_minus_one(unsigned k) {
  if (k < 2) throw std::invalid_argument("log_factorial_minus_one: k >= 2 required");
  if (k <= 20) return std::log(static_cast<double>(factorial_u64(k) - 1));
  return log_factorial(k);
}

double regularized_gamma_p(double a, double x) {
  if (!(a > 0.0) || x < 0.0)
    throw std::invalid_argument("regularized_gamma_p: need a > 0, x >= 0");
  if (x == 0.0) return 0.0;
  if (x < a + 1.0) return gamma_p_series(a, x);
  return 1.0 - gamma_q_cf(a, x);
}

double chi2_cdf(double x, unsigned dof) {
  if (dof == 0) throw std::invalid_argument("chi2_cdf: dof must be positive");
  if (x < 0.0) throw std::invalid_argument("chi2_cdf: x must be nonnegative");
  return regularized_gamma_p(0.5 * static_cast<double>(dof), 0.5 * x);
}

double binary_entropy(double p) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("binary_entropy: p must be in [0,1]");
  const double q = 1.0 - p;
  double h = 0.0;
  if (p > 0.0) h -= p * std::log(p);
  if (q > 0.0) h -= q * std::log(q);
  return h;
}

double ball_volume(std::size_t d, double c) {
  const double hd = 0.5 * static_cast<double>(d);
  return std::exp(hd * std::log(kPi) + static_cast<double>(d) * std::log(c) -
                  std::lgamma(hd + 1.0));
}

double gauss_ball_integral(double s, double c, std::size_t d) {
  if (!(s > 0.0) || !(c > 0.0))
    throw std::invalid_argument("gauss_ball_integral: need s > 0, c > 0");
  const double hd = 0.5 * static_cast<double>(d);
  return std::pow(kPi / s, hd) * regularized_gamma_p(hd, s * c * c);
}

}  // namespace pprd
