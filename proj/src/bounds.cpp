#include "pprd/bounds.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "pprd/special.hpp"

namespace pprd {

namespace {

constexpr double kPi = 3.14159265358979323846;

double poisson_log_pmf(unsigned k, double lambda) {
  return -lambda + static_cast<double>(k) * std::log(lambda) - log_factorial(k);
}

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

PoissonBoundParams PoissonBoundParams::defaults(double lambda, double c,
                                                std::size_t n_grid) {
  if (!(lambda > 0.0) || !(c > 0.0))
    throw std::invalid_argument("PoissonBoundParams: lambda and c must be positive");
  PoissonBoundParams p;
  p.mean_cardinality = lambda;
  p.cutoff = c;
  p.k_max = static_cast<std::size_t>(std::floor(1.0 / (2.0 * kPi * c * c)));
  p.n_grid = n_grid;
  p.n_max = std::min<std::size_t>(n_grid, 10);
  p.s_lo = 3.0 / (c * c);
  p.s_hi = 1e6 / (c * c);
  return p;
}

double gaussian_vector_rd(std::size_t k, std::size_t d, double D) {
  const double kd = static_cast<double>(k * d);
  if (!(D > 0.0) || D > kd)
    throw std::domain_error("gaussian_vector_rd: requires 0 < D <= k*d");
  return 0.5 * kd * std::log(kd / D);
}

double gaussian_pp_lower(std::size_t k, std::size_t d, double D) {
  return gaussian_vector_rd(k, d, D) - log_factorial(static_cast<unsigned>(k));
}

double gaussian_default_epsilon(std::size_t k, std::size_t d, double D) {
  return std::pow(D / static_cast<double>(k * d), 3.0 / 8.0);
}

double gaussian_pp_upper(std::size_t k, std::size_t d, double D, double epsilon) {
  const double kd = static_cast<double>(k * d);
  if (!(D > 0.0) || D >= kd)
    throw std::domain_error("gaussian_pp_upper: requires 0 < D < k*d");
  if (!(epsilon > 0.0))
    throw std::invalid_argument("gaussian_pp_upper: epsilon must be positive");
  const double sigma2 = D / kd;
  const double base = 0.5 * kd * std::log(1.0 / sigma2);
  if (k == 1) return base;  // log 1! = 0 and p0 = 1 exactly

  const double lf = log_factorial(static_cast<unsigned>(k));
  const double lfm1 = log_factorial_minus_one(static_cast<unsigned>(k));
  // p0 = 1 / (1 + (k!-1) exp(-3 eps^2 / (2 sigma^2))), in log space.
  const double a = lfm1 - 1.5 * epsilon * epsilon / sigma2;
  const double p0 = 1.0 / (1.0 + std::exp(a));
  const double q0 = 1.0 / (1.0 + std::exp(-a));  // 1 - p0, stable for p0 near 1

  const double mix_weight =
      0.5 * static_cast<double>(k) * static_cast<double>(k - 1) *
          chi2_cdf(9.0 * epsilon * epsilon / (2.0 * (1.0 - sigma2)),
                   static_cast<unsigned>(d)) +
      1.0 - chi2_cdf(epsilon * epsilon / sigma2, static_cast<unsigned>(k * d));

  double h2 = 0.0;
  if (p0 > 0.0) h2 -= p0 * std::log(p0);
  if (q0 > 0.0) h2 -= q0 * std::log(q0);

  return base - lf + mix_weight * lf + h2 + q0 * lfm1;
}

double poisson_log_gamma_tilde_unit_square(std::size_t k, double s, double c) {
  return poisson_log_gamma_tilde_general(k, s, c, 2, 1.0);
}

double poisson_log_gamma_tilde_general(std::size_t k, double s, double c,
                                       std::size_t dim, double area) {
  if (k == 0) throw std::invalid_argument("gamma_tilde: k must be positive");
  if (!(area > 0.0)) throw std::invalid_argument("gamma_tilde: area must be positive");
  if (!(s * c * c >= 1.0))
    throw std::invalid_argument("gamma_tilde: requires s >= 1/c^2");
  const double esc = std::exp(-s * c * c);
  const double inner = esc * area + static_cast<double>(k) *
                                        (gauss_ball_integral(s, c, dim) -
                                         esc * ball_volume(dim, c));
  if (!(inner > 0.0)) {
    std::ostringstream os;
    os << "gamma_tilde: non-positive log argument at k=" << k << ", s=" << s
       << ", c=" << c;
    throw std::domain_error(os.str());
  }
  return static_cast<double>(k) * std::log(inner);
}

MaxResult maximize_concave_1d(const std::function<double(double)>& objective,
                              double lo, double hi, double tol) {
  if (!(lo < hi) || !(tol > 0.0))
    throw std::invalid_argument("maximize_concave_1d: need lo < hi, tol > 0");
  const auto eval = [&](double x) {
    const double v = objective(x);
    if (!std::isfinite(v)) {
      std::ostringstream os;
      os << "maximize_concave_1d: non-finite objective at x=" << x;
      throw std::runtime_error(os.str());
    }
    return v;
  };

  MaxResult best{lo, eval(lo)};
  const double f_hi = eval(hi);
  if (f_hi > best.value) best = {hi, f_hi};

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = eval(x1);
  double f2 = eval(x2);
  while (b - a > tol) {
    if (f1 >= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = eval(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = eval(x2);
    }
  }
  const double mid = 0.5 * (a + b);
  const double f_mid = eval(mid);
  if (f_mid > best.value) best = {mid, f_mid};
  if (f1 > best.value) best = {x1, f1};
  if (f2 > best.value) best = {x2, f2};
  return best;
}

PoissonLowerResult poisson_lower_unit_square(const PoissonBoundParams& params, double D) {
  const double lambda = params.mean_cardinality;
  const double c = params.cutoff;
  if (!(lambda > 0.0) || !(c > 0.0) || params.k_max == 0)
    throw std::invalid_argument("poisson_lower_unit_square: invalid parameters");
  if (!(D > 0.0)) throw std::invalid_argument("poisson_lower_unit_square: D must be positive");
  const double s_min = 3.0 / (c * c);
  const double s_lo = params.s_lo > 0.0 ? params.s_lo : s_min;
  const double s_hi = params.s_hi > 0.0 ? params.s_hi : 1e6 / (c * c);
  if (!(s_lo >= s_min) || !(s_lo < s_hi))
    throw std::invalid_argument("poisson_lower_unit_square: invalid s range");

  // Precompute the weights e^(-lambda) lambda^k / k!.
  std::vector<double> weight(params.k_max + 1, 0.0);
  for (std::size_t k = 1; k <= params.k_max; ++k)
    weight[k] = std::exp(poisson_log_pmf(static_cast<unsigned>(k), lambda));

  const auto objective = [&](double s) {
    double acc = -s * D;
    for (std::size_t k = 1; k <= params.k_max; ++k)
      acc -= weight[k] * poisson_log_gamma_tilde_unit_square(k, s, c);
    return acc;
  };

  const bool concave =
      static_cast<double>(params.k_max) <= 1.0 / (2.0 * kPi * c * c);
  const double tol = 1e-9;

  PoissonLowerResult result;
  result.nonconcave = !concave;
  if (concave) {
    const MaxResult m = maximize_concave_1d(objective, s_lo, s_hi, tol);
    result.rate = m.value;
    result.s_opt = m.x;
    return result;
  }

  // Extended regime: golden-section on 32 log-spaced subintervals, keep the max.
  const int n_starts = 32;
  const double log_lo = std::log(s_lo), log_hi = std::log(s_hi);
  MaxResult best{s_lo, objective(s_lo)};
  for (int i = 0; i < n_starts; ++i) {
    const double a = std::exp(log_lo + (log_hi - log_lo) * i / n_starts);
    const double b = std::exp(log_lo + (log_hi - log_lo) * (i + 1) / n_starts);
    const MaxResult m = maximize_concave_1d(objective, a, b, tol);
    if (m.value > best.value) best = m;
  }
  result.rate = best.value;
  result.s_opt = best.x;
  return result;
}

RdPoint poisson_upper_unit_square(const PoissonBoundParams& params) {
  const double lambda = params.mean_cardinality;
  const double c = params.cutoff;
  const std::size_t N = params.n_grid;
  const std::size_t n_max = params.n_max;
  if (!(lambda > 0.0) || !(c > 0.0) || N == 0 || n_max == 0)
    throw std::invalid_argument("poisson_upper_unit_square: invalid parameters");
  if (static_cast<double>(N) < 1.0 / (std::sqrt(2.0) * c))
    throw std::invalid_argument("poisson_upper_unit_square: requires N >= 1/(sqrt(2) c)");
  if (n_max > N)
    throw std::invalid_argument("poisson_upper_unit_square: requires n_max <= N");

  const double n2 = static_cast<double>(N) * static_cast<double>(N);
  const double D = lambda / (6.0 * n2);
  double rate = lambda + lambda * std::log(n2 / lambda);

  const std::size_t k_cut = n_max * n_max;
  // sum over k of pmf(k) log k! (1 - k! C(N^2,k) / N^(2k)); the falling
  // factorial ratio is a product of (1 - i/N^2) terms, accumulated in log space.
  double log_ratio = 0.0;  // log( prod_{i<k} (N^2 - i)/N^2 )
  for (std::size_t k = 1; k <= k_cut; ++k) {
    log_ratio += std::log1p(-static_cast<double>(k - 1) / n2);
    const double pmf = std::exp(poisson_log_pmf(static_cast<unsigned>(k), lambda));
    rate += pmf * log_factorial(static_cast<unsigned>(k)) * (1.0 - std::exp(log_ratio));
  }

  // Tail weight sum_{k >= k_cut - 1} pmf(k), summed directly so the tiny tail
  // does not cancel out against 1.
  double tail = 0.0;
  const std::size_t tail_start = k_cut >= 1 ? k_cut - 1 : 0;
  for (std::size_t k = tail_start;; ++k) {
    const double pmf = std::exp(poisson_log_pmf(static_cast<unsigned>(k), lambda));
    tail += pmf;
    if (k > tail_start && k > static_cast<std::size_t>(lambda) && pmf < 1e-300) break;
    if (k > tail_start + 100000) break;
  }
  rate += tail * lambda * lambda;

  RdPoint point;
  point.distortion_D = D;
  point.rate_R = rate;
  point.bound_id = "poisson_upper";
  point.params = {{"lambda", format_double(lambda)},
                  {"c", format_double(c)},
                  {"N", std::to_string(N)},
                  {"Nmax", std::to_string(n_max)}};
  return point;
}

}  // namespace pprd
