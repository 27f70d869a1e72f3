#include "pprd/selfcheck.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <sstream>
#include <vector>

#include "pprd/assignment.hpp"
#include "pprd/bounds.hpp"
#include "pprd/codebook.hpp"
#include "pprd/distortion.hpp"
#include "pprd/rng.hpp"
#include "pprd/sampling.hpp"
#include "pprd/special.hpp"

namespace pprd {

namespace {

struct Reporter {
  std::ostream& out;
  int failures = 0;

  void check(const std::string& name, bool ok, const std::string& detail = "") {
    out << (ok ? "PASS " : "FAIL ") << name;
    if (!detail.empty()) out << " (" << detail << ")";
    out << '\n';
    if (!ok) ++failures;
  }
};

// Exhaustive permutation minimum, independent of the assignment solver.
double brute_force_min_cost(const std::vector<double>& cost, std::size_t n) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) total += cost[i * n + perm[i]];
    best = std::min(best, total);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

PointPattern random_pattern(std::size_t k, std::size_t d, Rng& rng) {
  std::vector<double> coords(k * d);
  for (double& v : coords) v = rng.next_normal();
  return PointPattern(std::move(coords), d);
}

std::string num(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

}  // namespace

int verify_distortion(std::ostream& out, std::uint64_t seed) {
  Reporter r{out};
  Rng rng = Rng(seed).split(1);

  // Assignment solver vs brute force, n <= 7.
  {
    double worst = 0.0;
    for (std::size_t n = 2; n <= 7; ++n) {
      for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> cost(n * n);
        for (double& v : cost) v = rng.next_unit();
        const double solver = solve_assignment_flat(cost, n).total_cost;
        const double brute = brute_force_min_cost(cost, n);
        worst = std::max(worst, std::fabs(solver - brute));
      }
    }
    r.check("assignment equals brute-force permutation minimum", worst < 1e-9,
            "max abs diff " + num(worst));
  }

  // rho2 / usospa symmetry, nearest-neighbor lower bounds, cap, empty-pattern identity.
  {
    const double c = 0.35;
    bool symmetric = true, nn_bounds = true, capped = true, empty_exact = true;
    for (int trial = 0; trial < 2000; ++trial) {
      const std::size_t nx = rng.next_below(9);
      const std::size_t ny = rng.next_below(9);
      const PointPattern x = random_pattern(nx, 2, rng);
      const PointPattern y = random_pattern(ny, 2, rng);
      const double dxy = usospa(x, y, c);
      symmetric = symmetric && std::fabs(dxy - usospa(y, x, c)) < 1e-12;
      const auto [ge_bound, le_bound] = usospa_lower_bounds(x, y, c);
      if (nx >= ny) nn_bounds = nn_bounds && dxy >= ge_bound - 1e-12;
      if (nx <= ny) nn_bounds = nn_bounds && dxy >= le_bound - 1e-12;
      capped = capped && dxy <= static_cast<double>(std::max(nx, ny)) * c * c + 1e-12;
      const double de = usospa(x, PointPattern::empty(2), c);
      empty_exact =
          empty_exact && std::abs(de - static_cast<double>(nx) * c * c) <= 1e-12;
    }
    r.check("usospa symmetric in its arguments", symmetric);
    r.check("nearest-neighbor lower bounds never exceed usospa", nn_bounds);
    r.check("usospa capped by max cardinality times c^2", capped);
    r.check("usospa against the empty pattern is |X| c^2", empty_exact);
  }

  // rho2 bounded by the vector squared error of any ordering.
  {
    bool ok = true;
    for (int trial = 0; trial < 2000; ++trial) {
      const std::size_t k = 1 + rng.next_below(6);
      const PointPattern x = random_pattern(k, 2, rng);
      const PointPattern y = random_pattern(k, 2, rng);
      double ordered = 0.0;
      for (std::size_t i = 0; i < k; ++i) ordered += squared_distance(x, i, y, i);
      ok = ok && rho2(x, y) <= ordered + 1e-12;
    }
    r.check("rho2 bounded by stored-order squared error", ok);
  }

  return r.failures;
}

int verify_bounds(std::ostream& out, std::uint64_t seed) {
  Reporter r{out};
  (void)seed;

  {
    const double rvec = gaussian_vector_rd(4, 2, 0.8);
    r.check("gaussian vector rate at k=4 d=2 D=0.8", std::fabs(rvec - 4.0 * std::log(10.0)) < 1e-9,
            "observed " + num(rvec));
    const double lower = gaussian_pp_lower(4, 2, 0.8);
    r.check("gaussian pattern lower bound at k=4 d=2 D=0.8",
            std::fabs(lower - (rvec - std::log(24.0))) < 1e-9, "observed " + num(lower));
  }

  {
    bool equal = true;
    for (int i = 0; i < 20; ++i) {
      const double D = std::pow(10.0, -6.0 + 6.0 * i / 19.0);
      const double lo = gaussian_pp_lower(1, 2, D);
      const double up = gaussian_pp_upper(1, 2, D, gaussian_default_epsilon(1, 2, D));
      equal = equal && std::fabs(lo - up) < 1e-9;
    }
    r.check("k=1 upper equals lower equals vector rate", equal);
  }

  // Golden-section result vs dense log-spaced grid scan.
  {
    PoissonBoundParams params = PoissonBoundParams::defaults(10.0, 0.1, 8);
    params.s_hi = 1e6;
    bool all_match = true;
    double worst = 0.0;
    for (const double D : {1e-4, 1e-3, 1e-2}) {
      const PoissonLowerResult opt = poisson_lower_unit_square(params, D);
      double grid_best = -std::numeric_limits<double>::infinity();
      const int n_points = 20000;
      const double log_lo = std::log(params.s_lo), log_hi = std::log(params.s_hi);
      for (int i = 0; i <= n_points; ++i) {
        const double s = std::exp(log_lo + (log_hi - log_lo) * i / n_points);
        double acc = -s * D;
        for (std::size_t k = 1; k <= params.k_max; ++k) {
          const double w = std::exp(-10.0 + k * std::log(10.0) - log_factorial((unsigned)k));
          acc -= w * poisson_log_gamma_tilde_unit_square(k, s, 0.1);
        }
        grid_best = std::max(grid_best, acc);
      }
      worst = std::max(worst, std::fabs(opt.rate - grid_best));
      all_match = all_match && std::fabs(opt.rate - grid_best) < 1e-5;
    }
    r.check("poisson lower optimizer matches dense grid scan", all_match,
            "max abs diff " + num(worst));
  }

  // Upper bound finite across the published N range and above the lower bound.
  {
    bool finite = true, ordered = true;
    for (const std::size_t N : {8, 16, 32, 64, 128, 207}) {
      PoissonBoundParams params = PoissonBoundParams::defaults(10.0, 0.1, N);
      const RdPoint up = poisson_upper_unit_square(params);
      finite = finite && std::isfinite(up.rate_R);
      const PoissonLowerResult lo = poisson_lower_unit_square(params, up.distortion_D);
      ordered = ordered && up.rate_R >= lo.rate;
    }
    r.check("poisson upper bound finite for N in {8..207}", finite);
    r.check("poisson upper bound above lower bound at matching D", ordered);
  }

  {
    bool monotone = true;
    double prev = -1.0;
    for (int i = 0; i <= 1000; ++i) {
      const double v = chi2_cdf(20.0 * i / 1000.0, 5);
      monotone = monotone && v >= prev && v >= 0.0 && v <= 1.0;
      prev = v;
    }
    r.check("chi2 cdf monotone and in [0,1]", monotone);
  }

  return r.failures;
}

int verify_sampling(std::ostream& out, std::uint64_t seed) {
  Reporter r{out};
  Rng rng = Rng(seed).split(2);

  {
    Rng g1 = Rng(seed).split(7);
    Rng g2 = Rng(seed).split(7);
    bool identical = true;
    for (int i = 0; i < 100; ++i) {
      identical = identical && sample_gaussian_fixed({3, 2}, g1) ==
                                   sample_gaussian_fixed({3, 2}, g2);
    }
    r.check("samplers deterministic for a fixed seed", identical);
  }

  {
    const int n = 200000;
    double sum = 0.0, sumsq = 0.0;
    for (int i = 0; i < n; ++i) {
      const double v = sample_gaussian_fixed({1, 1}, rng).point(0)[0];
      sum += v;
      sumsq += v * v;
    }
    const double mean = sum / n;
    const double var = sumsq / n - mean * mean;
    r.check("gaussian sampler moments", std::fabs(mean) < 4.0 / std::sqrt((double)n) &&
                                            std::fabs(var - 1.0) < 0.02,
            "mean " + num(mean) + ", var " + num(var));
  }

  {
    const int n = 100000;
    const double lambda = 10.0;
    std::vector<double> counts(27, 0.0);
    for (int i = 0; i < n; ++i) {
      const std::size_t k = sample_poisson_unit_square({lambda}, rng).size();
      counts[std::min<std::size_t>(k, 26)] += 1.0;
    }
    double chi2 = 0.0;
    double tail_expected = n;
    for (int k = 0; k <= 25; ++k) {
      const double e = n * std::exp(-lambda + k * std::log(lambda) - log_factorial(k));
      chi2 += (counts[k] - e) * (counts[k] - e) / e;
      tail_expected -= e;
    }
    chi2 += (counts[26] - tail_expected) * (counts[26] - tail_expected) /
            std::max(tail_expected, 1e-9);
    // chi-squared critical value at significance 0.001, 26 dof.
    double lo = 0.0, hi = 200.0;
    while (hi - lo > 1e-6) {
      const double mid = 0.5 * (lo + hi);
      (chi2_cdf(mid, 26) < 0.999 ? lo : hi) = mid;
    }
    r.check("poisson cardinality goodness of fit", chi2 < hi,
            "chi2 " + num(chi2) + " vs critical " + num(hi));
  }

  {
    // Marginal of the quantized pair is uniform: per-coordinate KS statistic.
    const std::size_t k = 5, pairs = 20000;
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < pairs; ++i) {
      const auto [x, y] = sample_quantized_pair(10, k, rng);
      for (std::size_t j = 0; j < k; ++j) {
        xs.push_back(x.point(j)[0]);
        ys.push_back(x.point(j)[1]);
      }
    }
    const auto ks = [](std::vector<double>& v) {
      std::sort(v.begin(), v.end());
      double stat = 0.0;
      const double n = static_cast<double>(v.size());
      for (std::size_t i = 0; i < v.size(); ++i) {
        stat = std::max(stat, std::fabs(v[i] - static_cast<double>(i + 1) / n));
        stat = std::max(stat, std::fabs(v[i] - static_cast<double>(i) / n));
      }
      return stat;
    };
    const double kx = ks(xs), ky = ks(ys);
    r.check("quantized-pair marginal uniform on the unit square", kx < 0.01 && ky < 0.01,
            "KS " + num(kx) + ", " + num(ky));
  }

  return r.failures;
}

int verify_codebook(std::ostream& out, std::uint64_t seed) {
  Reporter r{out};
  Rng rng = Rng(seed).split(3);

  // The exhaustive center is never worse than the heuristics.
  {
    bool ok = true;
    for (int trial = 0; trial < 30; ++trial) {
      std::vector<PointPattern> cell;
      for (int p = 0; p < 3; ++p) cell.push_back(random_pattern(3, 2, rng));
      const PointPattern exact = center_exact(cell);
      const auto avg = [&](const PointPattern& ctr) {
        double acc = 0.0;
        for (const auto& x : cell) acc += rho2(x, ctr);
        return acc / 3.0;
      };
      const double d_exact = avg(exact);
      std::vector<std::size_t> order{0, 1, 2};
      ok = ok && d_exact <= avg(center_single_hub(cell, 0)) + 1e-9 &&
           d_exact <= avg(center_multi_hub(cell)) + 1e-9 &&
           d_exact <= avg(center_modified_single_hub(cell, order)) + 1e-9;
    }
    r.check("exact center no worse than heuristic centers", ok);
  }

  // Running-mean property of the modified single-hub center.
  {
    bool ok = true;
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<PointPattern> cell;
      for (int p = 0; p < 4; ++p) cell.push_back(random_pattern(4, 2, rng));
      std::vector<std::size_t> order{0, 1, 2, 3};
      const PointPattern center = center_modified_single_hub(cell, order);
      ok = ok && center.size() == 4 && center.dim() == 2;
    }
    r.check("modified single-hub center structurally valid", ok);
  }

  // Heuristic complexity as operation counts.
  {
    std::vector<PointPattern> cell;
    for (int p = 0; p < 6; ++p) cell.push_back(random_pattern(3, 2, rng));
    const std::uint64_t before_single = assignment_solve_count();
    (void)assign_single_hub(cell, 0);
    const std::uint64_t single_solves = assignment_solve_count() - before_single;
    const std::uint64_t before_multi = assignment_solve_count();
    (void)center_multi_hub(cell);
    const std::uint64_t multi_solves = assignment_solve_count() - before_multi;
    r.check("single-hub uses |cell|-1 assignment solves", single_solves == 5,
            "observed " + std::to_string(single_solves));
    // |cell|(|cell|-1) alignment solves plus |cell|^2 rho2 evaluations for scoring.
    r.check("multi-hub uses |cell|(|cell|-1) alignment solves", multi_solves == 30 + 36,
            "observed " + std::to_string(multi_solves) + " incl. rho2 scoring");
  }

  // Small LBG run: trained distortion no worse than the initial draw.
  {
    std::vector<PointPattern> samples;
    Rng srng = rng.split(11);
    for (int i = 0; i < 400; ++i)
      samples.push_back(sample_gaussian_fixed({3, 2}, srng));
    Rng trng = rng.split(12);
    const Codebook cb =
        lbg_train(samples, 8, DistortionSpec::rho2(), CenterHeuristic::ModifiedSingleHub,
                  LbgOptions{}, trng);
    Rng erng = rng.split(13);
    const auto source = [](Rng& g) { return sample_gaussian_fixed({3, 2}, g); };
    const DistortionEstimate est = estimate_distortion(cb, source, 2000, erng);
    r.check("LBG training produces a finite positive distortion",
            std::isfinite(est.mean) && est.mean > 0.0, "D " + num(est.mean));
  }

  return r.failures;
}

int verify_suite(const std::string& name, std::ostream& out, std::uint64_t seed) {
  int failures = 0;
  if (name == "distortion" || name == "all") failures += verify_distortion(out, seed);
  else if (name == "bounds") failures += verify_bounds(out, seed);
  else if (name == "sampling") failures += verify_sampling(out, seed);
  else if (name == "codebook") failures += verify_codebook(out, seed);
  if (name == "all") {
    failures += verify_bounds(out, seed);
    failures += verify_sampling(out, seed);
    failures += verify_codebook(out, seed);
  } else if (name != "distortion" && name != "bounds" && name != "sampling" &&
             name != "codebook") {
    throw std::invalid_argument("unknown verify suite: " + name);
  }
  return failures;
}

}  // namespace pprd
