#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "pprd/distortion.hpp"
#include "pprd/rng.hpp"
#include "pprd/sampling.hpp"

using pprd::PointPattern;

namespace {

PointPattern random_pattern(std::size_t k, std::size_t d, pprd::Rng& rng) {
  std::vector<double> coords(k * d);
  for (auto& v : coords) v = rng.next_unit() * 2.0 - 1.0;
  return PointPattern(std::move(coords), d);
}

// Oracle that never builds a cost matrix: minimum over all permutations of
// the larger pattern of capped matched distances plus c^2 per unmatched point.
double usospa_oracle(const PointPattern& x, const PointPattern& y, double c) {
  const PointPattern& small = x.size() <= y.size() ? x : y;
  const PointPattern& big = x.size() <= y.size() ? y : x;
  const std::size_t k = small.size(), l = big.size();
  const double c2 = c * c;
  if (l == 0) return 0.0;
  std::vector<std::size_t> perm(l);
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    double total = static_cast<double>(l - k) * c2;
    for (std::size_t i = 0; i < k; ++i)
      total += std::min(pprd::squared_distance(small, i, big, perm[i]), c2);
    best = std::min(best, total);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

double rho2_oracle(const PointPattern& x, const PointPattern& y) {
  const std::size_t n = x.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  double best = n == 0 ? 0.0 : std::numeric_limits<double>::infinity();
  do {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      total += pprd::squared_distance(x, i, y, perm[i]);
    best = std::min(best, total);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace

TEST_CASE("rho2 matches permutation enumeration") {
  pprd::Rng rng(77);
  for (std::size_t k = 1; k <= 5; ++k) {
    for (int rep = 0; rep < 30; ++rep) {
      const PointPattern x = random_pattern(k, 2, rng);
      const PointPattern y = random_pattern(k, 2, rng);
      CHECK(pprd::rho2(x, y) == doctest::Approx(rho2_oracle(x, y)).epsilon(1e-12));
    }
  }
}

TEST_CASE("rho2 identities") {
  pprd::Rng rng(5);
  const PointPattern x = random_pattern(4, 3, rng);
  CHECK(pprd::rho2(x, x) == doctest::Approx(0.0));
  CHECK(pprd::rho2(PointPattern::empty(2), PointPattern::empty(2)) == 0.0);

  // Matching beats any fixed pairing: stored-order cost is an upper bound.
  const PointPattern y = random_pattern(4, 3, rng);
  double stored = 0.0;
  for (std::size_t i = 0; i < 4; ++i) stored += pprd::squared_distance(x, i, y, i);
  CHECK(pprd::rho2(x, y) <= stored + 1e-12);

  CHECK_THROWS_AS(pprd::rho2(random_pattern(2, 2, rng), random_pattern(3, 2, rng)),
                  std::invalid_argument);
  CHECK_THROWS_AS(pprd::rho2(random_pattern(2, 2, rng), random_pattern(2, 3, rng)),
                  std::invalid_argument);
}

TEST_CASE("usospa matches enumeration oracle on unequal cardinalities") {
  pprd::Rng rng(31);
  const double c = 0.6;
  for (std::size_t kx = 0; kx <= 4; ++kx) {
    for (std::size_t ky = 0; ky <= 5; ++ky) {
      for (int rep = 0; rep < 12; ++rep) {
        const PointPattern x = random_pattern(kx, 2, rng);
        const PointPattern y = random_pattern(ky, 2, rng);
        const double got = pprd::usospa(x, y, c);
        CHECK(got == doctest::Approx(usospa_oracle(x, y, c)).epsilon(1e-12));
        CHECK(got == doctest::Approx(pprd::usospa(y, x, c)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("usospa structural properties") {
  pprd::Rng rng(12);
  const double c = 0.5, c2 = c * c;
  const PointPattern x = random_pattern(3, 2, rng);
  CHECK(pprd::usospa(x, x, c) == doctest::Approx(0.0));
  CHECK(pprd::usospa(x, PointPattern::empty(2), c) == doctest::Approx(3.0 * c2));
  CHECK(pprd::usospa(PointPattern::empty(2), PointPattern::empty(2), c) == 0.0);

  // Far-apart patterns saturate at max-cardinality * c^2.
  const PointPattern far({100.0, 100.0, 101.0, 101.0}, 2);
  CHECK(pprd::usospa(x, far, c) == doctest::Approx(3.0 * c2));

  CHECK_THROWS_AS(pprd::DistortionSpec::usospa(0.0), std::invalid_argument);
  CHECK_THROWS_AS(pprd::usospa(x, x, -1.0), std::invalid_argument);
}

TEST_CASE("nearest-neighbor bounds never exceed usospa") {
  pprd::Rng rng(64);
  const double c = 0.3;
  for (int rep = 0; rep < 300; ++rep) {
    const std::size_t kx = rng.next_below(5);
    const std::size_t ky = rng.next_below(5);
    const PointPattern x = random_pattern(kx, 2, rng);
    const PointPattern y = random_pattern(ky, 2, rng);
    const double value = pprd::usospa(x, y, c);
    const auto [nn_sum, padded] = pprd::usospa_lower_bounds(x, y, c);
    if (kx >= ky) CHECK(nn_sum <= value + 1e-12);
    if (kx <= ky) CHECK(padded <= value + 1e-12);
    // Equal cardinalities: both forms coincide.
    if (kx == ky) CHECK(nn_sum == doctest::Approx(padded));
  }
}

TEST_CASE("distortion dispatch") {
  pprd::Rng rng(8);
  const PointPattern x = random_pattern(3, 2, rng);
  const PointPattern y = random_pattern(3, 2, rng);
  CHECK(pprd::distortion(pprd::DistortionSpec::rho2(), x, y) ==
        doctest::Approx(pprd::rho2(x, y)));
  CHECK(pprd::distortion(pprd::DistortionSpec::usospa(0.4), x, y) ==
        doctest::Approx(pprd::usospa(x, y, 0.4)));
}
