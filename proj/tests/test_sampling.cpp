#include <doctest.h>

#include <cmath>
#include <vector>

#include "pprd/distortion.hpp"
#include "pprd/rng.hpp"
#include "pprd/sampling.hpp"

TEST_CASE("rng determinism and split independence") {
  pprd::Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

  pprd::Rng root(42);
  pprd::Rng s0 = root.split(0), s1 = root.split(1);
  CHECK(s0.next_u64() != s1.next_u64());
  // Splitting does not consume from the parent.
  pprd::Rng root2(42);
  root2.split(5);
  pprd::Rng fresh(42);
  CHECK(root2.next_u64() == fresh.next_u64());
}

TEST_CASE("uniform and normal moments") {
  pprd::Rng rng(7);
  const int n = 200000;
  double su = 0.0, su2 = 0.0, sn = 0.0, sn2 = 0.0, sn4 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = rng.next_unit();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    su += u;
    su2 += u * u;
    const double z = rng.next_normal();
    sn += z;
    sn2 += z * z;
    sn4 += z * z * z * z;
  }
  CHECK(su / n == doctest::Approx(0.5).epsilon(0.01));
  CHECK(su2 / n == doctest::Approx(1.0 / 3.0).epsilon(0.01));
  CHECK(sn / n == doctest::Approx(0.0).scale(1.0).epsilon(0.01));
  CHECK(sn2 / n == doctest::Approx(1.0).epsilon(0.02));
  CHECK(sn4 / n == doctest::Approx(3.0).epsilon(0.05));
}

TEST_CASE("next_below is within range and roughly uniform") {
  pprd::Rng rng(3);
  std::vector<int> counts(7, 0);
  const int n = 70000;
  for (int i = 0; i < n; ++i) ++counts[rng.next_below(7)];
  for (int c : counts) CHECK(c == doctest::Approx(n / 7.0).epsilon(0.05));
}

TEST_CASE("poisson moments, small and large mean") {
  pprd::Rng rng(11);
  for (double mean : {0.5, 4.0, 25.0, 80.0}) {  // 80 exercises the splitting path
    const int n = 100000;
    double s = 0.0, s2 = 0.0;
    for (int i = 0; i < n; ++i) {
      const double k = static_cast<double>(rng.next_poisson(mean));
      s += k;
      s2 += k * k;
    }
    const double m = s / n;
    CHECK(m == doctest::Approx(mean).epsilon(0.02));
    CHECK(s2 / n - m * m == doctest::Approx(mean).epsilon(0.05));
  }
}

TEST_CASE("gaussian fixed source shape and moments") {
  pprd::Rng rng(19);
  const pprd::GaussianFixedSource src{3, 2};
  double sum = 0.0, sum2 = 0.0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const pprd::PointPattern p = pprd::sample_gaussian_fixed(src, rng);
    REQUIRE(p.size() == 3);
    REQUIRE(p.dim() == 2);
    for (double v : p.coords()) {
      sum += v;
      sum2 += v * v;
    }
  }
  const double count = 6.0 * n;
  CHECK(sum / count == doctest::Approx(0.0).scale(1.0).epsilon(0.01));
  CHECK(sum2 / count == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("poisson unit square source") {
  pprd::Rng rng(23);
  const pprd::PoissonUnitSquareSource src{10.0};
  const int n = 50000;
  double s = 0.0;
  int empties = 0;
  for (int i = 0; i < n; ++i) {
    const pprd::PointPattern p = pprd::sample_poisson_unit_square(src, rng);
    CHECK(p.dim() == 2);
    s += static_cast<double>(p.size());
    if (p.is_empty()) ++empties;
    for (double v : p.coords()) {
      CHECK(v >= 0.0);
      CHECK(v < 1.0);
    }
  }
  CHECK(s / n == doctest::Approx(10.0).epsilon(0.01));
  // P(|X| = 0) = e^{-10} ~ 4.54e-5; with 5e4 draws expect ~2.3 empties.
  CHECK(empties <= 15);
}

TEST_CASE("quantized pair construction and mean distortion") {
  pprd::Rng rng(29);
  const std::size_t N = 8, k = 4;
  const double cell = 1.0 / N;
  const int n = 40000;
  double mean_rho = 0.0;
  for (int i = 0; i < n; ++i) {
    const auto [x, y] = pprd::sample_quantized_pair(N, k, rng);
    REQUIRE(x.size() == k);
    REQUIRE(y.size() == k);
    // Every Y point is a grid cell center.
    for (std::size_t j = 0; j < k; ++j) {
      for (std::size_t a = 0; a < 2; ++a) {
        const double scaled = y.point(j)[a] * N - 0.5;
        CHECK(scaled == doctest::Approx(std::round(scaled)).scale(1.0).epsilon(1e-12));
      }
    }
    // c large enough that the cap is inactive and own-center pairing optimal.
    mean_rho += pprd::usospa(x, y, 10.0);
  }
  mean_rho /= n;
  // E[rho] = k * 2 * E[(U-1/2)^2] / N^2 = k / (6 N^2).
  const double expected = static_cast<double>(k) / (6.0 * N * N);
  CHECK(mean_rho == doctest::Approx(expected).epsilon(0.02));

  // Marginal of X coordinates is uniform on [0,1): check first two moments.
  double sx = 0.0, sx2 = 0.0;
  const int m = 20000;
  for (int i = 0; i < m; ++i) {
    const auto [x, y] = pprd::sample_quantized_pair(N, k, rng);
    for (double v : x.coords()) {
      CHECK(v >= 0.0);
      CHECK(v < 1.0);
      sx += v;
      sx2 += v * v;
    }
    (void)y;
  }
  const double cnt = static_cast<double>(m) * k * 2;
  CHECK(sx / cnt == doctest::Approx(0.5).epsilon(0.01));
  CHECK(sx2 / cnt == doctest::Approx(1.0 / 3.0).epsilon(0.01));
  (void)cell;
}
