#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "ssq/gauss.hpp"
#include "ssq/stats.hpp"

using namespace ssq;

TEST_CASE("kolmogorov survival function") {
  CHECK(kolmogorov_sf(0.0) == doctest::Approx(1.0));
  // Classical critical values: Q(1.3581) ~ 0.05, Q(1.6276) ~ 0.01.
  CHECK(kolmogorov_sf(1.3581) == doctest::Approx(0.05).epsilon(2e-3));
  CHECK(kolmogorov_sf(1.6276) == doctest::Approx(0.01).epsilon(2e-3));
  CHECK(kolmogorov_sf(0.5) == doctest::Approx(0.9639452436648751).epsilon(1e-9));
  // Monotone decreasing, continuous across the branch switch at 0.75.
  double prev = 1.0;
  for (double x = 0.05; x < 2.5; x += 0.01) {
    const double v = kolmogorov_sf(x);
    CHECK(v <= prev + 1e-12);
    prev = v;
  }
}

TEST_CASE("one-sample KS accepts its own law and rejects a shifted one") {
  std::mt19937 gen(5150);
  std::normal_distribution<double> z(0.0, 1.0);
  std::vector<double> sample(2000);
  for (double& v : sample) v = z(gen);
  const auto cdf = [](double x) { return norm_cdf(x); };
  CHECK(ks_test(sample, cdf).p >= 0.01);
  const auto shifted = [](double x) { return norm_cdf(x - 0.2); };
  CHECK(ks_test(sample, shifted).p < 1e-6);
}

TEST_CASE("two-sample KS") {
  std::mt19937 gen(808);
  std::normal_distribution<double> z(0.0, 1.0);
  std::vector<double> a(1500), b(1500), c(1500);
  for (double& v : a) v = z(gen);
  for (double& v : b) v = z(gen);
  for (double& v : c) v = z(gen) + 0.25;
  CHECK(ks_two_sample(a, b).p >= 0.01);
  CHECK(ks_two_sample(a, c).p < 1e-6);
  CHECK(ks_two_sample(a, a).statistic == 0.0);
  CHECK(ks_two_sample(a, a).p == doctest::Approx(1.0));
}

TEST_CASE("summary statistics") {
  const std::vector<double> xs{1.0, 2.0, 3.0, 4.0};
  const MeanSe ms = mean_se(xs);
  CHECK(ms.mean == doctest::Approx(2.5));
  CHECK(sample_variance(xs) == doctest::Approx(5.0 / 3.0));
  CHECK(ms.se == doctest::Approx(std::sqrt(5.0 / 3.0 / 4.0)));

  const std::vector<double> ys{2.0, 4.0, 6.0, 8.0};
  CHECK(sample_covariance(xs, ys).value == doctest::Approx(10.0 / 3.0));
  // Perfectly linear points: zero residual slope error.
  const SlopeFit fit = least_squares(xs, ys);
  CHECK(fit.slope == doctest::Approx(2.0));
  CHECK(fit.intercept == doctest::Approx(0.0));
  CHECK(fit.slope_se == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("smallest eigenvalue by jacobi rotations") {
  // [[2,1],[1,2]] has eigenvalues 1 and 3.
  CHECK(min_eigenvalue_symmetric({2.0, 1.0, 1.0, 2.0}, 2) == doctest::Approx(1.0));
  // Diagonal matrix.
  CHECK(min_eigenvalue_symmetric({5.0, 0.0, 0.0, -2.0}, 2) == doctest::Approx(-2.0));
  // Random PSD Gram matrix A A^T stays nonnegative.
  std::mt19937 gen(31415);
  std::normal_distribution<double> z(0.0, 1.0);
  const std::size_t n = 12;
  std::vector<double> a(n * n);
  for (double& v : a) v = z(gen);
  std::vector<double> gram(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < n; ++k) acc += a[i * n + k] * a[j * n + k];
      gram[i * n + j] = acc;
    }
  }
  CHECK(min_eigenvalue_symmetric(gram, n) >= -1e-10);
}
