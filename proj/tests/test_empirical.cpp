#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <random>
#include <vector>

#include "doctest.h"
#include "ssq/empirical.hpp"
#include "ssq/process.hpp"
#include "ssq/simulate.hpp"

using namespace ssq;

namespace {

// Brute-force order statistic from the min-max characterization
//   x_(k) = min over subsets J with |J| >= k of max_{i in J} x_i.
double minmax_order_stat(const std::vector<double>& x, std::size_t k) {
  const std::size_t n = x.size();
  double best = HUGE_VAL;
  for (std::size_t mask = 1; mask < (1u << n); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) < k) continue;
    double mx = -HUGE_VAL;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) mx = std::max(mx, x[i]);
    }
    best = std::min(best, mx);
  }
  return best;
}

}  // namespace

TEST_CASE("ecdf basics") {
  const std::vector<double> s{1.0, 2.0, 3.0};
  CHECK(ecdf(s, 2.0) == doctest::Approx(2.0 / 3.0));
  CHECK(ecdf(s, 0.5) == doctest::Approx(0.0));
  CHECK(ecdf(s, 3.0) == doctest::Approx(1.0));
  CHECK(ecdf(s, 99.0) == doctest::Approx(1.0));
  CHECK_THROWS_AS(ecdf(std::vector<double>{}, 0.0), std::invalid_argument);
}

TEST_CASE("empirical quantile order index") {
  const std::vector<double> s{3.0, 1.0, 2.0};
  CHECK(empirical_quantile(s, 0.5) == doctest::Approx(2.0));
  CHECK(empirical_quantile(s, 1.0 / 3.0) == doctest::Approx(1.0));  // j=1: 1/3 >= 1/3
  CHECK(empirical_quantile(s, 0.34) == doctest::Approx(2.0));       // j=2
  CHECK(quantile_order_index(3, 1.0 / 3.0) == 1);
  CHECK(quantile_order_index(3, 0.34) == 2);
  CHECK(quantile_order_index(5, 0.2) == 1);
  CHECK(quantile_order_index(5, 0.2000001) == 2);
  CHECK(quantile_order_index(400, 0.5) == 200);
}

TEST_CASE("order statistics with index-priority ties") {
  const std::vector<double> s{3.0, 1.0, 2.0};
  CHECK(order_statistics(s) == std::vector<double>{1.0, 2.0, 3.0});
  const std::vector<double> tied{2.0, 2.0, 1.0};
  CHECK(order_statistics(tied) == std::vector<double>{1.0, 2.0, 2.0});
}

TEST_CASE("order statistics agree with the exhaustive min-max identity") {
  std::mt19937 gen(991);
  std::uniform_int_distribution<int> val(-5, 5);
  for (std::size_t n = 1; n <= 6; ++n) {
    for (int rep = 0; rep < 60; ++rep) {
      std::vector<double> x(n);
      for (double& v : x) v = val(gen);
      const std::vector<double> sorted = order_statistics(x);
      for (std::size_t k = 1; k <= n; ++k) {
        CHECK(sorted[k - 1] == minmax_order_stat(x, k));
      }
    }
  }
}

TEST_CASE("order statistic map is a sup-norm contraction") {
  std::mt19937 gen(4321);
  std::uniform_int_distribution<int> len(1, 64);
  std::normal_distribution<double> val(0.0, 2.0);
  for (int rep = 0; rep < 10000; ++rep) {
    const std::size_t n = len(gen);
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = val(gen);
      y[i] = val(gen);
    }
    const std::vector<double> sx = order_statistics(x);
    const std::vector<double> sy = order_statistics(y);
    double lhs = 0.0, rhs = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      lhs = std::max(lhs, std::abs(sx[i] - sy[i]));
      rhs = std::max(rhs, std::abs(x[i] - y[i]));
    }
    CHECK(lhs <= rhs);
  }
}

TEST_CASE("empirical quantile is a nondecreasing left-continuous step in alpha") {
  const std::vector<double> s{0.4, -1.2, 3.3, 0.0, 2.2};
  const std::size_t n = s.size();
  double prev = -HUGE_VAL;
  for (int k = 1; k < 100; ++k) {
    const double q = empirical_quantile(s, k / 100.0);
    CHECK(q >= prev);
    prev = q;
  }
  // Jumps only at multiples of 1/n; value at k/n equals the k-th order stat.
  const std::vector<double> sorted = order_statistics(s);
  for (std::size_t k = 1; k < n; ++k) {
    const double a = static_cast<double>(k) / n;
    CHECK(empirical_quantile(s, a) == sorted[k - 1]);
    CHECK(empirical_quantile(s, a + 1e-9) == sorted[k]);
  }
}

TEST_CASE("ecdf and empirical quantile are inverse-consistent") {
  std::mt19937 gen(77);
  std::normal_distribution<double> val(0.0, 1.0);
  for (int rep = 0; rep < 50; ++rep) {
    const std::size_t n = 1 + static_cast<std::size_t>(gen() % 30);
    std::vector<double> s(n);
    for (double& v : s) v = val(gen);
    for (std::size_t k = 1; k <= n; ++k) {
      for (double da : {-1.0 / (3.0 * n), 1.0 / (3.0 * n)}) {
        const double alpha = static_cast<double>(k) / n + da;
        if (!(alpha > 0.0 && alpha < 1.0)) continue;
        const double q = empirical_quantile(s, alpha);
        CHECK(ecdf(s, q) >= alpha);
        CHECK(ecdf(s, q - 1e-9) < alpha);
      }
    }
  }
}

TEST_CASE("reflected quantile check (minimal vs maximal conventions)") {
  CHECK(reflected_quantile_check(std::vector<double>{-2, -1, 0, 1, 2}, 0.5));
  CHECK(reflected_quantile_check(std::vector<double>{1, 2, 3, 4}, 0.25));
  std::mt19937 gen(2024);
  std::normal_distribution<double> val(0.3, 1.7);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = 1 + static_cast<std::size_t>(gen() % 40);
    std::vector<double> s(n);
    for (double& v : s) v = val(gen);
    for (int k = 1; k <= 9; ++k) {
      CHECK(reflected_quantile_check(s, k / 10.0));
    }
  }
}

TEST_CASE("quantile field zero row and single-sample identity") {
  GridSpec grid;
  grid.T = 2.0;
  grid.times = {0.0, 0.5, 1.0, 2.0};
  grid.alphas = {0.5};
  const ProcessSpec spec = ProcessSpec::bm();

  const PathEnsemble one = simulate(spec, grid, 1, 99u);
  const QuantileField f1 = quantile_field(one, grid, spec);
  for (std::size_t j = 0; j < grid.n_alphas(); ++j) CHECK(f1.at(0, j) == 0.0);
  // n=1 at the median of a symmetric law: W_1(t, 1/2) = X_1(t).
  for (std::size_t i = 1; i < grid.n_times(); ++i) {
    CHECK(f1.at(i, 0) == doctest::Approx(one.at(0, i)).epsilon(1e-15));
  }

  const PathEnsemble many = simulate(spec, grid, 64, 7u);
  const QuantileField fm = quantile_field(many, grid, spec);
  for (std::size_t j = 0; j < grid.n_alphas(); ++j) CHECK(fm.at(0, j) == 0.0);

  GridSpec other = grid;
  other.alphas = {0.25, 0.5};
  CHECK_THROWS_AS(quantile_field(many, other, spec), std::invalid_argument);
}
