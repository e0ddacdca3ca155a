#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "ssq/gauss.hpp"
#include "ssq/limit.hpp"
#include "ssq/marginal.hpp"
#include "ssq/process.hpp"
#include "ssq/stats.hpp"

using namespace ssq;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("stable joint cdf: equal-scale Cauchy oracle") {
  // P(X(1)<=0, X(2)<=0) = 1/4 + 1/8 from the closed arctan^2 integral.
  CHECK(stable_joint_cdf(1.0, 2.0, 0.0, 0.0, 1.0, 1.0) ==
        doctest::Approx(0.375).epsilon(1e-6));
  // Total mass and same-time reduction.
  CHECK(stable_joint_cdf(1.0, 2.0, 1e7, 1e7, 1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(stable_joint_cdf(1.0, 1.0, 0.3, -0.2, 1.0, 1.0) ==
        doctest::Approx(stable_cdf(-0.2, 1.0, 1.0)).epsilon(1e-10));
  CHECK_THROWS_AS(stable_joint_cdf(0.0, 1.0, 0.0, 0.0, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("limit covariance dispatch") {
  const ProcessSpec bm = ProcessSpec::bm();
  CovMethod method;

  CHECK(limit_cov({0.0, 0.5}, {2.0, 0.5}, bm, &method) == 0.0);
  CHECK(method == CovMethod::ZERO_BOUNDARY);

  // Diagonal: alpha(1-alpha)/f^2 = pi/2 for the BM median at t=1.
  CHECK(limit_cov({1.0, 0.5}, {1.0, 0.5}, bm, &method) ==
        doctest::Approx(kPi / 2.0).epsilon(1e-10));
  CHECK(method == CovMethod::MARGINAL_CASE);

  // Swanson-case value sqrt(2) pi / 4 at (1,2).
  CHECK(limit_cov({1.0, 0.5}, {2.0, 0.5}, bm, &method) ==
        doctest::Approx(std::sqrt(2.0) * kPi / 4.0).epsilon(1e-9));
  CHECK(method == CovMethod::CLOSED_FORM_FBM);

  // Cauchy pair value pi^2/4.
  const ProcessSpec cauchy = ProcessSpec::stable(1.0, 1.0);
  CHECK(limit_cov({1.0, 0.5}, {2.0, 0.5}, cauchy, &method) ==
        doctest::Approx(kPi * kPi / 4.0).epsilon(1e-5));
  CHECK(method == CovMethod::STABLE_CONVOLUTION);
  CHECK(limit_cov({1.0, 0.5}, {1.0, 0.5}, cauchy) ==
        doctest::Approx(kPi * kPi / 4.0).epsilon(1e-9));

  // Symmetry of the covariance in its two grid points.
  const double a = limit_cov({0.5, 0.3}, {2.0, 0.7}, bm);
  const double b = limit_cov({2.0, 0.7}, {0.5, 0.3}, bm);
  CHECK(a == doctest::Approx(b).epsilon(1e-10));

  CHECK_THROWS_AS(limit_cov({1.0, 0.5}, {2.0, 0.5}, ProcessSpec::iterated_bm()),
                  std::invalid_argument);
}

TEST_CASE("median covariance dual routes for fbm") {
  CHECK(median_cov_fbm(1.0, 2.0, 1.0) ==
        doctest::Approx(std::sqrt(2.0) * kPi / 4.0).epsilon(1e-12));
  CHECK(median_cov_fbm(2.0, 2.0, 1.3) ==
        doctest::Approx(std::pow(2.0, 1.3) * kPi / 2.0).epsilon(1e-12));

  for (double r : {0.5, 1.0, 1.5}) {
    for (double s : {0.25, 0.5, 1.0, 2.0}) {
      for (double t : {0.25, 0.5, 1.0, 2.0}) {
        const double sig = std::pow(s * t, 0.5 * r);
        const double rho = fbm_covariance(s, t, r) / sig;
        const double arcsin_route = sig * std::asin(std::min(rho, 1.0));
        const double orthant_route = median_cov_fbm(s, t, r);
        CHECK(std::abs(arcsin_route - orthant_route) <= 1e-9);
        // Also the general-level dispatch at the median must agree.
        if (s != t) {
          CHECK(limit_cov({s, 0.5}, {t, 0.5}, ProcessSpec::fbm(r)) ==
                doctest::Approx(orthant_route).epsilon(1e-8));
        }
      }
    }
  }
}

TEST_CASE("stable median covariance: general route matches the specialization") {
  // Route A evaluates the density at zero by quadrature; route B replaces it
  // with the Gamma closed form of int exp{-c|u|^r} du.
  for (double r : {0.8, 1.0, 1.3}) {
    for (auto [s, t] : std::vector<std::pair<double, double>>{{1.0, 2.0}, {0.5, 1.0}}) {
      const double c = 1.0;
      const double joint = stable_joint_cdf(s, t, 0.0, 0.0, r, c);
      const double route_a = limit_cov({s, 0.5}, {t, 0.5}, ProcessSpec::stable(r, c));
      const double norm_integral = 2.0 * std::tgamma(1.0 + 1.0 / r) * std::pow(c, -1.0 / r);
      const double route_b = 4.0 * kPi * kPi * std::pow(s * t, 1.0 / r) * (joint - 0.25) /
                             (norm_integral * norm_integral);
      CHECK(std::abs(route_a - route_b) <= 1e-6);
    }
  }
}

TEST_CASE("integrated bm goes through the gaussian closed form") {
  const ProcessSpec ibm = ProcessSpec::integrated_bm(1);
  CovMethod method;
  const double v = limit_cov({1.0, 0.5}, {2.0, 0.5}, ibm, &method);
  CHECK(method == CovMethod::CLOSED_FORM_FBM);
  // Median covariance of a Gaussian pair: sig_s sig_t asin(rho).
  const double sig_s = std::sqrt(integrated_bm_covariance(1.0, 1.0, 1));
  const double sig_t = std::sqrt(integrated_bm_covariance(2.0, 2.0, 1));
  const double rho = integrated_bm_covariance(1.0, 2.0, 1) / (sig_s * sig_t);
  CHECK(v == doctest::Approx(2.0 * kPi * sig_s * sig_t * (bivariate_orthant(rho) - 0.25))
                 .epsilon(1e-9));
}

TEST_CASE("limit covariance matrix is positive semidefinite on a grid") {
  GridSpec grid;
  grid.T = 2.0;
  grid.times = {0.0, 0.5, 1.0, 2.0};
  grid.alphas = {0.4, 0.6};
  for (const ProcessSpec& spec : {ProcessSpec::bm(), ProcessSpec::stable(1.0, 1.0)}) {
    std::vector<std::pair<double, double>> pts;
    for (double t : grid.times) {
      for (double a : grid.alphas) pts.push_back({t, a});
    }
    const std::size_t p = pts.size();
    std::vector<double> cov(p * p);
    for (std::size_t i = 0; i < p; ++i) {
      for (std::size_t j = i; j < p; ++j) {
        const double v = limit_cov(pts[i], pts[j], spec);
        cov[i * p + j] = v;
        cov[j * p + i] = v;
      }
    }
    CHECK(min_eigenvalue_symmetric(cov, p) >= -1e-8);
  }
}

TEST_CASE("boundary continuity of the BM median diagonal") {
  const ProcessSpec bm = ProcessSpec::bm();
  double prev = HUGE_VAL;
  for (double s : {0.1, 0.01, 0.001}) {
    const double v = limit_cov({s, 0.5}, {s, 0.5}, bm);
    CHECK(v == doctest::Approx(kPi * s / 2.0).epsilon(1e-10));
    CHECK(std::abs(v) < std::abs(prev));
    prev = v;
  }
}

TEST_CASE("limit covariance table over a small grid") {
  GridSpec grid;
  grid.T = 2.0;
  grid.times = {0.0, 1.0, 2.0};
  grid.alphas = {0.5};
  const LimitCovariance table = limit_cov_table(grid, ProcessSpec::bm());
  CHECK(table.entries.size() == 6);  // 3 points, unordered pairs with repeats
  bool found_zero = false, found_swanson = false;
  for (const CovEntry& e : table.entries) {
    if (e.s == 0.0) {
      CHECK(e.value == 0.0);
      CHECK(e.method == CovMethod::ZERO_BOUNDARY);
      found_zero = true;
    }
    if (e.s == 1.0 && e.t == 2.0) {
      CHECK(e.value == doctest::Approx(std::sqrt(2.0) * kPi / 4.0).epsilon(1e-9));
      found_swanson = true;
    }
  }
  CHECK(found_zero);
  CHECK(found_swanson);
}
