#pragma once

#include <functional>
#include <span>
#include <vector>

namespace ssq {

/// Survival function Q(lambda) of the asymptotic Kolmogorov distribution,
/// Q(lambda) = 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 lambda^2).
double kolmogorov_sf(double lambda);

struct KsResult {
  double statistic = 0.0;
  double p = 1.0;
};

/// One-sample KS against a continuous model cdf; asymptotic p-value.
KsResult ks_test(std::span<const double> sample, const std::function<double(double)>& cdf);

/// Two-sample KS with effective size m1*m2/(m1+m2); asymptotic p-value.
KsResult ks_two_sample(std::span<const double> a, std::span<const double> b);

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};

MeanSe mean_se(std::span<const double> xs);
double sample_variance(std::span<const double> xs);  // unbiased

/// Unbiased sample covariance and the standard error of the estimate
/// (sd of the centered cross products / sqrt(m)).
struct CovEstimate {
  double value = 0.0;
  double se = 0.0;
};
CovEstimate sample_covariance(std::span<const double> xs, std::span<const double> ys);

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_se = 0.0;
};
SlopeFit least_squares(std::span<const double> xs, std::span<const double> ys);

/// Smallest eigenvalue of a dense symmetric matrix (row-major n x n),
/// by cyclic Jacobi rotations.
double min_eigenvalue_symmetric(std::vector<double> a, std::size_t n);

}  // namespace ssq
