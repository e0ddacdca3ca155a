#pragma once

#include <optional>

#include "ssq/process.hpp"
#include "ssq/stable.hpp"

namespace ssq {

/// E(X(s)X(t)) = (t^r + s^r - |t-s|^r)/2 for fractional Brownian motion.
double fbm_covariance(double s, double t, double r);

/// E(X(s)X(t)) for m-times integrated Brownian motion,
/// int_0^{s^t} (s-u)^m (t-u)^m du / (m!)^2, evaluated exactly by
/// Gauss-Legendre (the integrand is a polynomial of degree 2m).
double integrated_bm_covariance(double s, double t, int m);

/// Marginal distribution of X(t) for one process family. Everything is
/// anchored at t=1 and rescaled through F(t,x) = F(1, t^{-H} x),
/// f(t,x) = t^{-H} f(1, t^{-H} x), tau_alpha(t) = t^H tau_alpha(1).
class MarginalLaw {
 public:
  explicit MarginalLaw(const ProcessSpec& spec);

  double cdf(double t, double x) const;
  double density(double t, double x) const;      // t > 0
  double quantile(double t, double alpha) const;  // 0 at t=0

  // Laws at t=1.
  double cdf1(double x) const;
  double density1(double x) const;
  double quantile1(double alpha) const;

  const ProcessSpec& spec() const { return spec_; }
  double hurst() const { return H_; }
  /// Standard deviation of X(1); only meaningful for the Gaussian families.
  double sigma1() const { return sigma1_; }
  bool gaussian() const { return spec_.family != Family::STABLE && spec_.family != Family::ITERATED_BM; }

 private:
  ProcessSpec spec_;
  double H_;
  double sigma1_ = 1.0;
  std::optional<StableLaw> stable_;

  double iterated_cdf1(double x) const;
  double iterated_density1(double x) const;
  double iterated_quantile1(double alpha) const;
};

/// tau_alpha(t) = t^H tau_alpha(1); closed form for the Gaussian families,
/// bracketed root finding on the stable cdf otherwise.
double marginal_quantile(double t, double alpha, const ProcessSpec& spec);

/// f(t, tau_alpha(t)); rejects t = 0 where the law is a point mass.
double density_at_quantile(double t, double alpha, const ProcessSpec& spec);

}  // namespace ssq
