#include "ssq/marginal.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "ssq/common.hpp"
#include "ssq/gauss.hpp"
#include "ssq/quadrature.hpp"

namespace ssq {
namespace {

constexpr double kPi = 3.14159265358979323846;

// Gauss-Legendre nodes/weights on [-1,1] by Newton iteration on P_n.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.resize(n);
  weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    weights[i] = w;
    weights[n - 1 - i] = w;
  }
}

}  // namespace

double fbm_covariance(double s, double t, double r) {
  if (!(r > 0.0 && r < 2.0)) {
    throw std::invalid_argument("fbm_covariance: index r must lie strictly inside (0,2)");
  }
  if (s < 0.0 || t < 0.0) {
    throw std::invalid_argument("fbm_covariance: times must be nonnegative");
  }
  return 0.5 * (std::pow(t, r) + std::pow(s, r) - std::pow(std::abs(t - s), r));
}

double integrated_bm_covariance(double s, double t, int m) {
  if (m < 1) throw std::invalid_argument("integration order m must be >= 1");
  if (s < 0.0 || t < 0.0) throw std::invalid_argument("times must be nonnegative");
  const double up = std::min(s, t);
  if (up == 0.0) return 0.0;
  std::vector<double> x, w;
  gauss_legendre(m + 1, x, w);  // exact for the degree-2m integrand
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double u = 0.5 * up * (x[i] + 1.0);
    acc += w[i] * std::pow(s - u, m) * std::pow(t - u, m);
  }
  acc *= 0.5 * up;
  const double mf = std::tgamma(m + 1.0);
  return acc / (mf * mf);
}

MarginalLaw::MarginalLaw(const ProcessSpec& spec) : spec_(spec) {
  spec_.validate();
  H_ = spec_.hurst();
  switch (spec_.family) {
    case Family::FBM:
    case Family::BM:
      sigma1_ = 1.0;
      break;
    case Family::INTEGRATED_BM:
      sigma1_ = std::sqrt(integrated_bm_covariance(1.0, 1.0, spec_.m));
      break;
    case Family::STABLE:
      stable_.emplace(spec_.r, spec_.c);
      break;
    case Family::ITERATED_BM:
      break;
  }
}

// Law of B(|B'(1)|): a scale mixture of centered normals over the half-normal
// mixing law of |B'(1)|. With v = w^2 the density becomes
//   f(1,x) = (2/pi) int_0^inf exp{-x^2/(2 w^2) - w^4/2} dw.
double MarginalLaw::iterated_density1(double x) const {
  const double ax = std::abs(x);
  const double w_hi = std::pow(92.0, 0.25);  // w^4/2 = 46
  const auto g = [ax](double w) {
    const double expo = (w > 0.0) ? -ax * ax / (2.0 * w * w) - 0.5 * w * w * w * w : -HUGE_VAL;
    return std::exp(expo);
  };
  return (2.0 / kPi) * integrate(g, 0.0, w_hi, 1e-13, 1e-10, 56).value;
}

double MarginalLaw::iterated_cdf1(double x) const {
  if (x == 0.0) return 0.5;
  const double ax = std::abs(x);
  const double v_hi = std::sqrt(92.0);
  const auto g = [ax](double v) {
    const double phi = (v > 0.0) ? norm_cdf(ax / std::sqrt(v)) : 1.0;
    return phi * std::sqrt(2.0 / kPi) * std::exp(-0.5 * v * v);
  };
  const double upper = integrate(g, 0.0, v_hi, 1e-12, 1e-10, 56).value;
  return x > 0.0 ? upper : 1.0 - upper;
}

double MarginalLaw::iterated_quantile1(double alpha) const {
  if (alpha == 0.5) return 0.0;
  if (alpha < 0.5) return -iterated_quantile1(1.0 - alpha);
  double lo = 0.0, hi = 1.0;
  int guard = 0;
  while (iterated_cdf1(hi) < alpha) {
    hi *= 2.0;
    if (++guard > 200) {
      throw numerical_error("iterated bm quantile: bracket expansion failed");
    }
  }
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (iterated_cdf1(mid) < alpha ? lo : hi) = mid;
  }
  double q = 0.5 * (lo + hi);
  const double f = iterated_density1(q);
  if (f > 0.0) q -= (iterated_cdf1(q) - alpha) / f;
  return q;
}

double MarginalLaw::cdf1(double x) const {
  switch (spec_.family) {
    case Family::STABLE: return stable_->cdf(x);
    case Family::ITERATED_BM: return iterated_cdf1(x);
    default: return norm_cdf(x / sigma1_);
  }
}

double MarginalLaw::density1(double x) const {
  switch (spec_.family) {
    case Family::STABLE: return stable_->density(x);
    case Family::ITERATED_BM: return iterated_density1(x);
    default: return norm_pdf(x / sigma1_) / sigma1_;
  }
}

double MarginalLaw::quantile1(double alpha) const {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("quantile level must lie inside (0,1)");
  }
  switch (spec_.family) {
    case Family::STABLE: return alpha == 0.5 ? 0.0 : stable_->quantile(alpha);
    case Family::ITERATED_BM: return iterated_quantile1(alpha);
    default: return alpha == 0.5 ? 0.0 : sigma1_ * norm_quantile(alpha);
  }
}

double MarginalLaw::cdf(double t, double x) const {
  if (t < 0.0) throw std::invalid_argument("time must be nonnegative");
  if (t == 0.0) return x >= 0.0 ? 1.0 : 0.0;  // point mass at 0
  return cdf1(std::pow(t, -H_) * x);
}

double MarginalLaw::density(double t, double x) const {
  if (!(t > 0.0)) throw std::invalid_argument("density requires t > 0 (point mass at t=0)");
  const double scale = std::pow(t, -H_);
  return scale * density1(scale * x);
}

double MarginalLaw::quantile(double t, double alpha) const {
  if (t < 0.0) throw std::invalid_argument("time must be nonnegative");
  if (t == 0.0) return 0.0;
  return std::pow(t, H_) * quantile1(alpha);
}

double marginal_quantile(double t, double alpha, const ProcessSpec& spec) {
  return MarginalLaw(spec).quantile(t, alpha);
}

double density_at_quantile(double t, double alpha, const ProcessSpec& spec) {
  const MarginalLaw law(spec);
  if (!(t > 0.0)) throw std::invalid_argument("density requires t > 0 (point mass at t=0)");
  return law.density(t, law.quantile(t, alpha));
}

}  // namespace ssq
