#include "ssq/limit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ssq/common.hpp"
#include "ssq/gauss.hpp"
#include "ssq/marginal.hpp"
#include "ssq/quadrature.hpp"
#include "ssq/stable.hpp"

namespace ssq {
namespace {

constexpr double kPi = 3.14159265358979323846;

// Gram matrix entry of the Gaussian families.
double gaussian_gram(double s, double t, const ProcessSpec& spec) {
  switch (spec.family) {
    case Family::FBM: return fbm_covariance(s, t, spec.r);
    case Family::BM: return fbm_covariance(s, t, 1.0);
    case Family::INTEGRATED_BM: return integrated_bm_covariance(s, t, spec.m);
    default: throw std::invalid_argument("not a Gaussian family");
  }
}

}  // namespace

const char* cov_method_name(CovMethod m) {
  switch (m) {
    case CovMethod::CLOSED_FORM_FBM: return "CLOSED_FORM_FBM";
    case CovMethod::CLOSED_FORM_ARCSIN: return "CLOSED_FORM_ARCSIN";
    case CovMethod::STABLE_CONVOLUTION: return "STABLE_CONVOLUTION";
    case CovMethod::MARGINAL_CASE: return "MARGINAL_CASE";
    case CovMethod::ZERO_BOUNDARY: return "ZERO_BOUNDARY";
  }
  return "?";
}

double stable_joint_cdf(double s, double t, double x, double y, double r, double c) {
  if (s > t) {
    std::swap(s, t);
    std::swap(x, y);
  }
  if (!(s > 0.0)) throw std::invalid_argument("stable_joint_cdf needs 0 < s <= t");
  const StableLaw law(r, c);
  const double ss = std::pow(s, 1.0 / r);  // scale of X(s)
  if (s == t) return std::min(law.cdf(x / ss), law.cdf(y / ss));

  const double dscale = std::pow(t - s, 1.0 / r);  // scale of the increment
  const double x1 = x / ss;
  // P = int f1(v) F1((y - ss*v)/dscale) dv over v <= x1, cut at the 1e-8
  // quantile; the discarded mass bounds the truncation error by 1e-8.
  const double v_lo = law.quantile(1e-8, 1e-6);
  if (x1 <= v_lo) return std::clamp(law.cdf(x1), 0.0, 1e-7);

  // Segment the range at model quantiles so each adaptive call sees a
  // comparable share of the mass.
  static constexpr double kProbs[] = {1e-6, 1e-4, 1e-3, 0.01, 0.05, 0.25, 0.5,
                                      0.75, 0.95, 0.99, 0.999, 0.9999, 1.0 - 1e-6};
  std::vector<double> cuts{v_lo};
  for (double p : kProbs) {
    const double q = law.quantile(p, 1e-6);
    if (q > cuts.back() && q < x1) cuts.push_back(q);
  }
  cuts.push_back(x1);

  const auto integrand = [&](double v) {
    return law.density(v) * law.cdf((y - ss * v) / dscale);
  };
  const double per_segment_tol = 5e-8 / static_cast<double>(cuts.size() - 1);
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    acc += integrate(integrand, cuts[i], cuts[i + 1], per_segment_tol, 0.0, 40).value;
  }
  return std::clamp(acc, 0.0, 1.0);
}

double limit_cov(std::pair<double, double> s_beta, std::pair<double, double> t_alpha,
                 const ProcessSpec& spec, CovMethod* method_out) {
  spec.validate();
  const auto [s, beta] = s_beta;
  const auto [t, alpha] = t_alpha;
  if (s < 0.0 || t < 0.0) throw std::invalid_argument("times must be nonnegative");
  if (!(alpha > 0.0 && alpha < 1.0) || !(beta > 0.0 && beta < 1.0)) {
    throw std::invalid_argument("levels must lie inside (0,1)");
  }
  const auto set_method = [&](CovMethod m) {
    if (method_out) *method_out = m;
  };

  if (s == 0.0 || t == 0.0) {
    set_method(CovMethod::ZERO_BOUNDARY);
    return 0.0;
  }

  const MarginalLaw law(spec);
  const double fs = law.density(s, law.quantile(s, beta));
  const double ft = law.density(t, law.quantile(t, alpha));

  if (s == t) {
    set_method(CovMethod::MARGINAL_CASE);
    return (std::min(alpha, beta) - alpha * beta) / (fs * ft);
  }

  if (spec.family == Family::STABLE) {
    set_method(CovMethod::STABLE_CONVOLUTION);
    const double joint = stable_joint_cdf(s, t, law.quantile(s, beta), law.quantile(t, alpha),
                                          spec.r, spec.c);
    return (joint - alpha * beta) / (fs * ft);
  }
  if (spec.family == Family::ITERATED_BM) {
    throw std::invalid_argument(
        "iterated_bm has no analytic joint law; its limit covariance is "
        "Monte-Carlo-only (see the verification harness)");
  }

  set_method(CovMethod::CLOSED_FORM_FBM);
  const double sig_s = std::sqrt(gaussian_gram(s, s, spec));
  const double sig_t = std::sqrt(gaussian_gram(t, t, spec));
  const double rho = std::clamp(gaussian_gram(s, t, spec) / (sig_s * sig_t), -1.0, 1.0);
  const double zb = norm_quantile(beta);
  const double za = norm_quantile(alpha);
  const double joint = bivariate_normal_cdf(zb, za, rho);
  return (joint - alpha * beta) / (fs * ft);
}

double median_cov_fbm(double s, double t, double r) {
  if (!(s > 0.0 && t > 0.0)) throw std::invalid_argument("times must be positive");
  const double sig = std::pow(s * t, 0.5 * r);
  const double rho = std::clamp(fbm_covariance(s, t, r) / sig, -1.0, 1.0);
  const double arcsin_route = sig * std::asin(rho);
  const double orthant_route = 2.0 * kPi * sig * (bivariate_normal_cdf(0.0, 0.0, rho) - 0.25);
  if (std::abs(arcsin_route - orthant_route) > 1e-6) {
    throw numerical_error("median covariance routes disagree: arcsin=" +
                          std::to_string(arcsin_route) +
                          " orthant=" + std::to_string(orthant_route));
  }
  return arcsin_route;
}

LimitCovariance limit_cov_table(const GridSpec& grid, const ProcessSpec& spec) {
  grid.validate();
  LimitCovariance table{spec, {}};
  struct Point {
    double t, alpha;
  };
  std::vector<Point> points;
  for (double t : grid.times) {
    for (double a : grid.alphas) points.push_back({t, a});
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i; j < points.size(); ++j) {
      CovMethod method;
      const double v =
          limit_cov({points[i].t, points[i].alpha}, {points[j].t, points[j].alpha}, spec,
                    &method);
      table.entries.push_back(
          {points[i].t, points[i].alpha, points[j].t, points[j].alpha, v, method});
    }
  }
  return table;
}

}  // namespace ssq
