#pragma once

#include <utility>
#include <vector>

#include "ssq/process.hpp"

namespace ssq {

enum class CovMethod {
  CLOSED_FORM_FBM,
  CLOSED_FORM_ARCSIN,
  STABLE_CONVOLUTION,
  MARGINAL_CASE,
  ZERO_BOUNDARY,
};
const char* cov_method_name(CovMethod m);

/// P(X(s) <= x, X(t) <= y) for the symmetric r-stable process with
/// independent increments, via int_{-inf}^{x} f(s,u) F(t-s, y-u) du.
/// The improper lower end is cut at the 1e-8 model quantile; absolute
/// error <= 1e-7. s = t reduces to min of the marginal cdfs.
double stable_joint_cdf(double s, double t, double x, double y, double r, double c);

/// Covariance of the limiting Gaussian field of the quantile fluctuation
/// process,
///   [P(X_s <= tau_beta(s), X_t <= tau_alpha(t)) - alpha beta]
///     / [f(s,tau_beta(s)) f(t,tau_alpha(t))],
/// zero whenever s or t is 0. Dispatches per family; the iterated family has
/// no analytic joint law and is rejected (Monte-Carlo-only).
double limit_cov(std::pair<double, double> s_beta, std::pair<double, double> t_alpha,
                 const ProcessSpec& spec, CovMethod* method_out = nullptr);

/// Median-level fBm covariance (st)^{r/2} arcsin(rho(s,t)); cross-checked
/// against the orthant-probability route 2*pi*(st)^{r/2}[P(X_s<=0,X_t<=0)-1/4].
/// Disagreement beyond 1e-6 throws (internal-consistency failure).
double median_cov_fbm(double s, double t, double r);

struct CovEntry {
  double s, beta, t, alpha;
  double value;
  CovMethod method;
};

/// Evaluations over all unordered pairs of grid points ((s,beta),(t,alpha)).
struct LimitCovariance {
  ProcessSpec spec;
  std::vector<CovEntry> entries;
};

LimitCovariance limit_cov_table(const GridSpec& grid, const ProcessSpec& spec);

}  // namespace ssq
