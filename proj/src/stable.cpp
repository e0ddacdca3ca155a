#include "ssq/stable.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "ssq/common.hpp"
#include "ssq/quadrature.hpp"

namespace ssq {
namespace {

constexpr double kPi = 3.14159265358979323846;

double pairwise_sum(const std::vector<double>& v, std::size_t lo, std::size_t hi) {
  if (hi - lo <= 4) {
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += v[i];
    return s;
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
}

double pairwise_sum(const std::vector<double>& v) {
  return v.empty() ? 0.0 : pairwise_sum(v, 0, v.size());
}

}  // namespace

StableLaw::StableLaw(double r, double c) : r_(r), c_(c) {
  if (!(r > 0.0 && r < 2.0)) {
    throw std::invalid_argument("stable index r must lie strictly inside (0,2)");
  }
  if (!(c > 0.0)) throw std::invalid_argument("stable scale c must be positive");
  u_cut_ = std::pow(46.0 / c, 1.0 / r);
  x_series_ = (r < 1.0) ? 2.0 : 10.0;
}

// Power-tail expansion of the symmetric stable law,
//   f(x)    = pi^{-1} sum_k (-1)^{k-1} c^k Gamma(kr+1) sin(k pi r/2) / k! x^{-kr-1},
//   P(X>x)  = pi^{-1} sum_k (-1)^{k-1} c^k Gamma(kr+1) sin(k pi r/2) / (k! kr) x^{-kr}.
// Convergent for all x>0 when r<1, asymptotic (rapidly decaying head) for r>=1.
bool StableLaw::tail_series(double x, double* density_out, double* survival_out) const {
  const double log_x = std::log(x);
  const double log_c = std::log(c_);
  double dens = 0.0, surv = 0.0;
  double prev_mag = HUGE_VAL;
  bool converged = false;
  for (int k = 1; k <= 220; ++k) {
    const double s = std::sin(0.5 * k * kPi * r_);
    const double log_mag =
        k * log_c + std::lgamma(k * r_ + 1.0) - std::lgamma(k + 1.0) - k * r_ * log_x;
    const double mag = std::exp(log_mag);
    if (mag > prev_mag) break;  // asymptotic regime: stop at the smallest term
    prev_mag = mag;
    const double sign = (k % 2 == 1) ? 1.0 : -1.0;
    dens += sign * s * mag / x;
    surv += sign * s * mag / (k * r_);
    if (mag / x <= 1e-16 * std::abs(dens) && mag / (k * r_) <= 1e-16 * std::abs(surv)) {
      converged = true;
      break;
    }
  }
  if (!converged && prev_mag / x > 1e-12 * std::abs(dens)) return false;
  if (density_out) *density_out = dens / kPi;
  if (survival_out) *survival_out = surv / kPi;
  return true;
}

double StableLaw::density_quad(double x) const {
  const double tol = 1e-13;
  const auto integrand = [this, x](double u) {
    return std::exp(-c_ * std::pow(u, r_)) * std::cos(x * u);
  };
  if (x <= 1.0) {
    return integrate(integrand, 0.0, u_cut_, tol, 1e-10, 56).value / kPi;
  }
  // Signed panels between consecutive zeros of cos(xu).
  std::vector<double> panels;
  double a = 0.0;
  for (int k = 1;; ++k) {
    double b = (k - 0.5) * kPi / x;
    const bool last = b >= u_cut_;
    if (last) b = u_cut_;
    panels.push_back(integrate(integrand, a, b, tol / (1.0 + 0.02 * k), 0.0, 48).value);
    if (last) break;
    a = b;
  }
  return pairwise_sum(panels) / kPi;
}

double StableLaw::cdf_quad(double x) const {
  // x > 0 here; Gil-Pelaez with sin(xu)/u extended by continuity at u=0.
  const double tol = 1e-12;
  const auto integrand = [this, x](double u) {
    const double xu = x * u;
    const double sinc = (std::abs(xu) < 1e-8) ? x * (1.0 - xu * xu / 6.0) : std::sin(xu) / u;
    return std::exp(-c_ * std::pow(u, r_)) * sinc;
  };
  double acc;
  if (x * u_cut_ <= kPi) {
    acc = integrate(integrand, 0.0, u_cut_, tol, 1e-10, 56).value;
  } else {
    std::vector<double> panels;
    double a = 0.0;
    for (int k = 1;; ++k) {
      double b = k * kPi / x;
      const bool last = b >= u_cut_;
      if (last) b = u_cut_;
      panels.push_back(integrate(integrand, a, b, tol / (1.0 + 0.02 * k), 0.0, 48).value);
      if (last) break;
      a = b;
    }
    acc = pairwise_sum(panels);
  }
  return 0.5 + acc / kPi;
}

double StableLaw::density(double x) const {
  x = std::abs(x);
  if (x >= x_series_) {
    double dens;
    if (tail_series(x, &dens, nullptr)) return dens;
  }
  return density_quad(x);
}

double StableLaw::cdf(double x) const {
  if (x == 0.0) return 0.5;
  const double ax = std::abs(x);
  double upper;  // F(ax)
  bool done = false;
  if (ax >= x_series_) {
    double surv;
    if (tail_series(ax, nullptr, &surv)) {
      upper = 1.0 - surv;
      done = true;
    }
  }
  if (!done) upper = cdf_quad(ax);
  return x > 0.0 ? upper : 1.0 - upper;
}

double StableLaw::quantile(double alpha, double bracket_width) const {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("quantile level must lie inside (0,1)");
  }
  if (alpha == 0.5) return 0.0;
  if (alpha < 0.5) return -quantile(1.0 - alpha, bracket_width);

  double lo = 0.0, hi = 1.0;
  int guard = 0;
  while (cdf(hi) < alpha) {
    hi *= 2.0;
    if (++guard > 1030) {
      throw numerical_error("stable quantile: bracket expansion failed at alpha=" +
                            std::to_string(alpha) + ", hi=" + std::to_string(hi));
    }
  }
  while (hi - lo > bracket_width) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // double precision exhausted
    (cdf(mid) < alpha ? lo : hi) = mid;
  }
  double q = 0.5 * (lo + hi);
  const double f = density(q);
  if (f > 0.0) q -= (cdf(q) - alpha) / f;
  return q;
}

double stable_density(double x, double r, double c) { return StableLaw(r, c).density(x); }
double stable_cdf(double x, double r, double c) { return StableLaw(r, c).cdf(x); }

}  // namespace ssq
