#pragma once

namespace ssq {

/// Marginal law at t=1 of the symmetric r-stable process with characteristic
/// function exp{-c|u|^r}, r in (0,2), c > 0.
///
/// density:  2*pi*f(x) = int exp{-c|u|^r} cos(xu) du, evaluated by splitting
/// the cosine integral at its zeros for |x| > 1 (signed panels, pairwise
/// summation) and by direct adaptive quadrature with the exponential tail cut
/// at c*u^r = 46 for |x| <= 1. Large |x| switches to the power-tail series,
/// which converges there for every r in (0,2).
///
/// cdf: Gil-Pelaez inversion F(x) = 1/2 + pi^{-1} int_0^inf sin(xu)
/// exp{-c u^r}/u du, same panel strategy, zeros of sin.
class StableLaw {
 public:
  StableLaw(double r, double c);

  double density(double x) const;  // f(1,x), relative error ~1e-8 for |x| <= 50
  double cdf(double x) const;      // F(1,x)
  double survival(double x) const { return cdf(-x); }

  /// tau_alpha(1): bisection on cdf to the requested bracket width followed
  /// by one Newton step off the density.
  double quantile(double alpha, double bracket_width = 1e-12) const;

  double index() const { return r_; }
  double scale() const { return c_; }

 private:
  double r_;
  double c_;
  double u_cut_;        // exp{-c u^r} below 1e-20 past this point
  double x_series_;     // switch to the tail series at |x| >= x_series_

  double density_quad(double x) const;
  double cdf_quad(double x) const;
  // Tail series for density and survival P(X > x); false when the series
  // cannot reach ~1e-12 relative at this x.
  bool tail_series(double x, double* density_out, double* survival_out) const;
};

// Free-function forms used across the toolkit.
double stable_density(double x, double r, double c);
double stable_cdf(double x, double r, double c);

}  // namespace ssq
