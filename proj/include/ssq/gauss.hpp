#pragma once

namespace ssq {

double norm_pdf(double x);
double norm_cdf(double x);

/// Inverse of norm_cdf, accurate to ~1e-15 over (0,1).
double norm_quantile(double p);

/// P(Z1 <= 0, Z2 <= 0) for standard normals with correlation rho,
/// computed from the arcsine identity.
double bivariate_orthant(double rho);

/// Phi2(a, b; rho) by quadrature of the tetrachoric integral
///   Phi(a)Phi(b) + (2*pi)^{-1} int_0^rho exp{-(a^2-2t*a*b+b^2)/(2(1-t^2))}/sqrt(1-t^2) dt.
/// |rho| within 1e-12 of 1 is handled by the degenerate closed forms.
/// Absolute error <= 1e-10.
double bivariate_normal_cdf(double a, double b, double rho);

}  // namespace ssq
