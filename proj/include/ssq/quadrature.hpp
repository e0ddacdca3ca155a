#pragma once

#include <functional>

namespace ssq {

struct QuadResult {
  double value = 0.0;
  double error = 0.0;  // error estimate actually achieved
};

/// Adaptive Gauss-Kronrod (G7,K15) integration of f over [a, b].
/// Bisects until the per-interval error estimate meets the locally
/// apportioned tolerance; throws numerical_error when max_depth is hit
/// while the estimate is still above tolerance.
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double abs_tol, double rel_tol = 0.0, int max_depth = 52);

/// Single non-adaptive K15 panel with embedded error estimate.
QuadResult kronrod15(const std::function<double(double)>& f, double a, double b);

}  // namespace ssq
