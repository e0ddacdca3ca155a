#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ssq/process.hpp"
#include "ssq/simulate.hpp"

namespace ssq {

/// F_n(x) = count(values <= x)/n; right-continuous nondecreasing step function.
double ecdf(std::span<const double> sample, double x);

/// Nondecreasing rearrangement; ties keep original-index priority.
std::vector<double> order_statistics(std::span<const double> sample);

/// j(alpha) = min{k in 1..n : k/n >= alpha}, the order-statistic index of the
/// minimal (left-continuous) empirical alpha-quantile.
std::size_t quantile_order_index(std::size_t n, double alpha);

/// The order statistic x_(j(alpha)).
double empirical_quantile(std::span<const double> sample, double alpha);

/// Checks that q = -(maximal (1-alpha)-quantile of the negated sample) again
/// satisfies the two alpha-quantile inequalities
///   count(<= q)/n >= alpha  and  count(>= q)/n >= 1-alpha.
bool reflected_quantile_check(std::span<const double> sample, double alpha);

/// W_n(t,alpha) = sqrt(n) (tau^n_alpha(t) - tau_alpha(t)) on the grid.
/// The row at t=0 is identically zero.
struct QuantileField {
  GridSpec grid;
  std::size_t n = 0;
  std::uint32_t replication = 0;
  std::vector<double> w;  // row-major, n_times x n_alphas

  double at(std::size_t time_idx, std::size_t alpha_idx) const {
    return w[time_idx * grid.n_alphas() + alpha_idx];
  }
};

QuantileField quantile_field(const PathEnsemble& ensemble, const GridSpec& grid,
                             const ProcessSpec& spec);

/// Same with the model quantiles tau[time_idx][alpha_idx] precomputed
/// (tau rows indexed like the grid; row 0 is ignored).
QuantileField quantile_field_with_tau(const PathEnsemble& ensemble,
                                      const std::vector<double>& tau);

}  // namespace ssq
