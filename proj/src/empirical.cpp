#include "ssq/empirical.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ssq/marginal.hpp"

namespace ssq {

double ecdf(std::span<const double> sample, double x) {
  if (sample.empty()) throw std::invalid_argument("ecdf of an empty sample");
  std::size_t count = 0;
  for (double v : sample) count += (v <= x);
  return static_cast<double>(count) / static_cast<double>(sample.size());
}

std::vector<double> order_statistics(std::span<const double> sample) {
  if (sample.empty()) throw std::invalid_argument("order statistics of an empty sample");
  std::vector<double> sorted(sample.begin(), sample.end());
  std::stable_sort(sorted.begin(), sorted.end());
  return sorted;
}

std::size_t quantile_order_index(std::size_t n, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("quantile level must lie inside (0,1)");
  }
  const auto nd = static_cast<double>(n);
  auto j = static_cast<std::size_t>(std::ceil(nd * alpha));
  j = std::clamp<std::size_t>(j, 1, n);
  // ceil can land one off under rounding; enforce the definition literally.
  while (j > 1 && static_cast<double>(j - 1) / nd >= alpha) --j;
  while (j < n && static_cast<double>(j) / nd < alpha) ++j;
  return j;
}

double empirical_quantile(std::span<const double> sample, double alpha) {
  const std::vector<double> sorted = order_statistics(sample);
  return sorted[quantile_order_index(sorted.size(), alpha) - 1];
}

bool reflected_quantile_check(std::span<const double> sample, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("quantile level must lie inside (0,1)");
  }
  const std::size_t n = sample.size();
  const auto nd = static_cast<double>(n);

  // Maximal (1-alpha)-quantile of the negated sample: largest order-statistic
  // index k with (k-1)/n <= 1-alpha.
  std::vector<double> negated(sample.begin(), sample.end());
  for (double& v : negated) v = -v;
  std::stable_sort(negated.begin(), negated.end());
  const double ap = 1.0 - alpha;
  auto k = static_cast<std::size_t>(std::floor(nd * ap)) + 1;
  k = std::clamp<std::size_t>(k, 1, n);
  while (k < n && static_cast<double>(k) / nd <= ap) ++k;
  while (k > 1 && static_cast<double>(k - 1) / nd > ap) --k;
  const double q = -negated[k - 1];

  std::size_t count_le = 0, count_ge = 0;
  for (double v : sample) {
    count_le += (v <= q);
    count_ge += (v >= q);
  }
  const double eps = 1e-9 * nd;
  return static_cast<double>(count_le) >= nd * alpha - eps &&
         static_cast<double>(count_ge) >= nd * (1.0 - alpha) - eps;
}

QuantileField quantile_field_with_tau(const PathEnsemble& ensemble,
                                      const std::vector<double>& tau) {
  const GridSpec& grid = ensemble.grid;
  const std::size_t nt = grid.n_times();
  const std::size_t na = grid.n_alphas();
  if (tau.size() != nt * na) {
    throw std::invalid_argument("quantile table does not match the grid");
  }
  QuantileField field{grid, ensemble.n_paths, ensemble.replication, {}};
  field.w.assign(nt * na, 0.0);
  const double root_n = std::sqrt(static_cast<double>(ensemble.n_paths));

  std::vector<std::size_t> idx(na);
  for (std::size_t j = 0; j < na; ++j) {
    idx[j] = quantile_order_index(ensemble.n_paths, grid.alphas[j]) - 1;
  }
  std::vector<double> col;
  for (std::size_t i = 1; i < nt; ++i) {  // row 0 stays exactly zero
    col = ensemble.column(i);
    std::stable_sort(col.begin(), col.end());
    for (std::size_t j = 0; j < na; ++j) {
      field.w[i * na + j] = root_n * (col[idx[j]] - tau[i * na + j]);
    }
  }
  return field;
}

QuantileField quantile_field(const PathEnsemble& ensemble, const GridSpec& grid,
                             const ProcessSpec& spec) {
  if (ensemble.grid.times != grid.times || ensemble.grid.alphas != grid.alphas) {
    throw std::invalid_argument("ensemble grid does not match the requested grid");
  }
  const MarginalLaw law(spec);
  const std::size_t nt = grid.n_times();
  const std::size_t na = grid.n_alphas();
  std::vector<double> tau(nt * na, 0.0);
  std::vector<double> tau1(na);
  for (std::size_t j = 0; j < na; ++j) tau1[j] = law.quantile1(grid.alphas[j]);
  for (std::size_t i = 1; i < nt; ++i) {
    const double scale = std::pow(grid.times[i], law.hurst());
    for (std::size_t j = 0; j < na; ++j) tau[i * na + j] = scale * tau1[j];
  }
  return quantile_field_with_tau(ensemble, tau);
}

}  // namespace ssq
