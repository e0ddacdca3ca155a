#include "ssq/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "ssq/common.hpp"
#include "ssq/marginal.hpp"
#include "ssq/rng.hpp"

namespace ssq {
namespace {

constexpr double kPi = 3.14159265358979323846;

// Lower Cholesky factor in place; returns false on a non-positive pivot.
bool cholesky(std::vector<double>& a, std::size_t k) {
  for (std::size_t j = 0; j < k; ++j) {
    double d = a[j * k + j];
    for (std::size_t p = 0; p < j; ++p) d -= a[j * k + p] * a[j * k + p];
    if (d <= 0.0) return false;
    const double root = std::sqrt(d);
    a[j * k + j] = root;
    for (std::size_t i = j + 1; i < k; ++i) {
      double s = a[i * k + j];
      for (std::size_t p = 0; p < j; ++p) s -= a[i * k + p] * a[j * k + p];
      a[i * k + j] = s / root;
    }
  }
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t i = 0; i < j; ++i) a[i * k + j] = 0.0;
  }
  return true;
}

// Symmetric stable variate with characteristic function exp{-|u|^r}
// (Chambers, Mallows, Stuck 1976). u1,u2 uniform on (0,1).
double cms_standard_stable(double r, double u1, double u2) {
  const double U = kPi * (u1 - 0.5);  // uniform on (-pi/2, pi/2)
  const double W = -std::log(u2);     // exponential
  const double cU = std::cos(U);
  return std::sin(r * U) / std::pow(cU, 1.0 / r) *
         std::pow(std::cos((1.0 - r) * U) / W, (1.0 - r) / r);
}

}  // namespace

const char* sim_method_name(SimMethod m) {
  switch (m) {
    case SimMethod::CHOLESKY: return "CHOLESKY";
    case SimMethod::CIRCULANT: return "CIRCULANT";
    case SimMethod::INCREMENTS: return "INCREMENTS";
    case SimMethod::CUMSUM: return "CUMSUM";
    case SimMethod::COMPOSE: return "COMPOSE";
  }
  return "?";
}

std::vector<double> PathEnsemble::column(std::size_t time_idx) const {
  std::vector<double> out(n_paths);
  for (std::size_t i = 0; i < n_paths; ++i) out[i] = at(i, time_idx);
  return out;
}

PathEnsemble simulate_fbm(const GridSpec& grid, double r, std::size_t n, std::uint64_t seed,
                          std::uint32_t replication) {
  grid.validate();
  if (n < 1) throw std::invalid_argument("need at least one path");
  const std::size_t k = grid.n_times() - 1;  // nonzero times
  if (k > kMaxCholeskyTimes) {
    throw std::invalid_argument("grid exceeds the dense factorization maximum of " +
                                std::to_string(kMaxCholeskyTimes) + " nonzero times");
  }

  std::vector<double> gram(k * k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      const double v = fbm_covariance(grid.times[i + 1], grid.times[j + 1], r);
      gram[i * k + j] = v;
      gram[j * k + i] = v;
    }
  }
  std::vector<double> factor = gram;
  if (!cholesky(factor, k)) {
    factor = gram;
    for (std::size_t i = 0; i < k; ++i) factor[i * k + i] += 1e-12;
    if (!cholesky(factor, k)) {
      throw numerical_error(
          "fbm covariance factorization failed even with 1e-12 diagonal jitter");
    }
  }

  PathEnsemble e{ProcessSpec::fbm(r), grid, n, {}, seed, replication, SimMethod::CHOLESKY};
  if (r == 1.0) e.spec = ProcessSpec::bm();
  e.values.assign(n * grid.n_times(), 0.0);
  std::vector<double> z(k);
  for (std::size_t path = 0; path < n; ++path) {
    const PathRng rng(seed, replication, static_cast<std::uint32_t>(path));
    for (std::size_t j = 0; j < k; ++j) z[j] = rng.normal(static_cast<std::uint32_t>(j + 1));
    double* row = e.values.data() + path * grid.n_times();
    for (std::size_t i = 0; i < k; ++i) {
      double acc = 0.0;
      for (std::size_t j = 0; j <= i; ++j) acc += factor[i * k + j] * z[j];
      row[i + 1] = acc;
    }
  }
  return e;
}

PathEnsemble simulate_stable(const GridSpec& grid, double r, double c, std::size_t n,
                             std::uint64_t seed, std::uint32_t replication) {
  grid.validate();
  ProcessSpec spec = ProcessSpec::stable(r, c);
  spec.validate();
  if (n < 1) throw std::invalid_argument("need at least one path");

  PathEnsemble e{spec, grid, n, {}, seed, replication, SimMethod::INCREMENTS};
  e.values.assign(n * grid.n_times(), 0.0);
  const std::size_t k = grid.n_times() - 1;
  for (std::size_t path = 0; path < n; ++path) {
    const PathRng rng(seed, replication, static_cast<std::uint32_t>(path));
    double* row = e.values.data() + path * grid.n_times();
    double x = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      const double dt = grid.times[j + 1] - grid.times[j];
      const auto [u1, u2] = rng.uniform2(static_cast<std::uint32_t>(j + 1));
      x += std::pow(c * dt, 1.0 / r) * cms_standard_stable(r, u1, u2);
      row[j + 1] = x;
    }
  }
  return e;
}

PathEnsemble simulate_integrated_bm(const GridSpec& grid, int m, std::size_t n,
                                    std::uint64_t seed, std::uint32_t replication, double tol,
                                    std::size_t max_refined_steps) {
  grid.validate();
  ProcessSpec spec = ProcessSpec::integrated_bm(m);
  spec.validate();
  if (n < 1) throw std::invalid_argument("need at least one path");
  if (!(tol > 0.0)) throw std::invalid_argument("refinement tolerance must be positive");

  // rms trapezoid error of the first integral is h*sqrt(T/12); solve for h.
  const double h_target = tol * std::sqrt(12.0 / grid.T);
  std::vector<double> fine{0.0};
  std::vector<std::size_t> coarse_index{0};
  for (std::size_t j = 1; j < grid.n_times(); ++j) {
    const double dt = grid.times[j] - grid.times[j - 1];
    const auto sub = static_cast<std::size_t>(std::ceil(dt / h_target));
    for (std::size_t s = 1; s <= sub; ++s) {
      fine.push_back(grid.times[j - 1] + dt * static_cast<double>(s) / sub);
    }
    fine.back() = grid.times[j];
    coarse_index.push_back(fine.size() - 1);
    if (fine.size() > max_refined_steps) {
      throw std::invalid_argument("integrated bm refinement budget exceeded (" +
                                  std::to_string(max_refined_steps) +
                                  " steps); coarsen the grid or raise the tolerance");
    }
  }

  PathEnsemble e{spec, grid, n, {}, seed, replication, SimMethod::CUMSUM};
  e.values.assign(n * grid.n_times(), 0.0);
  const std::size_t kf = fine.size();
  std::vector<double> work(kf), next(kf);
  for (std::size_t path = 0; path < n; ++path) {
    const PathRng rng(seed, replication, static_cast<std::uint32_t>(path));
    work[0] = 0.0;
    for (std::size_t j = 1; j < kf; ++j) {
      const double dt = fine[j] - fine[j - 1];
      work[j] = work[j - 1] + std::sqrt(dt) * rng.normal(static_cast<std::uint32_t>(j));
    }
    for (int iter = 0; iter < m; ++iter) {
      next[0] = 0.0;
      for (std::size_t j = 1; j < kf; ++j) {
        next[j] = next[j - 1] + 0.5 * (work[j] + work[j - 1]) * (fine[j] - fine[j - 1]);
      }
      work.swap(next);
    }
    double* row = e.values.data() + path * grid.n_times();
    for (std::size_t j = 0; j < grid.n_times(); ++j) row[j] = work[coarse_index[j]];
  }
  return e;
}

PathEnsemble simulate_iterated_bm(const GridSpec& grid, std::size_t n, std::uint64_t seed,
                                  std::uint32_t replication) {
  grid.validate();
  if (n < 1) throw std::invalid_argument("need at least one path");

  PathEnsemble e{ProcessSpec::iterated_bm(), grid, n, {}, seed, replication, SimMethod::COMPOSE};
  e.values.assign(n * grid.n_times(), 0.0);
  const std::size_t k = grid.n_times();
  std::vector<double> clock(k);     // |B'(t_j)|
  std::vector<std::size_t> order(k);
  std::vector<double> outer(k);     // B at the sorted clock values
  for (std::size_t path = 0; path < n; ++path) {
    const PathRng rng(seed, replication, static_cast<std::uint32_t>(path));
    double bprime = 0.0;
    clock[0] = 0.0;
    for (std::size_t j = 1; j < k; ++j) {
      const double dt = grid.times[j] - grid.times[j - 1];
      bprime += std::sqrt(dt) * rng.normal(static_cast<std::uint32_t>(j), /*stream=*/0);
      clock[j] = std::abs(bprime);
    }
    // Evaluate the outer motion along the sorted clock points so every
    // increment is an independent Gaussian with the right gap variance.
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&clock](std::size_t a, std::size_t b) { return clock[a] < clock[b]; });
    double b = 0.0, prev = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      const double v = clock[order[j]];
      const double gap = v - prev;
      if (gap > 0.0) {
        b += std::sqrt(gap) * rng.normal(static_cast<std::uint32_t>(j), /*stream=*/1);
      }
      outer[order[j]] = b;
      prev = v;
    }
    double* row = e.values.data() + path * k;
    for (std::size_t j = 0; j < k; ++j) row[j] = outer[j];
    row[0] = 0.0;
  }
  return e;
}

PathEnsemble simulate(const ProcessSpec& spec, const GridSpec& grid, std::size_t n,
                      std::uint64_t seed, std::uint32_t replication) {
  spec.validate();
  switch (spec.family) {
    case Family::FBM: return simulate_fbm(grid, spec.r, n, seed, replication);
    case Family::BM: return simulate_fbm(grid, 1.0, n, seed, replication);
    case Family::STABLE: return simulate_stable(grid, spec.r, spec.c, n, seed, replication);
    case Family::INTEGRATED_BM:
      return simulate_integrated_bm(grid, spec.m, n, seed, replication);
    case Family::ITERATED_BM: return simulate_iterated_bm(grid, n, seed, replication);
  }
  throw std::invalid_argument("unknown family");
}

}  // namespace ssq
