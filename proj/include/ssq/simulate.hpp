#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ssq/process.hpp"

namespace ssq {

enum class SimMethod { CHOLESKY, CIRCULANT, INCREMENTS, CUMSUM, COMPOSE };
const char* sim_method_name(SimMethod m);

/// n simulated sample paths on the grid times, exact in distribution at the
/// grid points. Column 0 (time 0) is identically zero. Rows are independent.
struct PathEnsemble {
  ProcessSpec spec;
  GridSpec grid;
  std::size_t n_paths = 0;
  std::vector<double> values;  // row-major, n_paths x grid.n_times()
  std::uint64_t seed = 0;
  std::uint32_t replication = 0;
  SimMethod method = SimMethod::CHOLESKY;

  double at(std::size_t path, std::size_t time_idx) const {
    return values[path * grid.n_times() + time_idx];
  }
  std::span<const double> row(std::size_t path) const {
    return {values.data() + path * grid.n_times(), grid.n_times()};
  }
  std::vector<double> column(std::size_t time_idx) const;
};

/// Maximum grid size for dense covariance factorization.
inline constexpr std::size_t kMaxCholeskyTimes = 512;

/// Centered Gaussian rows with Gram matrix fbm_covariance over the nonzero
/// times, drawn through the lower Cholesky factor. A non-PSD factorization
/// (rounding) is retried once with 1e-12 diagonal jitter.
PathEnsemble simulate_fbm(const GridSpec& grid, double r, std::size_t n, std::uint64_t seed,
                          std::uint32_t replication = 0);

/// Stationary independent symmetric stable increments via the
/// Chambers-Mallows-Stuck transform; partial sums give the grid values.
PathEnsemble simulate_stable(const GridSpec& grid, double r, double c, std::size_t n,
                             std::uint64_t seed, std::uint32_t replication = 0);

/// Brownian motion simulated exactly on a refined grid and integrated m
/// times by the trapezoid rule. The refinement keeps the rms trapezoid error
/// of the first integral below `tol` (error ~ h*sqrt(T/12) for step h).
PathEnsemble simulate_integrated_bm(const GridSpec& grid, int m, std::size_t n,
                                    std::uint64_t seed, std::uint32_t replication = 0,
                                    double tol = 1e-3, std::size_t max_refined_steps = 1u << 20);

/// B(|B'(t)|) with B' an independent Brownian motion; H = 1/4.
PathEnsemble simulate_iterated_bm(const GridSpec& grid, std::size_t n, std::uint64_t seed,
                                  std::uint32_t replication = 0);

/// Family dispatch.
PathEnsemble simulate(const ProcessSpec& spec, const GridSpec& grid, std::size_t n,
                      std::uint64_t seed, std::uint32_t replication = 0);

}  // namespace ssq
