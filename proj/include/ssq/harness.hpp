#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "ssq/process.hpp"

namespace ssq {

struct Estimate {
  nlohmann::json coords;
  double value = 0.0;
  double se = 0.0;
};

struct TestStat {
  std::string name;
  double statistic = 0.0;
  double p = 1.0;
};

struct Verdict {
  std::string check;
  bool pass = false;
};

/// Outcome of one verification experiment. Byte-identical for identical
/// (config, seed) up to the wall_time_s field.
struct VerificationReport {
  std::string experiment;
  nlohmann::json config;
  std::uint64_t seed = 0;
  std::vector<Estimate> estimates;
  std::vector<TestStat> tests;
  std::vector<Verdict> verdicts;
  double wall_time_s = 0.0;

  bool all_pass() const;
  const Estimate* find_estimate(const nlohmann::json& coords) const;
  const Verdict* find_verdict(const std::string& check) const;
  nlohmann::json to_json(bool include_wall_time = true) const;
};

nlohmann::json spec_to_json(const ProcessSpec& spec);
nlohmann::json grid_to_json(const GridSpec& grid);

/// Replicated quantile fields vs. the limiting covariance: per-pair z-scores,
/// family-wise 3-se verdict, and diagonal relative error.
struct CltConfig {
  ProcessSpec spec;
  GridSpec grid;
  std::size_t n = 400;  // paths per replication
  std::size_t m = 1000; // replications
  std::uint64_t seed = 1;
  int workers = 0;      // <=0: hardware concurrency
  double diag_rel_tol = 0.10;
  double pair_pass_fraction = 0.95;
};
VerificationReport mc_quantile_clt(const CltConfig& cfg);

/// One-sample KS of the standardized W_n(t, alpha) replicates against the
/// standard normal.
struct NormalityConfig {
  ProcessSpec spec;
  double t = 1.0;
  double alpha = 0.5;
  std::size_t n = 1000;
  std::size_t m = 2000;
  std::uint64_t seed = 1;
  int workers = 0;
  double p_min = 0.01;
};
VerificationReport mc_normality(const NormalityConfig& cfg);

/// Two-sample KS between {W_n(c t0, alpha0)} and {c^H W_n(t0, alpha0)}.
struct ScalabilityConfig {
  ProcessSpec spec;
  double t0 = 0.5;
  double alpha0 = 0.5;
  std::vector<double> c_factors{2.0, 4.0};
  std::size_t n = 400;
  std::size_t m = 1000;
  std::uint64_t seed = 1;
  int workers = 0;
  double p_min = 0.01;
};
VerificationReport scalability_check(const ScalabilityConfig& cfg);

/// Scaling moment bound E sup_{(0,delta] x A} |W|^q <=
/// delta^{Hq}/(1-2^{-Hq}) E sup_{J x A} |W|^q with J = [1,2]. The (0,delta]
/// grid is a union of dyadically scaled copies of the J grid, so the two
/// grid suprema sit at matched relative resolution.
struct Lemma1Config {
  ProcessSpec spec;
  double delta = 0.25;
  double q = 1.0;
  std::size_t n = 400;
  std::size_t m = 500;
  std::uint64_t seed = 1;
  int workers = 0;
  double alpha_star = 0.75;  // A = [1-alpha_star, alpha_star]
  int j_time_points = 17;
  int alpha_points = 17;
  int dyadic_levels = 6;
};
VerificationReport lemma1_bound_check(const Lemma1Config& cfg);

/// P(sup_{t<=delta, alpha} |W_n| > eps) per (delta, eps): nonincreasing in
/// shrinking delta and below eps at the smallest delta for some tabulated eps.
struct NearZeroConfig {
  ProcessSpec spec;
  std::vector<double> deltas{0.2, 0.1, 0.05, 0.01};
  std::vector<double> epsilons{0.25, 0.5, 1.0};
  std::size_t n = 400;
  std::size_t m = 500;
  std::uint64_t seed = 1;
  int workers = 0;
  double alpha_lo = 0.25, alpha_hi = 0.75;
  int alpha_points = 9;
  int points_per_delta = 8;
};
VerificationReport near_zero_check(const NearZeroConfig& cfg);

/// Exceedance of the grid supremum over J = [1,2] against power thresholds;
/// least-squares slope over the largest decade with >= 50 exceedances.
struct TailConfig {
  ProcessSpec spec;
  double u_lo = 0.5;
  double u_hi = 512.0;
  int u_points = 31;
  std::size_t n_paths = 20000;
  std::uint64_t seed = 1;
  int workers = 0;
  int time_points = 65;          // fine grid on J
  std::size_t min_exceedances = 50;
};
struct TailEstimate {
  std::vector<double> u;
  std::vector<double> prob;      // nonincreasing exceedance estimates
  double theta = 0.0;            // fitted exponent (-slope)
  double theta_se = 0.0;
  double fit_u_lo = 0.0, fit_u_hi = 0.0;
  bool fit_rejected = false;     // slope steepens: super-polynomial decay
};
VerificationReport tail_exponent(const TailConfig& cfg, TailEstimate* out = nullptr);

/// Deterministic and randomized property checks of the models/empirical/limit
/// modules, aggregated into one report.
VerificationReport property_suite(std::uint64_t seed);

}  // namespace ssq
