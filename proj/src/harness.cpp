#include "ssq/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>

#include "ssq/common.hpp"
#include "ssq/empirical.hpp"
#include "ssq/gauss.hpp"
#include "ssq/limit.hpp"
#include "ssq/marginal.hpp"
#include "ssq/rng.hpp"
#include "ssq/simulate.hpp"
#include "ssq/stats.hpp"

namespace ssq {
namespace {

constexpr double kPi = 3.14159265358979323846;

using Clock = std::chrono::steady_clock;

double elapsed_s(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Runs fn(0..count-1); results must land in preallocated per-index slots so
// the merge order cannot depend on scheduling.
void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& fn) {
  std::size_t w = workers > 0 ? static_cast<std::size_t>(workers)
                              : std::max(1u, std::thread::hardware_concurrency());
  w = std::min(w, count);
  if (w <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(w);
  for (std::size_t t = 0; t < w; ++t) {
    pool.emplace_back([&]() {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          return;
        }
      }
    });
  }
  for (std::thread& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

std::vector<double> model_quantile_table(const MarginalLaw& law, const GridSpec& grid) {
  const std::size_t nt = grid.n_times(), na = grid.n_alphas();
  std::vector<double> tau(nt * na, 0.0);
  std::vector<double> tau1(na);
  for (std::size_t j = 0; j < na; ++j) tau1[j] = law.quantile1(grid.alphas[j]);
  for (std::size_t i = 1; i < nt; ++i) {
    const double scale = std::pow(grid.times[i], law.hurst());
    for (std::size_t j = 0; j < na; ++j) tau[i * na + j] = scale * tau1[j];
  }
  return tau;
}

// m x P matrix (P = times x alphas) of replicated quantile-field values.
std::vector<double> replicate_fields(const ProcessSpec& spec, const GridSpec& grid,
                                     std::size_t n, std::size_t m, std::uint64_t seed,
                                     int workers) {
  const MarginalLaw law(spec);
  const std::vector<double> tau = model_quantile_table(law, grid);
  const std::size_t p = grid.n_times() * grid.n_alphas();
  std::vector<double> out(m * p);
  parallel_for(m, workers, [&](std::size_t rep) {
    const PathEnsemble e = simulate(spec, grid, n, seed, static_cast<std::uint32_t>(rep));
    const QuantileField f = quantile_field_with_tau(e, tau);
    std::copy(f.w.begin(), f.w.end(), out.begin() + rep * p);
  });
  return out;
}

std::vector<double> column_of(const std::vector<double>& mat, std::size_t rows,
                              std::size_t cols, std::size_t col) {
  std::vector<double> out(rows);
  for (std::size_t r = 0; r < rows; ++r) out[r] = mat[r * cols + col];
  return out;
}

bool joint_theory_available(const ProcessSpec& spec, double s, double t) {
  if (spec.family != Family::ITERATED_BM) return true;
  return s == 0.0 || t == 0.0 || s == t;  // boundary and marginal cases only
}

GridSpec grid_from_times(std::vector<double> times, std::vector<double> alphas) {
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  GridSpec g;
  g.times = std::move(times);
  g.T = g.times.back();
  g.alphas = std::move(alphas);
  g.validate();
  return g;
}

}  // namespace

bool VerificationReport::all_pass() const {
  return std::all_of(verdicts.begin(), verdicts.end(),
                     [](const Verdict& v) { return v.pass; });
}

const Estimate* VerificationReport::find_estimate(const nlohmann::json& coords) const {
  for (const Estimate& e : estimates) {
    if (e.coords == coords) return &e;
  }
  return nullptr;
}

const Verdict* VerificationReport::find_verdict(const std::string& check) const {
  for (const Verdict& v : verdicts) {
    if (v.check == check) return &v;
  }
  return nullptr;
}

nlohmann::json VerificationReport::to_json(bool include_wall_time) const {
  nlohmann::json j;
  j["experiment"] = experiment;
  j["config"] = config;
  j["seed"] = seed;
  j["estimates"] = nlohmann::json::array();
  for (const Estimate& e : estimates) {
    j["estimates"].push_back({{"coords", e.coords}, {"value", e.value}, {"se", e.se}});
  }
  j["tests"] = nlohmann::json::array();
  for (const TestStat& t : tests) {
    j["tests"].push_back({{"name", t.name}, {"statistic", t.statistic}, {"p", t.p}});
  }
  j["verdicts"] = nlohmann::json::array();
  for (const Verdict& v : verdicts) {
    j["verdicts"].push_back({{"check", v.check}, {"pass", v.pass}});
  }
  j["version"] = kVersion;
  if (include_wall_time) j["wall_time_s"] = wall_time_s;
  return j;
}

nlohmann::json spec_to_json(const ProcessSpec& spec) {
  nlohmann::json j{{"family", family_name(spec.family)}, {"H", spec.hurst()}};
  switch (spec.family) {
    case Family::FBM: j["r"] = spec.r; break;
    case Family::STABLE:
      j["r"] = spec.r;
      j["c"] = spec.c;
      break;
    case Family::INTEGRATED_BM: j["m"] = spec.m; break;
    default: break;
  }
  return j;
}

nlohmann::json grid_to_json(const GridSpec& grid) {
  return {{"T", grid.T}, {"times", grid.times}, {"alphas", grid.alphas}};
}

VerificationReport mc_quantile_clt(const CltConfig& cfg) {
  const auto t0 = Clock::now();
  cfg.spec.validate();
  cfg.grid.validate();
  if (cfg.n < 100) throw std::invalid_argument("clt-cov needs n >= 100 paths");
  if (cfg.m < 200) throw std::invalid_argument("clt-cov needs m >= 200 replications");

  VerificationReport rep;
  rep.experiment = "CLT_COV";
  rep.seed = cfg.seed;
  rep.config = {{"spec", spec_to_json(cfg.spec)},   {"grid", grid_to_json(cfg.grid)},
                {"n", cfg.n},                       {"m", cfg.m},
                {"diag_rel_tol", cfg.diag_rel_tol}, {"pair_pass_fraction", cfg.pair_pass_fraction}};

  const std::size_t nt = cfg.grid.n_times(), na = cfg.grid.n_alphas();
  const std::size_t p = nt * na;
  const std::vector<double> fields =
      replicate_fields(cfg.spec, cfg.grid, cfg.n, cfg.m, cfg.seed, cfg.workers);

  // Mean field should vanish.
  std::size_t mean_ok = 0, mean_total = 0;
  for (std::size_t i = 0; i < nt; ++i) {
    for (std::size_t j = 0; j < na; ++j) {
      const std::vector<double> col = column_of(fields, cfg.m, p, i * na + j);
      const MeanSe ms = mean_se(col);
      rep.estimates.push_back(
          {{{"stat", "mean"}, {"t", cfg.grid.times[i]}, {"alpha", cfg.grid.alphas[j]}},
           ms.mean,
           ms.se});
      if (cfg.grid.times[i] > 0.0) {
        ++mean_total;
        if (std::abs(ms.mean) <= 3.0 * ms.se) ++mean_ok;
      }
    }
  }

  // Covariances over all unordered grid-point pairs vs. the limit covariance.
  std::size_t pair_ok = 0, pair_total = 0;
  double diag_rel_err = 0.0;
  bool diag_seen = false;
  char name[160];
  for (std::size_t a = 0; a < p; ++a) {
    for (std::size_t b = a; b < p; ++b) {
      const double s = cfg.grid.times[a / na], beta = cfg.grid.alphas[a % na];
      const double t = cfg.grid.times[b / na], alpha = cfg.grid.alphas[b % na];
      const std::vector<double> xs = column_of(fields, cfg.m, p, a);
      const std::vector<double> ys = column_of(fields, cfg.m, p, b);
      const CovEstimate ce = sample_covariance(xs, ys);
      rep.estimates.push_back(
          {{{"stat", "cov"}, {"s", s}, {"beta", beta}, {"t", t}, {"alpha", alpha}},
           ce.value,
           ce.se});
      if (!joint_theory_available(cfg.spec, s, t)) continue;
      const double theory = limit_cov({s, beta}, {t, alpha}, cfg.spec);
      rep.estimates.push_back(
          {{{"stat", "theory"}, {"s", s}, {"beta", beta}, {"t", t}, {"alpha", alpha}},
           theory,
           0.0});
      if (s == 0.0 || t == 0.0) continue;  // exact zeros on both sides
      ++pair_total;
      const double z = (ce.value - theory) / ce.se;
      std::snprintf(name, sizeof name, "z s=%g,beta=%g,t=%g,alpha=%g", s, beta, t, alpha);
      rep.tests.push_back({name, z, 2.0 * norm_cdf(-std::abs(z))});
      if (std::abs(z) <= 3.0) ++pair_ok;
      if (a == b && theory > 0.0) {
        diag_seen = true;
        diag_rel_err = std::max(diag_rel_err, std::abs(ce.value - theory) / theory);
      }
    }
  }

  rep.verdicts.push_back({"mean_zero_fraction_within_3se",
                          mean_total == 0 || static_cast<double>(mean_ok) / mean_total >=
                                                 cfg.pair_pass_fraction});
  rep.verdicts.push_back(
      {"cov_pairs_within_3se",
       pair_total == 0 ||
           static_cast<double>(pair_ok) / pair_total >= cfg.pair_pass_fraction});
  if (diag_seen) {
    rep.estimates.push_back({{{"stat", "max_diag_rel_error"}}, diag_rel_err, 0.0});
    rep.verdicts.push_back({"diag_rel_error_within_tol", diag_rel_err <= cfg.diag_rel_tol});
  }
  rep.wall_time_s = elapsed_s(t0);
  return rep;
}

VerificationReport mc_normality(const NormalityConfig& cfg) {
  const auto t0 = Clock::now();
  cfg.spec.validate();
  if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) {
    throw std::invalid_argument("level must lie inside (0,1)");
  }
  VerificationReport rep;
  rep.experiment = "CLT_NORMALITY";
  rep.seed = cfg.seed;
  rep.config = {{"spec", spec_to_json(cfg.spec)}, {"t", cfg.t},       {"alpha", cfg.alpha},
                {"n", cfg.n},                     {"m", cfg.m},       {"p_min", cfg.p_min}};

  if (cfg.t == 0.0) {
    // W_n(0, alpha) is identically zero; nothing to standardize.
    rep.verdicts.push_back({"boundary t=0: skipped", true});
    rep.wall_time_s = elapsed_s(t0);
    return rep;
  }

  const GridSpec grid = grid_from_times({0.0, cfg.t}, {cfg.alpha});
  const std::vector<double> fields =
      replicate_fields(cfg.spec, grid, cfg.n, cfg.m, cfg.seed, cfg.workers);
  std::vector<double> w = column_of(fields, cfg.m, 2, 1);

  const double sd_theory = std::sqrt(limit_cov({cfg.t, cfg.alpha}, {cfg.t, cfg.alpha}, cfg.spec));
  for (double& v : w) v /= sd_theory;
  const MeanSe ms = mean_se(w);
  rep.estimates.push_back({{{"stat", "standardized_mean"}}, ms.mean, ms.se});
  rep.estimates.push_back(
      {{{"stat", "standardized_sd"}}, std::sqrt(sample_variance(w)), 0.0});
  const KsResult ks = ks_test(w, [](double x) { return norm_cdf(x); });
  rep.tests.push_back({"ks_standard_normal", ks.statistic, ks.p});
  rep.verdicts.push_back({"ks_p_above_min", ks.p >= cfg.p_min});
  rep.wall_time_s = elapsed_s(t0);
  return rep;
}

VerificationReport scalability_check(const ScalabilityConfig& cfg) {
  const auto t0 = Clock::now();
  cfg.spec.validate();
  if (!(cfg.t0 > 0.0)) throw std::invalid_argument("t0 must be positive");
  for (double c : cfg.c_factors) {
    if (!(c > 0.0)) throw std::invalid_argument("scaling factors must be positive");
  }
  VerificationReport rep;
  rep.experiment = "SCALABILITY";
  rep.seed = cfg.seed;
  rep.config = {{"spec", spec_to_json(cfg.spec)}, {"t0", cfg.t0},
                {"alpha0", cfg.alpha0},           {"c_factors", cfg.c_factors},
                {"n", cfg.n},                     {"m", cfg.m},
                {"p_min", cfg.p_min}};

  std::vector<double> times{0.0, cfg.t0};
  for (double c : cfg.c_factors) times.push_back(c * cfg.t0);
  const GridSpec grid = grid_from_times(times, {cfg.alpha0});
  const std::size_t p = grid.n_times();
  const std::vector<double> fields =
      replicate_fields(cfg.spec, grid, cfg.n, cfg.m, cfg.seed, cfg.workers);

  const auto index_of = [&grid](double t) {
    for (std::size_t i = 0; i < grid.times.size(); ++i) {
      if (grid.times[i] == t) return i;
    }
    throw std::logic_error("time missing from grid");
  };
  const std::vector<double> base = column_of(fields, cfg.m, p, index_of(cfg.t0));
  const double h = cfg.spec.hurst();
  char name[96];
  for (double c : cfg.c_factors) {
    const std::vector<double> at_ct = column_of(fields, cfg.m, p, index_of(c * cfg.t0));
    std::vector<double> scaled = base;
    for (double& v : scaled) v *= std::pow(c, h);
    const KsResult ks = ks_two_sample(at_ct, scaled);
    std::snprintf(name, sizeof name, "ks c=%g", c);
    rep.tests.push_back({name, ks.statistic, ks.p});
    std::snprintf(name, sizeof name, "scalable_at_c=%g", c);
    rep.verdicts.push_back({name, ks.p >= cfg.p_min});
  }
  rep.wall_time_s = elapsed_s(t0);
  return rep;
}

VerificationReport lemma1_bound_check(const Lemma1Config& cfg) {
  const auto t0 = Clock::now();
  cfg.spec.validate();
  if (!(cfg.delta > 0.0 && cfg.delta <= 1.0)) {
    throw std::invalid_argument("delta must lie in (0,1]");
  }
  if (!(cfg.q > 0.0 && cfg.q <= 1.0)) throw std::invalid_argument("q must lie in (0,1]");
  if (!(cfg.alpha_star > 0.5 && cfg.alpha_star < 1.0)) {
    throw std::invalid_argument("alpha_star must lie in (1/2,1)");
  }

  VerificationReport rep;
  rep.experiment = "LEMMA1_BOUND";
  rep.seed = cfg.seed;
  rep.config = {{"spec", spec_to_json(cfg.spec)},
                {"delta", cfg.delta},
                {"q", cfg.q},
                {"n", cfg.n},
                {"m", cfg.m},
                {"alpha_star", cfg.alpha_star},
                {"j_time_points", cfg.j_time_points},
                {"alpha_points", cfg.alpha_points},
                {"dyadic_levels", cfg.dyadic_levels}};

  // J grid on [1,2]; the (0,delta] grid is made of dyadically scaled copies
  // of it, so both suprema are resolved at the same relative resolution.
  std::vector<double> j_grid(cfg.j_time_points);
  for (int i = 0; i < cfg.j_time_points; ++i) {
    j_grid[i] = 1.0 + static_cast<double>(i) / (cfg.j_time_points - 1);
  }
  std::vector<double> times{0.0};
  times.insert(times.end(), j_grid.begin(), j_grid.end());
  for (int level = 1; level <= cfg.dyadic_levels; ++level) {
    const double scale = cfg.delta * std::pow(2.0, -level);
    for (double g : j_grid) times.push_back(scale * g);
  }
  std::vector<double> alphas(cfg.alpha_points);
  for (int i = 0; i < cfg.alpha_points; ++i) {
    alphas[i] = (1.0 - cfg.alpha_star) +
                (2.0 * cfg.alpha_star - 1.0) * static_cast<double>(i) / (cfg.alpha_points - 1);
  }
  const GridSpec grid = grid_from_times(times, alphas);

  const std::size_t nt = grid.n_times(), na = grid.n_alphas();
  const std::vector<double> fields =
      replicate_fields(cfg.spec, grid, cfg.n, cfg.m, cfg.seed, cfg.workers);

  std::vector<double> lhs(cfg.m, 0.0), rhs(cfg.m, 0.0);
  for (std::size_t r = 0; r < cfg.m; ++r) {
    for (std::size_t i = 0; i < nt; ++i) {
      const double t = grid.times[i];
      const bool in_delta = t > 0.0 && t <= cfg.delta;
      const bool in_j = t >= 1.0 && t <= 2.0;
      if (!in_delta && !in_j) continue;
      for (std::size_t j = 0; j < na; ++j) {
        const double v = std::pow(std::abs(fields[r * nt * na + i * na + j]), cfg.q);
        if (in_delta) lhs[r] = std::max(lhs[r], v);
        if (in_j) rhs[r] = std::max(rhs[r], v);
      }
    }
  }
  const MeanSe ml = mean_se(lhs);
  const MeanSe mr = mean_se(rhs);
  const double hq = cfg.spec.hurst() * cfg.q;
  const double constant = std::pow(cfg.delta, hq) / (1.0 - std::pow(2.0, -hq));
  const double rel_se =
      std::sqrt(std::pow(ml.se / ml.mean, 2) + std::pow(mr.se / mr.mean, 2));

  rep.estimates.push_back({{{"stat", "lhs_sup_moment"}}, ml.mean, ml.se});
  rep.estimates.push_back({{{"stat", "rhs_sup_moment"}}, mr.mean, mr.se});
  rep.estimates.push_back({{{"stat", "scaling_constant"}}, constant, 0.0});
  rep.estimates.push_back(
      {{{"stat", "bound_ratio"}}, ml.mean / (constant * mr.mean), rel_se});
  rep.verdicts.push_back(
      {"lemma1_bound", ml.mean <= constant * mr.mean * (1.0 + 3.0 * rel_se)});
  rep.wall_time_s = elapsed_s(t0);
  return rep;
}

VerificationReport near_zero_check(const NearZeroConfig& cfg) {
  const auto t0 = Clock::now();
  cfg.spec.validate();
  if (cfg.deltas.empty() || cfg.epsilons.empty()) {
    throw std::invalid_argument("need at least one delta and one epsilon");
  }
  std::vector<double> deltas = cfg.deltas;
  std::sort(deltas.begin(), deltas.end(), std::greater<>());

  VerificationReport rep;
  rep.experiment = "NEAR_ZERO";
  rep.seed = cfg.seed;
  rep.config = {{"spec", spec_to_json(cfg.spec)}, {"deltas", deltas},
                {"epsilons", cfg.epsilons},       {"n", cfg.n},
                {"m", cfg.m},                     {"alpha_lo", cfg.alpha_lo},
                {"alpha_hi", cfg.alpha_hi},       {"alpha_points", cfg.alpha_points},
                {"points_per_delta", cfg.points_per_delta}};

  std::vector<double> times{0.0};
  for (double d : deltas) {
    for (int k = 1; k <= cfg.points_per_delta; ++k) {
      times.push_back(d * static_cast<double>(k) / cfg.points_per_delta);
    }
  }
  std::vector<double> alphas(cfg.alpha_points);
  for (int i = 0; i < cfg.alpha_points; ++i) {
    alphas[i] = cfg.alpha_lo + (cfg.alpha_hi - cfg.alpha_lo) * static_cast<double>(i) /
                                   std::max(1, cfg.alpha_points - 1);
  }
  const GridSpec grid = grid_from_times(times, alphas);
  const std::size_t nt = grid.n_times(), na = grid.n_alphas();
  const std::vector<double> fields =
      replicate_fields(cfg.spec, grid, cfg.n, cfg.m, cfg.seed, cfg.workers);

  // sup_{t <= delta} per replication, then exceedance rates per epsilon.
  char name[96];
  bool monotone = true, below = false;
  std::vector<double> prev_p(cfg.epsilons.size(), 1.0), prev_se(cfg.epsilons.size(), 0.0);
  for (std::size_t di = 0; di < deltas.size(); ++di) {
    std::vector<double> sup(cfg.m, 0.0);
    for (std::size_t r = 0; r < cfg.m; ++r) {
      for (std::size_t i = 1; i < nt; ++i) {
        if (grid.times[i] > deltas[di]) break;
        for (std::size_t j = 0; j < na; ++j) {
          sup[r] = std::max(sup[r], std::abs(fields[r * nt * na + i * na + j]));
        }
      }
    }
    for (std::size_t ei = 0; ei < cfg.epsilons.size(); ++ei) {
      const double eps = cfg.epsilons[ei];
      std::size_t count = 0;
      for (double s : sup) count += (s > eps);
      const double p_hat = static_cast<double>(count) / static_cast<double>(cfg.m);
      const double se = std::sqrt(p_hat * (1.0 - p_hat) / static_cast<double>(cfg.m));
      rep.estimates.push_back(
          {{{"stat", "exceedance"}, {"delta", deltas[di]}, {"eps", eps}}, p_hat, se});
      if (di > 0 &&
          p_hat > prev_p[ei] + 2.0 * std::sqrt(se * se + prev_se[ei] * prev_se[ei])) {
        monotone = false;
      }
      prev_p[ei] = p_hat;
      prev_se[ei] = se;
      if (di + 1 == deltas.size() && p_hat < eps) below = true;
    }
  }
  rep.verdicts.push_back({"exceedance_nonincreasing_in_delta", monotone});
  std::snprintf(name, sizeof name, "exceedance_below_eps_at_delta=%g", deltas.back());
  rep.verdicts.push_back({name, below});
  rep.wall_time_s = elapsed_s(t0);
  return rep;
}

VerificationReport tail_exponent(const TailConfig& cfg, TailEstimate* out) {
  const auto t0 = Clock::now();
  cfg.spec.validate();
  if (!(cfg.u_hi > cfg.u_lo * 10.0)) {
    throw std::invalid_argument("threshold grid must span at least one decade");
  }
  if (cfg.u_points < 12) throw std::invalid_argument("need at least 12 thresholds");

  VerificationReport rep;
  rep.experiment = "TAIL_EXPONENT";
  rep.seed = cfg.seed;
  rep.config = {{"spec", spec_to_json(cfg.spec)}, {"u_lo", cfg.u_lo},
                {"u_hi", cfg.u_hi},               {"u_points", cfg.u_points},
                {"n_paths", cfg.n_paths},         {"time_points", cfg.time_points},
                {"min_exceedances", cfg.min_exceedances}};

  // Fine grid over J = [1,2]; the leading [0,1] interval carries the paths in.
  std::vector<double> times{0.0};
  for (int i = 0; i < cfg.time_points; ++i) {
    times.push_back(1.0 + static_cast<double>(i) / (cfg.time_points - 1));
  }
  const GridSpec grid = grid_from_times(times, {0.5});
  const PathEnsemble e = simulate(cfg.spec, grid, cfg.n_paths, cfg.seed);

  std::vector<double> sup(cfg.n_paths, 0.0);
  for (std::size_t path = 0; path < cfg.n_paths; ++path) {
    for (std::size_t i = 1; i < grid.n_times(); ++i) {
      sup[path] = std::max(sup[path], std::abs(e.at(path, i)));
    }
  }

  TailEstimate est;
  est.u.resize(cfg.u_points);
  est.prob.resize(cfg.u_points);
  std::vector<std::size_t> counts(cfg.u_points);
  const double log_lo = std::log(cfg.u_lo), log_hi = std::log(cfg.u_hi);
  for (int i = 0; i < cfg.u_points; ++i) {
    est.u[i] = std::exp(log_lo + (log_hi - log_lo) * i / (cfg.u_points - 1));
    std::size_t count = 0;
    for (double s : sup) count += (s > est.u[i]);
    counts[i] = count;
    est.prob[i] = static_cast<double>(count) / static_cast<double>(cfg.n_paths);
    const double se = std::sqrt(est.prob[i] * (1.0 - est.prob[i]) /
                                static_cast<double>(cfg.n_paths));
    rep.estimates.push_back({{{"stat", "exceedance"}, {"u", est.u[i]}}, est.prob[i], se});
  }

  // Largest decade [u*/10, u*] with >= min_exceedances at its top.
  int top = -1;
  for (int i = cfg.u_points - 1; i >= 0; --i) {
    if (counts[i] >= cfg.min_exceedances) {
      top = i;
      break;
    }
  }
  if (top < 0) {
    throw numerical_error(
        "tail_exponent: no threshold reached the exceedance floor; widen u_grid downward");
  }
  est.fit_u_hi = est.u[top];
  est.fit_u_lo = est.u[top] / 10.0;
  std::vector<double> lx, ly, lx_lo, ly_lo, lx_hi, ly_hi;
  const double mid = est.u[top] / std::sqrt(10.0);
  for (int i = 0; i <= top; ++i) {
    if (est.u[i] < est.fit_u_lo || counts[i] == 0) continue;
    lx.push_back(std::log(est.u[i]));
    ly.push_back(std::log(est.prob[i]));
    (est.u[i] < mid ? lx_lo : lx_hi).push_back(std::log(est.u[i]));
    (est.u[i] < mid ? ly_lo : ly_hi).push_back(std::log(est.prob[i]));
  }
  if (lx.size() < 6) {
    throw numerical_error("tail_exponent: too few usable thresholds in the fitted decade; "
                          "widen or refine u_grid");
  }
  const SlopeFit fit = least_squares(lx, ly);
  est.theta = -fit.slope;
  est.theta_se = fit.slope_se;
  if (lx_lo.size() >= 3 && lx_hi.size() >= 3) {
    const double slope_lo = std::abs(least_squares(lx_lo, ly_lo).slope);
    const double slope_hi = std::abs(least_squares(lx_hi, ly_hi).slope);
    est.fit_rejected = slope_hi > 1.25 * slope_lo;
  }

  rep.estimates.push_back({{{"stat", "theta_hat"}}, est.theta, est.theta_se});
  rep.estimates.push_back({{{"stat", "fit_u_lo"}}, est.fit_u_lo, 0.0});
  rep.estimates.push_back({{{"stat", "fit_u_hi"}}, est.fit_u_hi, 0.0});
  rep.tests.push_back({"power_fit_rejected", est.fit_rejected ? 1.0 : 0.0, 0.0});

  bool nonincreasing = true;
  for (int i = 1; i < cfg.u_points; ++i) {
    if (est.prob[i] > est.prob[i - 1]) nonincreasing = false;
  }
  rep.verdicts.push_back({"exceedance_nonincreasing_in_u", nonincreasing});
  if (cfg.spec.family == Family::STABLE) {
    rep.verdicts.push_back({"theta_matches_stable_index",
                            !est.fit_rejected && std::abs(est.theta - cfg.spec.r) <=
                                                     0.15 * cfg.spec.r});
  } else {
    // Gaussian-type input: power fit must steepen, confirming the polynomial
    // tail bound holds a fortiori.
    rep.verdicts.push_back({"tail_superpolynomial", est.fit_rejected});
  }
  if (out) *out = est;
  rep.wall_time_s = elapsed_s(t0);
  return rep;
}

// ---------------------------------------------------------------------------
// Deterministic / randomized property checks.

namespace {

std::vector<double> property_normals(std::uint64_t seed, std::uint32_t rep_key, std::size_t n,
                                     std::uint32_t stream) {
  std::vector<double> out(n);
  const PathRng rng(seed, rep_key, 0xABCDu);
  for (std::size_t i = 0; i + 1 < n; i += 2) {
    const auto [a, b] = rng.normal2(static_cast<std::uint32_t>(i / 2), stream);
    out[i] = a;
    out[i + 1] = b;
  }
  if (n % 2 == 1) out[n - 1] = rng.normal(static_cast<std::uint32_t>(n / 2), stream);
  return out;
}

double minmax_order_stat_bruteforce(const std::vector<double>& x, std::size_t k) {
  const std::size_t n = x.size();
  double best = HUGE_VAL;
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    std::size_t bits = 0;
    for (std::size_t i = 0; i < n; ++i) bits += ((mask >> i) & 1u);
    if (bits < k) continue;
    double mx = -HUGE_VAL;
    for (std::size_t i = 0; i < n; ++i) {
      if ((mask >> i) & 1u) mx = std::max(mx, x[i]);
    }
    best = std::min(best, mx);
  }
  return best;
}

}  // namespace

VerificationReport property_suite(std::uint64_t seed) {
  const auto t0 = Clock::now();
  VerificationReport rep;
  rep.experiment = "PROPERTY_SUITE";
  rep.seed = seed;
  rep.config = {{"seed", seed}};

  // Order-statistic contraction on random pairs.
  {
    std::size_t violations = 0;
    const std::size_t cases = 10000;
    for (std::size_t k = 0; k < cases; ++k) {
      const PathRng rng(seed, static_cast<std::uint32_t>(k), 1);
      const std::size_t n = 1 + (philox4x32(seed, static_cast<std::uint32_t>(k), 0, 0, 9)[0] % 64);
      std::vector<double> x = property_normals(seed, static_cast<std::uint32_t>(k), n, 2);
      std::vector<double> y = property_normals(seed, static_cast<std::uint32_t>(k), n, 3);
      const std::vector<double> sx = order_statistics(x);
      const std::vector<double> sy = order_statistics(y);
      double lhs = 0.0, rhs = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        lhs = std::max(lhs, std::abs(sx[i] - sy[i]));
        rhs = std::max(rhs, std::abs(x[i] - y[i]));
      }
      if (lhs > rhs) ++violations;
    }
    rep.estimates.push_back({{{"stat", "contraction_violations"}}, double(violations), 0.0});
    rep.verdicts.push_back({"order_statistic_contraction", violations == 0});
  }

  // Exhaustive min-max identity on small integer samples.
  {
    std::size_t violations = 0;
    for (std::size_t n = 1; n <= 6; ++n) {
      for (std::uint32_t trial = 0; trial < 40; ++trial) {
        std::vector<double> x(n);
        for (std::size_t i = 0; i < n; ++i) {
          x[i] = static_cast<double>(
                     philox4x32(seed, trial, static_cast<std::uint32_t>(n),
                                static_cast<std::uint32_t>(i), 11)[0] % 11) -
                 5.0;
        }
        const std::vector<double> sorted = order_statistics(x);
        for (std::size_t k = 1; k <= n; ++k) {
          if (sorted[k - 1] != minmax_order_stat_bruteforce(x, k)) ++violations;
        }
      }
    }
    rep.estimates.push_back({{{"stat", "minmax_violations"}}, double(violations), 0.0});
    rep.verdicts.push_back({"order_statistic_minmax_identity", violations == 0});
  }

  // Quantile reflection across conventions.
  {
    std::size_t violations = 0;
    for (std::uint32_t trial = 0; trial < 200; ++trial) {
      const std::size_t n =
          1 + (philox4x32(seed, trial, 1, 0, 12)[0] % 40);
      std::vector<double> x = property_normals(seed, trial + 50000u, n, 4);
      for (int k = 1; k <= 9; ++k) {
        if (!reflected_quantile_check(x, k / 10.0)) ++violations;
      }
    }
    rep.estimates.push_back({{{"stat", "reflection_violations"}}, double(violations), 0.0});
    rep.verdicts.push_back({"quantile_reflection", violations == 0});
  }

  // ECDF / empirical-quantile inverse consistency near the jump levels.
  {
    std::size_t violations = 0;
    for (std::uint32_t trial = 0; trial < 50; ++trial) {
      const std::size_t n = 1 + (philox4x32(seed, trial, 2, 0, 13)[0] % 30);
      const std::vector<double> x = property_normals(seed, trial + 90000u, n, 5);
      for (std::size_t k = 1; k <= n; ++k) {
        for (double da : {-1.0 / (3.0 * n), 1.0 / (3.0 * n)}) {
          const double alpha = static_cast<double>(k) / n + da;
          if (!(alpha > 0.0 && alpha < 1.0)) continue;
          const double q = empirical_quantile(x, alpha);
          if (!(ecdf(x, q) >= alpha)) ++violations;
          if (!(ecdf(x, q - 1e-9) < alpha)) ++violations;
        }
      }
    }
    rep.estimates.push_back({{{"stat", "inverse_violations"}}, double(violations), 0.0});
    rep.verdicts.push_back({"ecdf_quantile_inverse_consistency", violations == 0});
  }

  // Scaling identities of the marginal laws.
  {
    bool exact_ok = true, roundtrip_ok = true;
    for (const ProcessSpec& spec :
         {ProcessSpec::bm(), ProcessSpec::fbm(1.5), ProcessSpec::stable(1.0, 1.0),
          ProcessSpec::integrated_bm(1), ProcessSpec::iterated_bm()}) {
      const MarginalLaw law(spec);
      for (double t : {0.25, 1.0, 3.0}) {
        for (int k = 1; k <= 9; ++k) {
          const double alpha = k / 10.0;
          if (law.quantile(t, alpha) != std::pow(t, law.hurst()) * law.quantile1(alpha)) {
            exact_ok = false;
          }
        }
      }
      for (int k = 1; k <= 9; ++k) {
        const double alpha = k / 10.0;
        if (std::abs(law.cdf1(law.quantile1(alpha)) - alpha) > 1e-8) roundtrip_ok = false;
      }
    }
    rep.verdicts.push_back({"quantile_scaling_exact", exact_ok});
    rep.verdicts.push_back({"quantile_cdf_roundtrip_1e-8", roundtrip_ok});
  }

  // Stable density shape: symmetric-unimodal on [0,20], cdf reflection.
  {
    bool monotone = true, reflect = true;
    for (double r : {0.7, 1.0, 1.5}) {
      const StableLaw law(r, 1.0);
      double prev = law.density(0.0);
      for (int k = 1; k <= 40; ++k) {
        const double cur = law.density(0.5 * k);
        if (cur > prev + 1e-12) monotone = false;
        prev = cur;
      }
      for (double x : {0.1, 1.0, 10.0}) {
        if (std::abs(law.cdf(x) + law.cdf(-x) - 1.0) > 1e-9) reflect = false;
      }
    }
    rep.verdicts.push_back({"stable_density_nonincreasing", monotone});
    rep.verdicts.push_back({"stable_cdf_reflection_1e-9", reflect});
  }

  // fbm Gram matrices positive semidefinite on random grids.
  {
    bool psd = true;
    for (double r : {0.5, 1.0, 1.5}) {
      const std::size_t k = 32;
      std::vector<double> times;
      for (std::size_t i = 0; i < k; ++i) {
        times.push_back(3.0 * (static_cast<double>(philox4x32(seed, 7, static_cast<std::uint32_t>(i),
                                                              0, 14)[0]) +
                               1.0) /
                        4294967296.0);
      }
      std::sort(times.begin(), times.end());
      std::vector<double> gram(k * k);
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
          gram[i * k + j] = 0.5 * (fbm_covariance(times[i], times[j], r) +
                                   fbm_covariance(times[j], times[i], r));
        }
      }
      if (min_eigenvalue_symmetric(gram, k) < -1e-10) psd = false;
    }
    rep.verdicts.push_back({"fbm_gram_psd", psd});
  }

  // Dual-route fbm median covariance across the (s,t,r) grid.
  {
    double max_gap = 0.0;
    for (double r : {0.5, 1.0, 1.5}) {
      for (double s : {0.25, 0.5, 1.0, 2.0}) {
        for (double t : {0.25, 0.5, 1.0, 2.0}) {
          const double sig = std::pow(s * t, 0.5 * r);
          const double rho = std::min(fbm_covariance(s, t, r) / sig, 1.0);
          const double arcsin_route = sig * std::asin(rho);
          const double orthant_route =
              2.0 * kPi * sig * (bivariate_normal_cdf(0.0, 0.0, rho) - 0.25);
          max_gap = std::max(max_gap, std::abs(arcsin_route - orthant_route));
        }
      }
    }
    rep.estimates.push_back({{{"stat", "fbm_dual_route_max_gap"}}, max_gap, 0.0});
    rep.verdicts.push_back({"fbm_dual_route_agreement_1e-6", max_gap <= 1e-6});
  }

  // Stable dual route: density-quadrature route vs Gamma closed form.
  {
    double max_gap = 0.0;
    for (double r : {0.8, 1.0, 1.3}) {
      for (auto [s, t] : {std::pair{1.0, 2.0}, std::pair{0.5, 1.0}}) {
        const double joint = stable_joint_cdf(s, t, 0.0, 0.0, r, 1.0);
        const double route_a = limit_cov({s, 0.5}, {t, 0.5}, ProcessSpec::stable(r, 1.0));
        const double norm_integral = 2.0 * std::tgamma(1.0 + 1.0 / r);
        const double route_b = 4.0 * kPi * kPi * std::pow(s * t, 1.0 / r) *
                               (joint - 0.25) / (norm_integral * norm_integral);
        max_gap = std::max(max_gap, std::abs(route_a - route_b));
      }
    }
    rep.estimates.push_back({{{"stat", "stable_dual_route_max_gap"}}, max_gap, 0.0});
    rep.verdicts.push_back({"stable_dual_route_agreement_1e-6", max_gap <= 1e-6});
  }

  // W_n(0,.) identically zero across the families.
  {
    bool zeros = true;
    GridSpec grid;
    grid.T = 1.0;
    grid.times = {0.0, 0.5, 1.0};
    grid.alphas = {0.3, 0.5, 0.7};
    for (const ProcessSpec& spec :
         {ProcessSpec::bm(), ProcessSpec::fbm(0.8), ProcessSpec::stable(1.2, 1.0),
          ProcessSpec::integrated_bm(1), ProcessSpec::iterated_bm()}) {
      const PathEnsemble e = simulate(spec, grid, 16, seed);
      const QuantileField f = quantile_field(e, grid, spec);
      for (std::size_t j = 0; j < grid.n_alphas(); ++j) {
        if (f.at(0, j) != 0.0) zeros = false;
      }
    }
    rep.verdicts.push_back({"field_zero_at_origin", zeros});
  }

  rep.wall_time_s = elapsed_s(t0);
  return rep;
}

}  // namespace ssq
