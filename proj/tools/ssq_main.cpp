// ssq command-line front end: simulation, limit-covariance tables, and the
// Monte Carlo verification experiments.
//
// Exit codes: 0 ok / all checks pass, 1 verification failure, 2 usage or
// validation error, 3 numerical failure (quadrature, factorization).

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ssq/common.hpp"
#include "ssq/empirical.hpp"
#include "ssq/harness.hpp"
#include "ssq/io.hpp"
#include "ssq/limit.hpp"
#include "ssq/marginal.hpp"
#include "ssq/process.hpp"
#include "ssq/simulate.hpp"

namespace {

using namespace ssq;

struct ProcessOpts {
  std::string family = "bm";
  double r = 1.0;
  double c = 1.0;
  int m = 1;

  ProcessSpec build() const {
    ProcessSpec spec;
    spec.family = family_from_name(family);
    spec.r = r;
    spec.c = c;
    spec.m = m;
    spec.validate();
    return spec;
  }
};

struct GridOpts {
  double T = 2.0;
  int time_points = 33;
  double alpha_lo = 0.25, alpha_hi = 0.75;
  int alpha_points = 17;
  std::vector<double> times;   // explicit override
  std::vector<double> alphas;  // explicit override

  GridSpec build() const {
    if (!times.empty() || !alphas.empty()) {
      GridSpec g = GridSpec::uniform(T, time_points, alpha_lo, alpha_hi, alpha_points);
      if (!times.empty()) {
        g.times = times;
        g.T = times.back();
      }
      if (!alphas.empty()) g.alphas = alphas;
      g.validate();
      return g;
    }
    return GridSpec::uniform(T, time_points, alpha_lo, alpha_hi, alpha_points);
  }
};

void add_process_options(CLI::App* cmd, ProcessOpts& p) {
  cmd->add_option("--family", p.family,
                  "process family: fbm|stable|bm|integrated_bm|iterated_bm")
      ->capture_default_str();
  cmd->add_option("--r", p.r, "fbm/stable index, strictly inside (0,2)")
      ->capture_default_str();
  cmd->add_option("--c", p.c, "stable scale in exp{-c t |u|^r}")->capture_default_str();
  cmd->add_option("--m", p.m, "integration order for integrated_bm")->capture_default_str();
}

void add_grid_options(CLI::App* cmd, GridOpts& g, const std::string& default_times = "",
                      const std::string& default_alphas = "") {
  cmd->add_option("--T", g.T, "time horizon")->capture_default_str();
  cmd->add_option("--time-points", g.time_points, "uniform time grid size (including 0)")
      ->capture_default_str();
  cmd->add_option("--alpha-lo", g.alpha_lo, "lowest quantile level")->capture_default_str();
  cmd->add_option("--alpha-hi", g.alpha_hi, "highest quantile level")->capture_default_str();
  cmd->add_option("--alpha-points", g.alpha_points, "uniform level grid size")
      ->capture_default_str();
  cmd->add_option("--times", g.times,
                  "explicit comma-separated times (must start at 0)" +
                      (default_times.empty() ? std::string()
                                             : " [default " + default_times + "]"))
      ->delimiter(',');
  cmd->add_option("--alphas", g.alphas,
                  "explicit comma-separated levels inside (0,1)" +
                      (default_alphas.empty() ? std::string()
                                              : " [default " + default_alphas + "]"))
      ->delimiter(',');
}

nlohmann::json explain_common(const ProcessSpec& spec, std::uint64_t seed,
                              const std::string& out_dir) {
  return {{"spec", spec_to_json(spec)}, {"seed", seed}, {"out", out_dir},
          {"version", kVersion}};
}

int finish_report(const VerificationReport& report, const std::filesystem::path& out_dir,
                  bool explain) {
  if (explain) std::cout << report.config.dump(2) << "\n";
  write_report(out_dir, report);
  for (const Verdict& v : report.verdicts) {
    std::cout << (v.pass ? "[pass] " : "[FAIL] ") << v.check << "\n";
  }
  std::cout << (report.all_pass() ? "OK" : "VERIFICATION FAILED") << " ("
            << report.experiment << ", seed=" << report.seed << ", "
            << report.wall_time_s << "s)\n";
  return report.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ssq: empirical quantile processes of self-similar inputs"};
  app.set_version_flag("--version", std::string(kVersion));
  app.set_config("--config", "", "flat key=value config file; flags override");
  app.fallthrough();
  app.require_subcommand(1);

  std::string out_dir = ".";
  std::uint64_t seed = 1;
  int workers = 0;
  bool explain = false;
  app.add_option("--out", out_dir, "output directory")
      ->envname("SSQ_OUT_DIR")
      ->capture_default_str();
  app.add_option("--seed", seed, "64-bit master seed")->capture_default_str();
  app.add_option("--workers", workers, "worker threads (0: hardware)")->capture_default_str();
  app.add_flag("--explain", explain, "print the fully resolved config");

  // --- simulate ------------------------------------------------------------
  auto* sim = app.add_subcommand("simulate", "write a path ensemble CSV + JSON sidecar");
  ProcessOpts sim_proc;
  GridOpts sim_grid;
  std::size_t sim_paths = 100;
  add_process_options(sim, sim_proc);
  add_grid_options(sim, sim_grid);
  sim->add_option("--paths", sim_paths, "number of sample paths")->capture_default_str();

  // --- quantile-field --------------------------------------------------------
  auto* qf = app.add_subcommand("quantile-field",
                                "write replicated quantile fluctuation fields");
  ProcessOpts qf_proc;
  GridOpts qf_grid;
  std::size_t qf_paths = 400, qf_reps = 10;
  add_process_options(qf, qf_proc);
  add_grid_options(qf, qf_grid);
  qf->add_option("--paths", qf_paths, "paths per replication")->capture_default_str();
  qf->add_option("--reps", qf_reps, "replications")->capture_default_str();

  // --- limit-cov -------------------------------------------------------------
  auto* lc = app.add_subcommand("limit-cov", "tabulate the limiting covariance");
  ProcessOpts lc_proc;
  GridOpts lc_grid;
  lc_grid.times = {0.0, 0.5, 1.0, 2.0};
  lc_grid.alphas = {0.5};
  add_process_options(lc, lc_proc);
  add_grid_options(lc, lc_grid, "0,0.5,1,2", "0.5");

  // --- verify ----------------------------------------------------------------
  auto* verify = app.add_subcommand("verify", "run a Monte Carlo verification experiment");
  verify->require_subcommand(1);
  verify->fallthrough();

  auto* v_clt = verify->add_subcommand("clt-cov", "replicated fields vs limit covariance");
  ProcessOpts clt_proc;
  GridOpts clt_grid;
  clt_grid.times = {0.0, 0.5, 1.0, 2.0};
  clt_grid.alphas = {0.25, 0.5, 0.75};
  CltConfig clt_cfg;
  add_process_options(v_clt, clt_proc);
  add_grid_options(v_clt, clt_grid, "0,0.5,1,2", "0.25,0.5,0.75");
  v_clt->add_option("--n", clt_cfg.n, "paths per replication")->capture_default_str();
  v_clt->add_option("--reps", clt_cfg.m, "replications")->capture_default_str();
  v_clt->add_option("--diag-tol", clt_cfg.diag_rel_tol, "max diagonal relative error")
      ->capture_default_str();
  v_clt->add_option("--pair-frac", clt_cfg.pair_pass_fraction,
                    "required fraction of pairs within 3 se")
      ->capture_default_str();

  auto* v_norm = verify->add_subcommand("normality", "KS of standardized W_n(t,alpha)");
  ProcessOpts norm_proc;
  NormalityConfig norm_cfg;
  add_process_options(v_norm, norm_proc);
  v_norm->add_option("--t", norm_cfg.t, "time point")->capture_default_str();
  v_norm->add_option("--alpha", norm_cfg.alpha, "quantile level")->capture_default_str();
  v_norm->add_option("--n", norm_cfg.n, "paths per replication")->capture_default_str();
  v_norm->add_option("--reps", norm_cfg.m, "replications")->capture_default_str();
  v_norm->add_option("--p-min", norm_cfg.p_min, "KS p-value floor")->capture_default_str();

  auto* v_scal = verify->add_subcommand("scalability", "two-sample KS of the scaled field");
  ProcessOpts scal_proc;
  ScalabilityConfig scal_cfg;
  add_process_options(v_scal, scal_proc);
  v_scal->add_option("--t0", scal_cfg.t0, "base time")->capture_default_str();
  v_scal->add_option("--alpha0", scal_cfg.alpha0, "level")->capture_default_str();
  v_scal->add_option("--factors", scal_cfg.c_factors, "scaling factors")
      ->delimiter(',')
      ->capture_default_str();
  v_scal->add_option("--n", scal_cfg.n, "paths per replication")->capture_default_str();
  v_scal->add_option("--reps", scal_cfg.m, "replications")->capture_default_str();
  v_scal->add_option("--p-min", scal_cfg.p_min, "KS p-value floor")->capture_default_str();

  auto* v_lem = verify->add_subcommand("lemma1", "scaling moment bound over (0,delta]");
  ProcessOpts lem_proc;
  Lemma1Config lem_cfg;
  add_process_options(v_lem, lem_proc);
  v_lem->add_option("--delta", lem_cfg.delta, "right end of the small-time window")
      ->capture_default_str();
  v_lem->add_option("--q", lem_cfg.q, "moment order in (0,1]")->capture_default_str();
  v_lem->add_option("--n", lem_cfg.n, "paths per replication")->capture_default_str();
  v_lem->add_option("--reps", lem_cfg.m, "replications")->capture_default_str();
  v_lem->add_option("--alpha-star", lem_cfg.alpha_star, "A = [1-alpha*, alpha*]")
      ->capture_default_str();
  v_lem->add_option("--j-points", lem_cfg.j_time_points, "grid points on J=[1,2]")
      ->capture_default_str();
  v_lem->add_option("--alpha-points", lem_cfg.alpha_points, "level grid size")
      ->capture_default_str();
  v_lem->add_option("--levels", lem_cfg.dyadic_levels, "dyadic blocks filling (0,delta]")
      ->capture_default_str();

  auto* v_nz = verify->add_subcommand("near-zero", "sup exceedance near the time origin");
  ProcessOpts nz_proc;
  NearZeroConfig nz_cfg;
  add_process_options(v_nz, nz_proc);
  v_nz->add_option("--deltas", nz_cfg.deltas, "shrinking windows")->delimiter(',')
      ->capture_default_str();
  v_nz->add_option("--epsilons", nz_cfg.epsilons, "thresholds")->delimiter(',')
      ->capture_default_str();
  v_nz->add_option("--n", nz_cfg.n, "paths per replication")->capture_default_str();
  v_nz->add_option("--reps", nz_cfg.m, "replications")->capture_default_str();

  auto* v_tail = verify->add_subcommand("tail", "exceedance exponent over J=[1,2]");
  ProcessOpts tail_proc;
  TailConfig tail_cfg;
  add_process_options(v_tail, tail_proc);
  v_tail->add_option("--u-lo", tail_cfg.u_lo, "lowest threshold")->capture_default_str();
  v_tail->add_option("--u-hi", tail_cfg.u_hi, "highest threshold")->capture_default_str();
  v_tail->add_option("--u-points", tail_cfg.u_points, "thresholds (log-spaced)")
      ->capture_default_str();
  v_tail->add_option("--n-paths", tail_cfg.n_paths, "simulated paths")->capture_default_str();
  v_tail->add_option("--time-points", tail_cfg.time_points, "fine grid points on J")
      ->capture_default_str();

  auto* v_prop = verify->add_subcommand("properties", "deterministic property checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    const std::filesystem::path out{out_dir};

    if (sim->parsed()) {
      const ProcessSpec spec = sim_proc.build();
      const GridSpec grid = sim_grid.build();
      if (explain) {
        nlohmann::json j = explain_common(spec, seed, out_dir);
        j["grid"] = grid_to_json(grid);
        j["paths"] = sim_paths;
        std::cout << j.dump(2) << "\n";
      }
      const PathEnsemble e = simulate(spec, grid, sim_paths, seed);
      write_ensemble_csv(out / "paths.csv", e);
      std::cout << "wrote " << (out / "paths.csv").string() << " (" << sim_paths
                << " paths x " << grid.n_times() << " times)\n";
      return 0;
    }

    if (qf->parsed()) {
      const ProcessSpec spec = qf_proc.build();
      const GridSpec grid = qf_grid.build();
      if (explain) {
        nlohmann::json j = explain_common(spec, seed, out_dir);
        j["grid"] = grid_to_json(grid);
        j["paths"] = qf_paths;
        j["reps"] = qf_reps;
        std::cout << j.dump(2) << "\n";
      }
      std::vector<QuantileField> fields;
      fields.reserve(qf_reps);
      for (std::size_t r = 0; r < qf_reps; ++r) {
        const PathEnsemble e = simulate(spec, grid, qf_paths, seed, static_cast<std::uint32_t>(r));
        fields.push_back(quantile_field(e, grid, spec));
      }
      write_fields_csv(out / "fields.csv", fields, spec, seed);
      std::cout << "wrote " << (out / "fields.csv").string() << " (" << qf_reps
                << " replications)\n";
      return 0;
    }

    if (lc->parsed()) {
      const ProcessSpec spec = lc_proc.build();
      const GridSpec grid = lc_grid.build();
      if (explain) {
        nlohmann::json j = explain_common(spec, seed, out_dir);
        j["grid"] = grid_to_json(grid);
        std::cout << j.dump(2) << "\n";
      }
      const LimitCovariance table = limit_cov_table(grid, spec);
      write_cov_table_csv(out / "limit_cov.csv", table, seed);
      std::cout << "wrote " << (out / "limit_cov.csv").string() << " ("
                << table.entries.size() << " pairs)\n";
      return 0;
    }

    if (v_clt->parsed()) {
      clt_cfg.spec = clt_proc.build();
      clt_cfg.grid = clt_grid.build();
      clt_cfg.seed = seed;
      clt_cfg.workers = workers;
      return finish_report(mc_quantile_clt(clt_cfg), out, explain);
    }
    if (v_norm->parsed()) {
      norm_cfg.spec = norm_proc.build();
      norm_cfg.seed = seed;
      norm_cfg.workers = workers;
      return finish_report(mc_normality(norm_cfg), out, explain);
    }
    if (v_scal->parsed()) {
      scal_cfg.spec = scal_proc.build();
      scal_cfg.seed = seed;
      scal_cfg.workers = workers;
      return finish_report(scalability_check(scal_cfg), out, explain);
    }
    if (v_lem->parsed()) {
      lem_cfg.spec = lem_proc.build();
      lem_cfg.seed = seed;
      lem_cfg.workers = workers;
      return finish_report(lemma1_bound_check(lem_cfg), out, explain);
    }
    if (v_nz->parsed()) {
      nz_cfg.spec = nz_proc.build();
      nz_cfg.seed = seed;
      nz_cfg.workers = workers;
      return finish_report(near_zero_check(nz_cfg), out, explain);
    }
    if (v_tail->parsed()) {
      tail_cfg.spec = tail_proc.build();
      tail_cfg.seed = seed;
      tail_cfg.workers = workers;
      return finish_report(tail_exponent(tail_cfg), out, explain);
    }
    if (v_prop->parsed()) {
      return finish_report(property_suite(seed), out, explain);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const ssq::numerical_error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
