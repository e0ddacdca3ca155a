#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "ssq/harness.hpp"
#include "ssq/process.hpp"

using namespace ssq;

namespace {

GridSpec median_grid() {
  GridSpec g;
  g.T = 2.0;
  g.times = {0.0, 1.0, 2.0};
  g.alphas = {0.5};
  return g;
}

}  // namespace

TEST_CASE("property suite is fully green and deterministic") {
  const VerificationReport a = property_suite(1u);
  CHECK(a.all_pass());
  CHECK(a.experiment == "PROPERTY_SUITE");
  const VerificationReport b = property_suite(1u);
  CHECK(a.to_json(false) == b.to_json(false));
}

TEST_CASE("small BM clt-cov run matches the limit covariance") {
  CltConfig cfg;
  cfg.spec = ProcessSpec::bm();
  cfg.grid = median_grid();
  cfg.n = 400;
  cfg.m = 300;
  cfg.seed = 17;
  const VerificationReport rep = mc_quantile_clt(cfg);
  CHECK(rep.all_pass());

  // Mean field vanishes within 3 se at every point of this compact grid.
  for (const Estimate& e : rep.estimates) {
    if (e.coords.contains("stat") && e.coords["stat"] == "mean" &&
        e.coords["t"].get<double>() > 0.0) {
      CHECK(std::abs(e.value) <= 3.0 * e.se);
    }
  }

  // Diagonal variance near pi/2 (10% tolerance is the configured verdict).
  const Estimate* diag = rep.find_estimate(
      {{"stat", "cov"}, {"s", 1.0}, {"beta", 0.5}, {"t", 1.0}, {"alpha", 0.5}});
  REQUIRE(diag != nullptr);
  CHECK(std::abs(diag->value - 1.5707963267948966) / 1.5707963267948966 < 0.15);

  // Determinism across worker counts.
  CltConfig cfg1 = cfg;
  cfg1.workers = 1;
  CltConfig cfg4 = cfg;
  cfg4.workers = 4;
  CHECK(mc_quantile_clt(cfg1).to_json(false) == mc_quantile_clt(cfg4).to_json(false));

  CltConfig bad = cfg;
  bad.n = 10;
  CHECK_THROWS_AS(mc_quantile_clt(bad), std::invalid_argument);
}

TEST_CASE("normality boundary skip and small run") {
  NormalityConfig cfg;
  cfg.spec = ProcessSpec::bm();
  cfg.t = 0.0;
  const VerificationReport skip = mc_normality(cfg);
  CHECK(skip.all_pass());
  CHECK(skip.verdicts.size() == 1);
  CHECK(skip.verdicts[0].check.find("boundary") != std::string::npos);

  cfg.t = 1.0;
  cfg.n = 400;
  cfg.m = 400;
  cfg.seed = 5;
  const VerificationReport rep = mc_normality(cfg);
  CHECK(rep.all_pass());
  CHECK(rep.tests.size() == 1);
  CHECK(rep.tests[0].p >= 0.01);
}

TEST_CASE("scalability at c=1 gives p=1") {
  ScalabilityConfig cfg;
  cfg.spec = ProcessSpec::bm();
  cfg.t0 = 0.5;
  cfg.c_factors = {1.0, 4.0};
  cfg.n = 200;
  cfg.m = 300;
  cfg.seed = 3;
  const VerificationReport rep = scalability_check(cfg);
  CHECK(rep.all_pass());
  REQUIRE(rep.tests.size() == 2);
  CHECK(rep.tests[0].statistic == 0.0);  // identical samples at c=1
  CHECK(rep.tests[0].p == doctest::Approx(1.0));
}

TEST_CASE("lemma1 scaling constant and bound") {
  Lemma1Config cfg;
  cfg.spec = ProcessSpec::bm();
  cfg.delta = 0.25;
  cfg.q = 1.0;
  cfg.n = 200;
  cfg.m = 200;
  cfg.seed = 11;
  cfg.j_time_points = 9;
  cfg.alpha_points = 9;
  const VerificationReport rep = lemma1_bound_check(cfg);
  const Estimate* c = rep.find_estimate({{"stat", "scaling_constant"}});
  REQUIRE(c != nullptr);
  // delta^{Hq}/(1-2^{-Hq}) at H=1/2, q=1, delta=1/4.
  CHECK(c->value == doctest::Approx(1.7071067811865475).epsilon(1e-12));
  CHECK(rep.all_pass());

  Lemma1Config degenerate = cfg;
  degenerate.delta = 1.0;  // inequality still checked with constant (1-2^{-H})^{-1}
  const VerificationReport rep1 = lemma1_bound_check(degenerate);
  const Estimate* c1 = rep1.find_estimate({{"stat", "scaling_constant"}});
  REQUIRE(c1 != nullptr);
  CHECK(c1->value == doctest::Approx(1.0 / (1.0 - std::pow(2.0, -0.5))).epsilon(1e-12));
  CHECK(rep1.all_pass());
}

TEST_CASE("near-zero exceedance shrinks with delta") {
  NearZeroConfig cfg;
  cfg.spec = ProcessSpec::bm();
  cfg.n = 200;
  cfg.m = 200;
  cfg.seed = 29;
  const VerificationReport rep = near_zero_check(cfg);
  CHECK(rep.all_pass());
  // The smallest delta at eps=0.5 stays well under 0.5.
  const Estimate* e = rep.find_estimate({{"stat", "exceedance"}, {"delta", 0.01}, {"eps", 0.5}});
  REQUIRE(e != nullptr);
  CHECK(e->value < 0.5);
}

TEST_CASE("tail exponent recovers the stable index and rejects gaussian fits") {
  TailConfig cfg;
  cfg.spec = ProcessSpec::stable(1.0, 1.0);
  cfg.n_paths = 8000;
  cfg.seed = 2;
  TailEstimate est;
  const VerificationReport rep = tail_exponent(cfg, &est);
  CHECK(rep.all_pass());
  CHECK(est.theta == doctest::Approx(1.0).epsilon(0.2));
  CHECK(!est.fit_rejected);
  for (std::size_t i = 1; i < est.prob.size(); ++i) CHECK(est.prob[i] <= est.prob[i - 1]);

  TailConfig gcfg;
  gcfg.spec = ProcessSpec::bm();
  gcfg.n_paths = 8000;
  gcfg.seed = 2;
  TailEstimate gest;
  const VerificationReport grep = tail_exponent(gcfg, &gest);
  CHECK(grep.all_pass());
  CHECK(gest.fit_rejected);  // super-polynomial decay detected
}
