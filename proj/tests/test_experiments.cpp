#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "logbbm/experiments.hpp"
#include "logbbm/stats.hpp"

using namespace logbbm;

TEST_CASE("renewal cycles are positive, indexed, and uncorrelated") {
  const auto cycles = sample_renewal_cycles(2.0, 500, 101);
  REQUIRE(cycles.size() == 500);
  std::vector<double> durations;
  for (std::size_t i = 0; i < cycles.size(); ++i) {
    // n_events may be zero: the holding time can elapse with no event at all
    CHECK(cycles[i].duration > 0.0);
    CHECK(cycles[i].cycle_index == i);
    durations.push_back(cycles[i].duration);
  }
  // independent child streams: lag-1 autocorrelation is noise-level
  RunningStat s;
  for (double d : durations) s.add(d);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < durations.size(); ++i) {
    den += (durations[i] - s.mean) * (durations[i] - s.mean);
    if (i + 1 < durations.size())
      num += (durations[i] - s.mean) * (durations[i + 1] - s.mean);
  }
  CHECK(std::abs(num / den) <= 4.0 / std::sqrt(static_cast<double>(durations.size())));
}

TEST_CASE("strong competition pins the cycle length to the holding variable") {
  // at large c excursions above one particle collapse almost instantly, so the
  // duration is essentially the Exp(1) holding draw
  const auto cycles = sample_renewal_cycles(1000.0, 500, 7);
  RunningStat s;
  for (const auto& cyc : cycles) s.add(cyc.duration);
  CHECK(s.mean > 0.82);
  CHECK(s.mean < 1.18);
}

TEST_CASE("velocity estimators reject undersized inputs") {
  CHECK_THROWS_AS(velocity_renewal(1.0, 99, 1), std::invalid_argument);
  CHECK_THROWS_AS(velocity_from_cycles(1.0, {}), std::invalid_argument);
  CHECK_THROWS_AS(sample_renewal_cycles(0.0, 10, 1), std::invalid_argument);
  CHECK_THROWS_AS(velocity_direct(1.0, 10.0, 100, 1), std::invalid_argument);
  CHECK_THROWS_AS(velocity_direct(1.0, 100.0, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(velocity_direct(-1.0, 100.0, 100, 1), std::invalid_argument);
}

TEST_CASE("renewal velocity comes with sane fields") {
  const auto est = velocity_renewal(1.0, 400, 33);
  CHECK(est.c == 1.0);
  CHECK(est.method == "renewal");
  CHECK(est.horizon == 400.0);
  CHECK(est.std_error > 0.0);
  CHECK(est.v_hat > 0.0);
  CHECK(est.v_hat < std::sqrt(2.0) + 4.0 * est.std_error);
}

TEST_CASE("direct max and min estimates tighten as the horizon doubles") {
  const auto d50 = velocity_direct(0.5, 50.0, 100, 21);
  const auto d100 = velocity_direct(0.5, 100.0, 100, 22);
  CHECK(d50.max_based.method == "direct-max");
  CHECK(d50.min_based.method == "direct-min");
  const double gap50 = std::abs(d50.max_based.v_hat - d50.min_based.v_hat);
  const double gap100 = std::abs(d100.max_based.v_hat - d100.min_based.v_hat);
  const double joint_se =
      std::hypot(std::hypot(d50.max_based.std_error, d50.min_based.std_error),
                 std::hypot(d100.max_based.std_error, d100.min_based.std_error));
  CHECK(gap100 < gap50 + 2.0 * joint_se);
}

TEST_CASE("hydro study at time zero matches the initial step exactly") {
  HydroConfig cfg;
  cfg.c = 1.0;
  cfg.K_list = {4};
  cfg.t = 0.0;
  cfg.replicates = 10;
  cfg.normalization = Normalization::kCount;
  const auto res = hydrodynamic_study(cfg, heaviside_cdf(cfg.grid, 0.0));
  REQUIRE(res.size() == 1);
  CHECK(res[0].sup_dist == 0.0);
  CHECK(res[0].sup_dist_se == 0.0);
}

TEST_CASE("hydro study rejects mismatched PDE starts") {
  HydroConfig cfg;
  cfg.K_list = {2};
  cfg.replicates = 4;
  CHECK_THROWS_AS(hydrodynamic_study(cfg, heaviside_cdf(cfg.grid, 0.5)),
                  std::invalid_argument);
  const Grid1D other{-8.0, 8.0, 161};
  CHECK_THROWS_AS(hydrodynamic_study(cfg, heaviside_cdf(other, 0.0)),
                  std::invalid_argument);
  cfg.K_list = {};
  CHECK_THROWS_AS(hydrodynamic_study(cfg, heaviside_cdf(cfg.grid, 0.0)),
                  std::invalid_argument);
}

TEST_CASE("hydro study runs and improves with larger K") {
  HydroConfig cfg;
  cfg.c = 1.0;
  cfg.K_list = {2, 8};
  cfg.t = 0.5;
  cfg.replicates = 40;
  cfg.grid = {-6.0, 6.0, 121};
  cfg.seed = 5;
  const auto res = hydrodynamic_study(cfg, heaviside_cdf(cfg.grid, 0.0));
  REQUIRE(res.size() == 2);
  for (const auto& r : res) {
    CHECK(r.replicates == 40);
    CHECK(r.sup_dist >= 0.0);
    CHECK(r.sup_dist < 1.0);
    CHECK(r.sup_dist_se >= 0.0);
    REQUIRE(r.mean_cdf.size() == cfg.grid.n_nodes);
    CHECK(r.pde_cdf.back() == doctest::Approx(1.0).epsilon(1e-6));
  }
  const double allowance = 4.0 * std::hypot(res[0].sup_dist_se, res[1].sup_dist_se);
  CHECK(res[1].sup_dist <= res[0].sup_dist + allowance);
}

TEST_CASE("branching population sums reduce to single-particle expectations") {
  struct Case {
    TestFunctional f;
    double rhs;
  };
  const double e1 = std::exp(1.0);
  for (const auto& cs : {Case{TestFunctional::kOne, e1}, Case{TestFunctional::kIdentity, 0.0},
                         Case{TestFunctional::kSquare, e1}}) {
    const auto res = many_to_one_check(cs.f, 1.0, 20'000, 61);
    CHECK(res.rhs_analytic == doctest::Approx(cs.rhs).epsilon(1e-12));
    CHECK(std::abs(res.z_score) <= 4.0);
    CHECK(res.lhs_se > 0.0);
  }
  CHECK_THROWS_AS(many_to_one_check(TestFunctional::kOne, 0.0, 100, 1), std::invalid_argument);
  CHECK_THROWS_AS(many_to_one_check(TestFunctional::kOne, 1.0, 1, 1), std::invalid_argument);
}

TEST_CASE("mean-CDF drift identity holds at Monte Carlo precision") {
  DriftCheckConfig cfg;
  cfg.replicates = 20'000;
  cfg.seed = 77;
  const auto res = mean_cdf_drift_check(cfg);
  CHECK(std::abs(res.z_score) <= 4.0);
  CHECK(res.se_residual > 0.0);
  // the reported decomposition recombines to the residual
  const double recombined = res.time_derivative - res.half_curvature + res.kill_term;
  CHECK(std::abs(res.mean_residual - recombined) <= 1e-9);
  CHECK(res.mean_cdf_at_probe > 0.0);
  CHECK(res.mean_cdf_at_probe < 1.0);
  CHECK(res.se_cdf_at_probe > 0.0);
}

TEST_CASE("drift check configuration guards") {
  DriftCheckConfig cfg;
  cfg.t = 0.05;  // equals dt_probe, so the central difference has no room
  CHECK_THROWS_AS(mean_cdf_drift_check(cfg), std::invalid_argument);

  cfg = {};
  cfg.replicates = 1;
  CHECK_THROWS_AS(mean_cdf_drift_check(cfg), std::invalid_argument);

  cfg = {};
  cfg.n0 = 0;
  CHECK_THROWS_AS(mean_cdf_drift_check(cfg), std::invalid_argument);

  cfg = {};
  cfg.dx_probe = 0.0;
  CHECK_THROWS_AS(mean_cdf_drift_check(cfg), std::invalid_argument);
}

TEST_CASE("drift check refuses to report below its noise floor") {
  DriftCheckConfig cfg;
  cfg.replicates = 100;
  cfg.max_std_error = 1e-6;
  try {
    mean_cdf_drift_check(cfg);
    FAIL("expected a noise-floor rejection");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find("noise floor") != std::string::npos);
  }
}

TEST_CASE("integrated drift rate matches the gap-weighted kill sum") {
  DriftCheckConfig cfg;
  cfg.replicates = 20'000;
  cfg.seed = 99;
  const auto res = mean_drift_gap_route(cfg);
  CHECK(std::abs(res.z_score) <= 4.0);
  CHECK(res.diff_se > 0.0);
}
