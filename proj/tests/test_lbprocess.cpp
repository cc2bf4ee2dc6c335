#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "logbbm/lbprocess.hpp"
#include "logbbm/stats.hpp"

using namespace logbbm;

TEST_CASE("transition rates are birth n and death c n(n-1)") {
  const auto r = transition_rates(3, {0.5, 1.0});
  CHECK(r.birth == doctest::Approx(3.0));
  CHECK(r.death == doctest::Approx(3.0));
  const auto r1 = transition_rates(1, {2.0, 1.0});
  CHECK(r1.death == 0.0);
}

TEST_CASE("stationary pmf and mean match closed-form reference values") {
  CHECK(stationary_pmf(1.0, 1) == doctest::Approx(0.58197670686932642439).epsilon(1e-14));
  CHECK(stationary_pmf(0.5, 2) == doctest::Approx(0.31303528549933130364).epsilon(1e-14));
  CHECK(stationary_mean(0.5) == doctest::Approx(2.3130352854993313036).epsilon(1e-14));
  CHECK(stationary_mean(1.0) == doctest::Approx(1.5819767068693264244).epsilon(1e-14));
  CHECK(stationary_mean(0.1) == doctest::Approx(10.000454019910096878).epsilon(1e-14));
  CHECK(stationary_mean(5.0) == doctest::Approx(1.103331113225398961).epsilon(1e-14));
  // strong competition pins the law near the singleton state
  CHECK(stationary_pmf(100.0, 1) == doctest::Approx(0.99500833331944447751).epsilon(1e-14));
  CHECK(stationary_mean(1e6) - 1.0 == doctest::Approx(5.0000008e-7).epsilon(1e-6));
}

TEST_CASE("stationary pmf sums to one and reproduces its own mean") {
  for (double c : {0.5, 1.0, 5.0}) {
    double sum = 0.0, mean = 0.0;
    for (std::uint64_t k = 1; k <= 200; ++k) {
      const double p = stationary_pmf(c, k);
      sum += p;
      mean += static_cast<double>(k) * p;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(mean == doctest::Approx(stationary_mean(c)).epsilon(1e-10));
  }
}

TEST_CASE("stationary sampler hits the right mean and never returns zero") {
  Rng rng(17);
  RunningStat s;
  for (int i = 0; i < 20'000; ++i) {
    const auto k = sample_stationary(0.5, rng);
    REQUIRE(k >= 1);
    s.add(static_cast<double>(k));
  }
  CHECK(std::abs(s.mean - stationary_mean(0.5)) <= 4.0 * s.se_mean());
}

TEST_CASE("chain simulation is seed-deterministic and respects basic structure") {
  const LbParams p{1.0, 1.0};
  const auto a = simulate_lb_chain(p, 2, 5.0, std::uint64_t{99});
  const auto b = simulate_lb_chain(p, 2, 5.0, std::uint64_t{99});
  CHECK(a.event_times == b.event_times);
  CHECK(a.sizes == b.sizes);
  CHECK(a.n0 == 2);
  CHECK(a.t_end == 5.0);

  double prev = 0.0;
  for (std::size_t i = 0; i < a.event_times.size(); ++i) {
    CHECK(a.event_times[i] > prev);
    CHECK(a.event_times[i] <= a.t_end);
    CHECK(a.sizes[i] >= 1);  // competition needs a pair, so the chain never dies
    prev = a.event_times[i];
  }
}

TEST_CASE("pure-birth chains only grow and eventually hit the cap") {
  const LbParams p{0.0, 1.0};
  const auto a = simulate_lb_chain(p, 1, 3.0, std::uint64_t{7});
  for (std::size_t i = 1; i < a.sizes.size(); ++i) CHECK(a.sizes[i] == a.sizes[i - 1] + 1);
  CHECK_THROWS_AS(simulate_lb_chain(p, 1, 30.0, std::uint64_t{7}, 64), std::runtime_error);
}

TEST_CASE("occupation statistics on a hand-built trajectory") {
  LbTrajectory traj;
  traj.event_times = {1.0, 3.0};
  traj.sizes = {2, 1};
  traj.n0 = 1;
  traj.t_end = 4.0;
  // holds 1 on [0,1), 2 on [1,3), 1 on [3,4]: half the time at each size
  const auto occ = occupation_pmf(traj);
  REQUIRE(occ.size() == 2);
  CHECK(occ[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(occ[1] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(occupation_mean(traj) == doctest::Approx(1.5).epsilon(1e-15));
  // burn-in drops the leading hold interval
  const auto occ_b = occupation_pmf(traj, 1.0);
  CHECK(occ_b[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(occ_b[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("pure-birth population at t=1 follows the geometric law") {
  const LbParams p{0.0, 1.0};
  std::vector<double> finals;
  finals.reserve(2000);
  for (int i = 0; i < 2000; ++i) {
    const auto traj = simulate_lb_chain(p, 1, 1.0, Rng::child_seed(1234, i));
    finals.push_back(static_cast<double>(traj.sizes.empty() ? traj.n0 : traj.sizes.back()));
  }
  const double q = 1.0 - std::exp(-1.0);
  const double d = ks_statistic(finals, [q](double x) {
    if (x < 1.0) return 0.0;
    return 1.0 - std::pow(q, std::floor(x));
  });
  CHECK(d < ks_critical_one_sample(finals.size()));
}
