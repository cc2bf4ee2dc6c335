#include <cmath>
#include <vector>

#include "doctest.h"
#include "logbbm/rng.hpp"
#include "logbbm/stats.hpp"

using namespace logbbm;

TEST_CASE("running stat reproduces hand-computed moments") {
  RunningStat s;
  for (double x : {2.0, 4.0, 4.0, 4.0, 5.0, 5.0, 7.0, 9.0}) s.add(x);
  CHECK(s.n == 8);
  CHECK(s.mean == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(s.variance() == doctest::Approx(32.0 / 7.0).epsilon(1e-15));
  CHECK(s.se_mean() == doctest::Approx(std::sqrt(32.0 / 7.0 / 8.0)).epsilon(1e-15));
}

TEST_CASE("merging partial accumulators matches one bulk pass") {
  Rng rng(5);
  std::vector<double> xs(100);
  for (auto& x : xs) x = rng.normal() * 3.0 + 1.0;

  RunningStat bulk, a, b;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    bulk.add(xs[i]);
    (i < 37 ? a : b).add(xs[i]);
  }
  a.merge(b);
  CHECK(a.n == bulk.n);
  CHECK(a.mean == doctest::Approx(bulk.mean).epsilon(1e-12));
  CHECK(a.m2 == doctest::Approx(bulk.m2).epsilon(1e-12));

  RunningStat empty;
  empty.merge(bulk);
  CHECK(empty.n == bulk.n);
  CHECK(empty.mean == bulk.mean);
}

TEST_CASE("line fit recovers exact affine data") {
  const std::vector<double> xs{0.0, 1.0, 2.0, 3.0, 4.0};
  std::vector<double> ys;
  for (double x : xs) ys.push_back(2.0 * x + 1.0);
  const auto f = fit_line(xs, ys);
  CHECK(f.slope == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(f.intercept == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(f.residual_rms == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(f.n == 5);
}

TEST_CASE("line fit rejects degenerate inputs") {
  CHECK_THROWS_AS(fit_line({1.0}, {2.0}), std::invalid_argument);
  CHECK_THROWS_AS(fit_line({1.0, 2.0}, {2.0}), std::invalid_argument);
  CHECK_THROWS_AS(fit_line({3.0, 3.0, 3.0}, {1.0, 2.0, 3.0}), std::invalid_argument);
}

TEST_CASE("one-sample KS statistic on hand cases") {
  // single atom at the median of U(0,1): both one-sided gaps are 1/2
  const double d1 = ks_statistic({0.5}, [](double x) { return std::clamp(x, 0.0, 1.0); });
  CHECK(d1 == doctest::Approx(0.5).epsilon(1e-15));

  // tied block of two at 1: empirical jumps 0 -> 2/3 there, reference sits at 1/4
  const double d2 = ks_statistic({1.0, 1.0, 2.0}, [](double x) {
    if (x < 1.0) return 0.0;
    if (x < 2.0) return 0.25;
    return 0.75;
  });
  CHECK(d2 == doctest::Approx(5.0 / 12.0).epsilon(1e-15));

  CHECK_THROWS_AS(ks_statistic({}, [](double) { return 0.0; }), std::invalid_argument);
}

TEST_CASE("two-sample KS statistic on hand cases") {
  CHECK(ks_two_sample({1.0, 2.0, 3.0}, {1.0, 2.0, 3.0}) == 0.0);
  CHECK(ks_two_sample({1.0, 2.0}, {10.0, 11.0, 12.0}) == doctest::Approx(1.0));
  CHECK_THROWS_AS(ks_two_sample({}, {1.0}), std::invalid_argument);
}

TEST_CASE("total variation distance") {
  CHECK(tv_distance({0.5, 0.5}, {1.0, 0.0}) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(tv_distance({0.25, 0.75}, {0.25, 0.75}) == 0.0);
  CHECK_THROWS_AS(tv_distance({0.5}, {0.25, 0.25}), std::invalid_argument);
}
