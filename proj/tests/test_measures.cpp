#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "logbbm/measures.hpp"

using namespace logbbm;

TEST_CASE("count-normalized CDF on a small atom set") {
  const auto m = empirical_measure({1.0, 2.0, 2.0, 3.0}, Normalization::kCount, 0.0);
  CHECK(m.total_mass() == doctest::Approx(1.0).epsilon(1e-15));

  const auto F = cdf(m);
  REQUIRE(F.jump_points.size() == 3);  // the duplicate atom collapses into one jump
  CHECK(F.jump_points == std::vector<double>{1.0, 2.0, 3.0});
  CHECK(F.cumulative[0] == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(F.cumulative[1] == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(F.cumulative[2] == doctest::Approx(1.0).epsilon(1e-15));

  CHECK(F.value(0.5) == 0.0);
  CHECK(F.value(2.0) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(F.left_limit(2.0) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(F.value(10.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(F.total_mass() == doctest::Approx(1.0).epsilon(1e-15));

  CHECK(empirical_mean(m) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("mass normalization weights by the analytic stationary mean") {
  const auto m = empirical_measure({0.0, 1.0}, Normalization::kMass, 1.0);
  // two atoms, each carrying 1/m_K at c_eff = 1
  CHECK(m.total_mass() == doctest::Approx(1.2642411176571154).epsilon(1e-14));
  CHECK_THROWS_AS(empirical_mean(m), std::invalid_argument);
}

TEST_CASE("degenerate inputs are rejected") {
  CHECK_THROWS_AS(empirical_measure({}, Normalization::kCount, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(empirical_measure({0.0}, Normalization::kMass, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(empirical_measure({0.0}, Normalization::kMass, -1.0), std::invalid_argument);
}

TEST_CASE("sup distance between step CDFs") {
  const auto a = cdf(empirical_measure({0.0, 1.0}, Normalization::kCount, 0.0));
  const auto b = cdf(empirical_measure({0.0, 1.0}, Normalization::kCount, 0.0));
  CHECK(sup_distance(a, b) == 0.0);

  // unit steps one apart disagree completely on the in-between interval
  const auto s0 = cdf(empirical_measure({0.0}, Normalization::kCount, 0.0));
  const auto s1 = cdf(empirical_measure({1.0}, Normalization::kCount, 0.0));
  CHECK(sup_distance(s0, s1) == doctest::Approx(1.0).epsilon(1e-15));

  CHECK(sup_distance(a, s0) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("sup distance against a piecewise-linear grid function") {
  const auto s = cdf(empirical_measure({0.5}, Normalization::kCount, 0.0));
  // linear ramp from (0,0) to (1,1): the step at 0.5 overshoots it by exactly 1/2
  const std::vector<double> gx{0.0, 1.0}, gf{0.0, 1.0};
  CHECK(sup_distance(s, gx, gf) == doctest::Approx(0.5).epsilon(1e-15));

  // a step matching the ramp endpoint extension is off only inside the ramp
  const auto far = cdf(empirical_measure({-5.0}, Normalization::kCount, 0.0));
  CHECK(sup_distance(far, gx, gf) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("histogram density integrates back to the total mass") {
  const auto m = empirical_measure({0.1, 0.4, 0.6, 2.3}, Normalization::kCount, 0.0);
  const std::vector<double> edges{0.0, 1.0, 2.0, 3.0};
  const auto h = histogram_density(m, edges);
  REQUIRE(h.size() == 3);
  double mass = 0.0;
  for (std::size_t i = 0; i < h.size(); ++i) mass += h[i] * (edges[i + 1] - edges[i]);
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(h[0] == doctest::Approx(0.75).epsilon(1e-12));
}
