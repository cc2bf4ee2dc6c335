#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "logbbm/fkpp.hpp"

using namespace logbbm;

namespace {

Field1D logistic_cdf(const Grid1D& grid, double rate) {
  Field1D f{grid, std::vector<double>(grid.n_nodes, 0.0), FieldRole::kCdf, 0.0};
  for (std::size_t i = 0; i < grid.n_nodes; ++i)
    f.values[i] = 1.0 / (1.0 + std::exp(-rate * grid.x(i)));
  return f;
}

Field1D constant_cdf(const Grid1D& grid, double v) {
  return Field1D{grid, std::vector<double>(grid.n_nodes, v), FieldRole::kCdf, 0.0};
}

}  // namespace

TEST_CASE("grid validation") {
  CHECK_THROWS_AS((Grid1D{0.0, 1.0, 2}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((Grid1D{1.0, 1.0, 5}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((Grid1D{2.0, 1.0, 5}.validate()), std::invalid_argument);
  CHECK_NOTHROW((Grid1D{0.0, 1.0, 3}.validate()));
  const Grid1D g{0.0, 1.0, 11};
  CHECK(g.dx() == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(g.x(10) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("stability bound on the time step") {
  const Grid1D g{0.0, 1.0, 101};
  const double dx = g.dx();
  const auto ic = constant_cdf(g, 0.0);
  CHECK_NOTHROW(solve_fkpp_cdf(ic, 0.01, 0.9 * dx * dx));
  CHECK_THROWS_AS(solve_fkpp_cdf(ic, 0.01, dx * dx), std::invalid_argument);
  CHECK_THROWS_AS(solve_fkpp_cdf(ic, 0.01, 0.0), std::invalid_argument);
}

TEST_CASE("constant zero and one fields are fixed points") {
  const Grid1D g{0.0, 1.0, 21};
  const double dt = 0.9 * g.dx() * g.dx();
  for (double v : {0.0, 1.0}) {
    const auto sol = solve_fkpp_cdf(constant_cdf(g, v), 0.05, dt);
    REQUIRE(!sol.snapshots.empty());
    for (double u : sol.snapshots.back().values) CHECK(u == v);
    CHECK(sol.front.times.empty());  // nothing crosses the level
  }
}

TEST_CASE("heaviside initial condition and ordered evolution") {
  const Grid1D g{-10.0, 12.0, 441};
  const auto f0 = heaviside_cdf(g, 0.0);
  for (std::size_t i = 0; i < g.n_nodes; ++i)
    CHECK(f0.values[i] == (g.x(i) >= 0.0 ? 1.0 : 0.0));

  // comparison principle: an initially larger CDF stays larger
  const double dt = 0.9 * g.dx() * g.dx();
  const auto hi = solve_fkpp_cdf(f0, 0.5, dt);
  const auto lo = solve_fkpp_cdf(heaviside_cdf(g, 1.0), 0.5, dt);
  const auto& uh = hi.snapshots.back().values;
  const auto& ul = lo.snapshots.back().values;
  for (std::size_t i = 0; i < g.n_nodes; ++i) CHECK(uh[i] >= ul[i] - 1e-14);
}

TEST_CASE("front position interpolates linearly") {
  const Grid1D g{0.0, 1.0, 3};
  const Field1D f{g, {0.0, 0.5, 1.0}, FieldRole::kCdf, 0.0};
  CHECK(front_position(f, 0.25) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(front_position(f, 0.75) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK_THROWS_AS(front_position(constant_cdf(g, 0.0), 0.5), std::invalid_argument);
}

TEST_CASE("a front starting near the boundary is rejected") {
  const Grid1D g{-1.0, 1.0, 21};
  const auto ic = heaviside_cdf(g, 0.5);
  CHECK_THROWS_AS(solve_fkpp_cdf(ic, 0.1, 0.9 * g.dx() * g.dx()), std::runtime_error);
}

TEST_CASE("travelling-wave integral identity on exact profiles") {
  // d/dx of the logistic with rate r is r F(1-F), so the integral is 1/r; the
  // rate-0.5 profile needs the wider domain for its slower tail decay
  const Grid1D g{-25.0, 25.0, 1001};
  CHECK(wave_integral_identity(logistic_cdf(g, 1.0)) == doctest::Approx(1.0).epsilon(1e-7));
  const Grid1D wide{-50.0, 50.0, 2001};
  CHECK(wave_integral_identity(logistic_cdf(wide, 0.5)) ==
        doctest::Approx(2.0).epsilon(1e-7));
  CHECK_THROWS_AS(wave_integral_identity(constant_cdf(g, 1.0)), std::invalid_argument);
}

TEST_CASE("speed and delay fits recover synthetic front laws") {
  const double sqrt2 = std::sqrt(2.0);
  FrontTrace trace;
  for (int k = 0; k <= 600; ++k) {
    const double t = 20.0 + 0.1 * k;
    trace.times.push_back(t);
    trace.positions.push_back(sqrt2 * t - 3.0 / (2.0 * sqrt2) * std::log(t));
  }
  const auto fit = front_speed(trace, 20.0, 60.0);
  CHECK(fit.slope == doctest::Approx(1.3861972296998162).epsilon(1e-9));
  CHECK(fit.slope > 1.37);
  CHECK(fit.slope < 1.414);

  CHECK(bramson_fit(trace, 20.0, 80.0) == doctest::Approx(-1.0606601717798213).epsilon(1e-9));

  CHECK_THROWS_AS(front_speed(trace, 100.0, 101.0), std::invalid_argument);
  CHECK_THROWS_AS(bramson_fit(trace, 100.0, 101.0), std::invalid_argument);
}

TEST_CASE("grid refinement halves converge at second order") {
  const double t_end = 1.0;
  std::vector<std::vector<double>> sols;
  std::vector<Grid1D> grids;
  for (std::size_t n : {241, 481, 961}) {  // dx = 0.1, 0.05, 0.025 on [-10, 14]
    const Grid1D g{-10.0, 14.0, n};
    grids.push_back(g);
    const auto sol = solve_fkpp_cdf(logistic_cdf(g, 1.0), t_end, 0.9 * g.dx() * g.dx());
    sols.push_back(sol.snapshots.back().values);
  }
  const auto diff_on_coarse = [&](std::size_t c, std::size_t f) {
    double d = 0.0;
    for (std::size_t i = 0; i < grids[c].n_nodes; ++i)
      d = std::max(d, std::abs(sols[c][i] - sols[f][2 * i]));
    return d;
  };
  const double d1 = diff_on_coarse(0, 1);
  const double d2 = diff_on_coarse(1, 2);
  CHECK(d1 > 1e-8);  // well above float noise, so the ratio below is meaningful
  const double ratio = d1 / d2;
  CHECK(ratio > 3.0);
  CHECK(ratio < 5.0);
}

TEST_CASE("nonlocal mass follows the logistic law") {
  struct Case {
    double m0;
    Grid1D grid;
  };
  const std::vector<Case> cases{
      {0.5, {-12.0, 25.0, 741}},
      {1.0, {-12.0, 25.0, 741}},
      {2.0, {-15.0, 25.0, 801}},
  };
  for (const auto& cs : cases) {
    auto ic = gaussian_density(cs.grid, 0.0, 1.0);
    for (double& v : ic.values) v *= cs.m0;
    const double dt = 0.9 * cs.grid.dx() * cs.grid.dx();
    const auto sol = solve_fkpp_nonlocal_density(ic, 5.0, dt);
    REQUIRE(!sol.masses.empty());
    const double et = std::exp(5.0);
    const double want = cs.m0 * et / (1.0 - cs.m0 + cs.m0 * et);
    CHECK(std::abs(sol.masses.back() - want) <= 1e-2);
  }
}

TEST_CASE("nonlocal mass guard trips on an unattainable tolerance") {
  const Grid1D g{-12.0, 25.0, 741};
  auto ic = gaussian_density(g, 0.0, 1.0);
  for (double& v : ic.values) v *= 0.5;
  const double dt = 0.9 * g.dx() * g.dx();
  CHECK_THROWS_AS(solve_fkpp_nonlocal_density(ic, 1.0, dt, {}, 0.1, 1e-13),
                  std::runtime_error);
  CHECK_THROWS_AS(solve_fkpp_nonlocal_density(ic, 1.0, dt, {}, 0.1, 0.0),
                  std::invalid_argument);
}

TEST_CASE("the nonlocal flow does not preserve pointwise order") {
  // adding mass on the right suppresses growth at the contact points, so a
  // pointwise-larger start can drop below the smaller one
  const Grid1D g{-10.0, 12.0, 441};
  const auto u0 = gaussian_density(g, 0.0, 1.0);
  auto v0 = u0;
  const auto bump = gaussian_density(g, 3.0, 0.5);
  for (std::size_t i = 0; i < g.n_nodes; ++i) v0.values[i] += 0.8 * bump.values[i];
  for (std::size_t i = 0; i < g.n_nodes; ++i) REQUIRE(v0.values[i] >= u0.values[i]);

  const double dt = 0.9 * g.dx() * g.dx();
  const auto u = solve_fkpp_nonlocal_density(u0, 0.25, dt).snapshots.back().values;
  const auto v = solve_fkpp_nonlocal_density(v0, 0.25, dt).snapshots.back().values;
  double min_diff = 0.0;
  for (std::size_t i = 0; i < g.n_nodes; ++i) min_diff = std::min(min_diff, v[i] - u[i]);
  CHECK(min_diff < -0.01);
}

TEST_CASE("density construction and prefix integration") {
  const Grid1D g{-8.0, 8.0, 321};
  const auto d = gaussian_density(g, 0.5, 1.2);
  CHECK(trapezoid_mass(d) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(gaussian_density(g, 0.0, 0.0), std::invalid_argument);

  const auto F = integrate_density(d);
  CHECK(F.role == FieldRole::kCdf);
  REQUIRE(F.values.size() == g.n_nodes);
  CHECK(F.values.front() == 0.0);
  CHECK(F.values.back() == doctest::Approx(trapezoid_mass(d)).epsilon(1e-12));
  for (std::size_t i = 1; i < F.values.size(); ++i) CHECK(F.values[i] >= F.values[i - 1]);
}

TEST_CASE("snapshots land on the requested times") {
  const Grid1D g{-10.0, 12.0, 441};
  const auto sol = solve_fkpp_cdf(heaviside_cdf(g, 0.0), 1.0, 0.9 * g.dx() * g.dx(),
                                  {0.3, 0.7});
  REQUIRE(sol.snapshots.size() == 3);
  CHECK(sol.snapshots[0].time == 0.3);
  CHECK(sol.snapshots[1].time == 0.7);
  CHECK(sol.snapshots[2].time == 1.0);
  REQUIRE(!sol.front.times.empty());
  CHECK(sol.front.positions.back() > sol.front.positions.front());
}
