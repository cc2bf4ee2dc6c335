#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "logbbm/stats.hpp"

namespace logbbm {

struct Grid1D {
  double x_min = 0.0;
  double x_max = 1.0;
  std::size_t n_nodes = 3;

  double dx() const { return (x_max - x_min) / static_cast<double>(n_nodes - 1); }
  double x(std::size_t i) const { return x_min + dx() * static_cast<double>(i); }
  void validate() const;
};

enum class FieldRole : std::uint8_t { kCdf, kDensity };

struct Field1D {
  Grid1D grid;
  std::vector<double> values;
  FieldRole role = FieldRole::kCdf;
  double time = 0.0;
};

// Level-crossing positions of a CDF-role field over time; one fixed level per
// trace.
struct FrontTrace {
  std::vector<double> times;
  std::vector<double> positions;
  double level = 0.5;
};

struct ClampLog {
  std::size_t count = 0;
  double max_magnitude = 0.0;
};

struct CdfSolution {
  std::vector<Field1D> snapshots;  // requested times plus t_end, ascending
  FrontTrace front;
  ClampLog clamps;
};

struct DensitySolution {
  std::vector<Field1D> snapshots;
  std::vector<double> mass_times;  // trapezoid mass sampled on the tick grid
  std::vector<double> masses;
  ClampLog clamps;
};

// d/dt F = (1/2) d2F/dx2 - F(1-F), explicit Euler, central differences.
// Endpoint values are held at their initial values (Dirichlet).  Stability
// requires dt <= 0.9 dx^2.  Aborts if the level crossing approaches within
// 10 dx of either end of the domain.
CdfSolution solve_fkpp_cdf(const Field1D& ic, double t_end, double dt,
                           const std::vector<double>& snapshot_times = {},
                           double tick_interval = 0.1, double front_level = 0.5);

// d/dt u = (1/2) d2u/dx2 + u (1 - 2 S), S(x) = integral of u over [x, x_max],
// recomputed each step by a reverse cumulative trapezoid.  Zero Dirichlet
// endpoints.  Aborts when the trapezoid mass drifts more than mass_tolerance
// from the logistic prediction m0 e^t / (1 - m0 + m0 e^t).
DensitySolution solve_fkpp_nonlocal_density(const Field1D& ic, double t_end, double dt,
                                            const std::vector<double>& snapshot_times = {},
                                            double tick_interval = 0.1,
                                            double mass_tolerance = 1e-2);

// First upward crossing of the level, linearly interpolated between the
// bracketing nodes.  Throws if the field never crosses.
double front_position(const Field1D& field, double level = 0.5);

// Least-squares line through the trace samples with t in [t_lo, t_hi];
// requires at least 10 samples in the window.
LinearFit front_speed(const FrontTrace& trace, double t_lo, double t_hi);

// Fits position - sqrt(2) t against log t over the window and returns the
// log coefficient.
double bramson_fit(const FrontTrace& trace, double t_lo, double t_hi);

// Trapezoid integral of F(1-F); requires a developed front at least 10 dx
// clear of both domain ends.
double wave_integral_identity(const Field1D& field);

double trapezoid_mass(const Field1D& field);

Field1D heaviside_cdf(const Grid1D& grid, double x0);

// Gaussian bump rescaled to unit trapezoid mass on the given grid.
Field1D gaussian_density(const Grid1D& grid, double mean, double sd);

// Prefix trapezoid integral of a density field; result carries the cdf role
// and ranges from 0 to the trapezoid mass.
Field1D integrate_density(const Field1D& density);

}  // namespace logbbm
