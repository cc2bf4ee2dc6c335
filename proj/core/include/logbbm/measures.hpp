#pragma once

#include <cstdint>
#include <vector>

#include "logbbm/simulator.hpp"

namespace logbbm {

enum class Normalization : std::uint8_t {
  kCount,  // weight 1/N_t, total mass exactly 1
  kMass,   // weight 1/m_K with m_K the analytic stationary mean at the run's rate
};

struct EmpiricalMeasure {
  std::vector<double> atoms;  // sorted ascending
  double weight_per_atom = 1.0;
  Normalization normalization = Normalization::kCount;

  double total_mass() const {
    return weight_per_atom * static_cast<double>(atoms.size());
  }
};

// Right-continuous step CDF; value(x) = weight * #atoms <= x.
struct StepCdf {
  std::vector<double> jump_points;  // strictly increasing
  std::vector<double> cumulative;   // value at and right of jump_points[i]

  double value(double x) const;
  double left_limit(double x) const;
  double total_mass() const { return cumulative.empty() ? 0.0 : cumulative.back(); }
};

// One atom per alive blue position.  Mass normalization uses the analytic
// stationary mean at the state's effective rate, never a per-run sample mean.
EmpiricalMeasure empirical_measure(const PopulationState& state, Normalization norm);
EmpiricalMeasure empirical_measure(std::vector<double> positions, Normalization norm,
                                   double c_eff);

StepCdf cdf(const EmpiricalMeasure& measure);

// Arithmetic mean of atom positions; defined for count normalization only.
double empirical_mean(const EmpiricalMeasure& measure);

// Exact sup-norm distance between two step CDFs (evaluated at all jump points,
// both sides).
double sup_distance(const StepCdf& a, const StepCdf& b);

// Exact sup-norm distance between a step CDF and a piecewise-linear grid
// function given by (grid_x, grid_f), evaluated at all jump points (both
// sides) and all grid nodes.  Outside the grid the grid function is extended
// by its end values.
double sup_distance(const StepCdf& a, const std::vector<double>& grid_x,
                    const std::vector<double>& grid_f);

// Fixed-bandwidth histogram density (diagnostics only; CDF comparisons are the
// canonical route).
std::vector<double> histogram_density(const EmpiricalMeasure& measure,
                                      const std::vector<double>& bin_edges);

}  // namespace logbbm
