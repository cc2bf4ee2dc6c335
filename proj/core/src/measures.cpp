#include "logbbm/measures.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "logbbm/lbprocess.hpp"

namespace logbbm {

namespace {

double grid_value(const std::vector<double>& xs, const std::vector<double>& fs, double x) {
  if (x <= xs.front()) return fs.front();
  if (x >= xs.back()) return fs.back();
  const auto it = std::upper_bound(xs.begin(), xs.end(), x);
  const std::size_t hi = static_cast<std::size_t>(it - xs.begin());
  const std::size_t lo = hi - 1;
  const double span = xs[hi] - xs[lo];
  if (span <= 0.0) return fs[lo];
  const double w = (x - xs[lo]) / span;
  return fs[lo] * (1.0 - w) + fs[hi] * w;
}

EmpiricalMeasure make_measure(std::vector<double>&& atoms, Normalization norm,
                              double c_eff) {
  EmpiricalMeasure m;
  m.normalization = norm;
  std::sort(atoms.begin(), atoms.end());
  m.atoms = std::move(atoms);
  if (norm == Normalization::kCount) {
    if (m.atoms.empty()) {
      throw std::invalid_argument("count normalization needs at least one atom");
    }
    m.weight_per_atom = 1.0 / static_cast<double>(m.atoms.size());
  } else {
    if (c_eff <= 0.0) {
      throw std::invalid_argument("mass normalization needs a positive competition rate");
    }
    m.weight_per_atom = 1.0 / stationary_mean(c_eff);
  }
  return m;
}

}  // namespace

EmpiricalMeasure empirical_measure(const PopulationState& state, Normalization norm) {
  return make_measure(state.blue_positions_sorted(), norm, state.c_eff);
}

EmpiricalMeasure empirical_measure(std::vector<double> positions, Normalization norm,
                                   double c_eff) {
  return make_measure(std::move(positions), norm, c_eff);
}

double StepCdf::value(double x) const {
  const auto it = std::upper_bound(jump_points.begin(), jump_points.end(), x);
  if (it == jump_points.begin()) return 0.0;
  return cumulative[static_cast<std::size_t>(it - jump_points.begin()) - 1];
}

double StepCdf::left_limit(double x) const {
  const auto it = std::lower_bound(jump_points.begin(), jump_points.end(), x);
  if (it == jump_points.begin()) return 0.0;
  return cumulative[static_cast<std::size_t>(it - jump_points.begin()) - 1];
}

StepCdf cdf(const EmpiricalMeasure& measure) {
  StepCdf out;
  out.jump_points.reserve(measure.atoms.size());
  out.cumulative.reserve(measure.atoms.size());
  std::size_t i = 0;
  std::size_t seen = 0;
  while (i < measure.atoms.size()) {
    const double x = measure.atoms[i];
    std::size_t j = i;
    while (j < measure.atoms.size() && measure.atoms[j] == x) ++j;
    seen = j;
    out.jump_points.push_back(x);
    out.cumulative.push_back(measure.weight_per_atom * static_cast<double>(seen));
    i = j;
  }
  return out;
}

double empirical_mean(const EmpiricalMeasure& measure) {
  if (measure.normalization != Normalization::kCount) {
    throw std::invalid_argument("empirical_mean requires count normalization");
  }
  double sum = 0.0;
  for (const double x : measure.atoms) sum += x;
  return sum / static_cast<double>(measure.atoms.size());
}

double sup_distance(const StepCdf& a, const StepCdf& b) {
  double best = 0.0;
  const auto probe = [&](double x) {
    best = std::max(best, std::abs(a.value(x) - b.value(x)));
    best = std::max(best, std::abs(a.left_limit(x) - b.left_limit(x)));
  };
  for (const double x : a.jump_points) probe(x);
  for (const double x : b.jump_points) probe(x);
  // Tail discrepancy when total masses differ.
  best = std::max(best, std::abs(a.total_mass() - b.total_mass()));
  return best;
}

double sup_distance(const StepCdf& a, const std::vector<double>& grid_x,
                    const std::vector<double>& grid_f) {
  if (grid_x.size() != grid_f.size() || grid_x.size() < 2) {
    throw std::invalid_argument("grid function needs matching xs/fs with >= 2 nodes");
  }
  double best = 0.0;
  const auto probe_step_jump = [&](double x) {
    const double g = grid_value(grid_x, grid_f, x);
    best = std::max(best, std::abs(a.value(x) - g));
    best = std::max(best, std::abs(a.left_limit(x) - g));
  };
  for (const double x : a.jump_points) probe_step_jump(x);
  for (std::size_t i = 0; i < grid_x.size(); ++i) {
    best = std::max(best, std::abs(a.value(grid_x[i]) - grid_f[i]));
  }
  // Right of every candidate point both functions are flat.
  best = std::max(best, std::abs(a.total_mass() - grid_f.back()));
  return best;
}

std::vector<double> histogram_density(const EmpiricalMeasure& measure,
                                      const std::vector<double>& bin_edges) {
  if (bin_edges.size() < 2) {
    throw std::invalid_argument("histogram needs at least two bin edges");
  }
  std::vector<double> density(bin_edges.size() - 1, 0.0);
  for (const double x : measure.atoms) {
    if (x < bin_edges.front() || x >= bin_edges.back()) continue;
    const auto it = std::upper_bound(bin_edges.begin(), bin_edges.end(), x);
    const std::size_t bin = static_cast<std::size_t>(it - bin_edges.begin()) - 1;
    density[bin] += measure.weight_per_atom;
  }
  for (std::size_t i = 0; i + 1 < bin_edges.size(); ++i) {
    const double width = bin_edges[i + 1] - bin_edges[i];
    if (width <= 0.0) throw std::invalid_argument("bin edges must increase");
    density[i] /= width;
  }
  return density;
}

}  // namespace logbbm
