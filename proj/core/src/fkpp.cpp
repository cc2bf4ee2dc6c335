#include "logbbm/fkpp.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

namespace logbbm {

namespace {

constexpr double kTimeMergeTol = 1e-12;

void check_field(const Field1D& f, FieldRole expected) {
  f.grid.validate();
  if (f.values.size() != f.grid.n_nodes) {
    throw std::invalid_argument("field value count does not match the grid");
  }
  if (f.role != expected) {
    throw std::invalid_argument("field role does not match the solver");
  }
  for (const double v : f.values) {
    if (!std::isfinite(v)) throw std::invalid_argument("field values must be finite");
    // Rounding-level excursions (integrated densities) are tolerated and
    // clamped by the solvers on entry.
    if (expected == FieldRole::kCdf) {
      if (v < -1e-9 || v > 1.0 + 1e-9) {
        throw std::invalid_argument("cdf field values must lie in [0,1]");
      }
    } else if (v < -1e-9) {
      throw std::invalid_argument("density field values must be nonnegative");
    }
  }
}

void check_cfl(double dt, double dx) {
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  if (dt > 0.9 * dx * dx * (1.0 + 1e-9)) {
    throw std::invalid_argument("dt exceeds the stability bound 0.9*dx^2 (dt=" +
                                std::to_string(dt) + ", dx=" + std::to_string(dx) + ")");
  }
}

struct Target {
  double time;
  bool tick;
  bool snap;
};

// Tick times for trace/guard sampling merged with requested snapshot times;
// t_end always carries both flags.  Times within 1e-12 collapse, snapshot
// times winning the label.
std::vector<Target> build_targets(double t0, double t_end,
                                  const std::vector<double>& snaps, double tick) {
  if (!(t_end > t0)) throw std::invalid_argument("t_end must exceed the field time");
  if (!(tick > 0.0)) throw std::invalid_argument("tick_interval must be positive");
  std::vector<Target> v;
  for (std::size_t k = 1;; ++k) {
    const double t = t0 + tick * static_cast<double>(k);
    if (t >= t_end - kTimeMergeTol) break;
    v.push_back({t, true, false});
  }
  for (const double s : snaps) {
    if (s < t0 - kTimeMergeTol || s > t_end + kTimeMergeTol) {
      throw std::invalid_argument("snapshot time outside the run interval");
    }
    if (s <= t0 + kTimeMergeTol || s >= t_end - kTimeMergeTol) continue;
    v.push_back({s, false, true});
  }
  v.push_back({t_end, true, true});
  std::sort(v.begin(), v.end(),
            [](const Target& a, const Target& b) { return a.time < b.time; });
  std::vector<Target> merged;
  for (const Target& tg : v) {
    if (!merged.empty() && tg.time - merged.back().time <= kTimeMergeTol) {
      if (tg.snap && !merged.back().snap) merged.back().time = tg.time;
      merged.back().tick |= tg.tick;
      merged.back().snap |= tg.snap;
    } else {
      merged.push_back(tg);
    }
  }
  return merged;
}

bool wants_initial_snapshot(double t0, const std::vector<double>& snaps) {
  for (const double s : snaps) {
    if (std::abs(s - t0) <= kTimeMergeTol) return true;
  }
  return false;
}

std::optional<double> try_front(const Grid1D& g, const std::vector<double>& values,
                                double level) {
  for (std::size_t i = 0; i + 1 < values.size(); ++i) {
    if (values[i] < level && values[i + 1] >= level) {
      const double frac = (level - values[i]) / (values[i + 1] - values[i]);
      return g.x(i) + g.dx() * frac;
    }
  }
  return std::nullopt;
}

void guard_front(const Grid1D& g, double front) {
  const double margin = 10.0 * g.dx();
  if (front < g.x_min + margin || front > g.x_max - margin) {
    throw std::runtime_error("front at x=" + std::to_string(front) +
                             " is within 10*dx of the domain boundary; enlarge the domain");
  }
}

double trapezoid(const std::vector<double>& values, double dx) {
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < values.size(); ++i) {
    sum += 0.5 * (values[i] + values[i + 1]);
  }
  return sum * dx;
}

}  // namespace

void Grid1D::validate() const {
  if (n_nodes < 3) throw std::invalid_argument("grid needs at least 3 nodes");
  if (!(x_min < x_max)) throw std::invalid_argument("grid needs x_min < x_max");
  if (!std::isfinite(x_min) || !std::isfinite(x_max)) {
    throw std::invalid_argument("grid bounds must be finite");
  }
}

CdfSolution solve_fkpp_cdf(const Field1D& ic, double t_end, double dt,
                           const std::vector<double>& snapshot_times,
                           double tick_interval, double front_level) {
  check_field(ic, FieldRole::kCdf);
  if (!(front_level > 0.0 && front_level < 1.0)) {
    throw std::invalid_argument("front level must lie strictly inside (0,1)");
  }
  const Grid1D& g = ic.grid;
  const double dx = g.dx();
  const std::size_t n = g.n_nodes;
  check_cfl(dt, dx);

  CdfSolution out;
  out.front.level = front_level;
  std::vector<double> u = ic.values;
  for (double& v : u) v = std::min(1.0, std::max(0.0, v));
  std::vector<double> next(n);
  // Endpoints are held at their initial values for the whole run.
  const double left = u.front();
  const double right = u.back();
  double t = ic.time;

  const auto sample_front = [&]() {
    const auto cross = try_front(g, u, front_level);
    if (!cross) return;  // degenerate fields never outrun the domain
    guard_front(g, *cross);
    out.front.times.push_back(t);
    out.front.positions.push_back(*cross);
  };

  if (wants_initial_snapshot(t, snapshot_times)) {
    out.snapshots.push_back(Field1D{g, u, FieldRole::kCdf, t});
  }
  sample_front();

  const auto step = [&](double h) {
    const double alpha = 0.5 * h / (dx * dx);
    for (std::size_t i = 1; i + 1 < n; ++i) {
      double v = u[i] + alpha * (u[i + 1] - 2.0 * u[i] + u[i - 1]) -
                 h * u[i] * (1.0 - u[i]);
      if (v < 0.0) {
        out.clamps.count++;
        out.clamps.max_magnitude = std::max(out.clamps.max_magnitude, -v);
        v = 0.0;
      } else if (v > 1.0) {
        out.clamps.count++;
        out.clamps.max_magnitude = std::max(out.clamps.max_magnitude, v - 1.0);
        v = 1.0;
      }
      next[i] = v;
    }
    next[0] = left;
    next[n - 1] = right;
    u.swap(next);
  };

  for (const Target& tg : build_targets(t, t_end, snapshot_times, tick_interval)) {
    while (t < tg.time) {
      const double h = std::min(dt, tg.time - t);
      if (!(t + h > t)) break;
      step(h);
      t += h;
    }
    t = tg.time;
    if (tg.tick) sample_front();
    if (tg.snap) out.snapshots.push_back(Field1D{g, u, FieldRole::kCdf, t});
  }
  return out;
}

DensitySolution solve_fkpp_nonlocal_density(const Field1D& ic, double t_end, double dt,
                                            const std::vector<double>& snapshot_times,
                                            double tick_interval, double mass_tolerance) {
  check_field(ic, FieldRole::kDensity);
  if (!(mass_tolerance > 0.0)) throw std::invalid_argument("mass tolerance must be positive");
  const Grid1D& g = ic.grid;
  const double dx = g.dx();
  const std::size_t n = g.n_nodes;
  check_cfl(dt, dx);

  DensitySolution out;
  std::vector<double> u = ic.values;
  for (double& v : u) v = std::max(0.0, v);
  std::vector<double> next(n);
  std::vector<double> suffix(n);
  double t = ic.time;
  const double t0 = t;
  const double m0 = trapezoid(u, dx);

  // Total mass follows dm/dt = m(1-m) exactly at the continuum level; drift
  // from this curve signals a resolution failure and aborts the run.
  const auto check_mass = [&]() {
    const double mass = trapezoid(u, dx);
    const double et = std::exp(t - t0);
    const double expected = m0 * et / (1.0 - m0 + m0 * et);
    if (std::abs(mass - expected) > mass_tolerance) {
      throw std::runtime_error("trapezoid mass " + std::to_string(mass) +
                               " drifted from the logistic prediction " +
                               std::to_string(expected) + " at t=" + std::to_string(t));
    }
    out.mass_times.push_back(t);
    out.masses.push_back(mass);
  };

  if (wants_initial_snapshot(t, snapshot_times)) {
    out.snapshots.push_back(Field1D{g, u, FieldRole::kDensity, t});
  }
  check_mass();

  const auto step = [&](double h) {
    suffix[n - 1] = 0.0;
    for (std::size_t i = n - 1; i-- > 0;) {
      suffix[i] = suffix[i + 1] + 0.5 * (u[i] + u[i + 1]) * dx;
    }
    const double alpha = 0.5 * h / (dx * dx);
    for (std::size_t i = 1; i + 1 < n; ++i) {
      double v = u[i] + alpha * (u[i + 1] - 2.0 * u[i] + u[i - 1]) +
                 h * u[i] * (1.0 - 2.0 * suffix[i]);
      if (v < 0.0) {
        out.clamps.count++;
        out.clamps.max_magnitude = std::max(out.clamps.max_magnitude, -v);
        v = 0.0;
      }
      next[i] = v;
    }
    next[0] = 0.0;
    next[n - 1] = 0.0;
    u.swap(next);
  };

  for (const Target& tg : build_targets(t, t_end, snapshot_times, tick_interval)) {
    while (t < tg.time) {
      const double h = std::min(dt, tg.time - t);
      if (!(t + h > t)) break;
      step(h);
      t += h;
    }
    t = tg.time;
    if (tg.tick) check_mass();
    if (tg.snap) out.snapshots.push_back(Field1D{g, u, FieldRole::kDensity, t});
  }
  return out;
}

double front_position(const Field1D& field, double level) {
  check_field(field, FieldRole::kCdf);
  const auto cross = try_front(field.grid, field.values, level);
  if (!cross) throw std::invalid_argument("field never crosses the requested level");
  return *cross;
}

LinearFit front_speed(const FrontTrace& trace, double t_lo, double t_hi) {
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < trace.times.size(); ++i) {
    if (trace.times[i] >= t_lo && trace.times[i] <= t_hi) {
      xs.push_back(trace.times[i]);
      ys.push_back(trace.positions[i]);
    }
  }
  if (xs.size() < 10) {
    throw std::invalid_argument("front speed fit needs at least 10 samples in the window");
  }
  return fit_line(xs, ys);
}

double bramson_fit(const FrontTrace& trace, double t_lo, double t_hi) {
  const double sqrt2 = std::sqrt(2.0);
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < trace.times.size(); ++i) {
    const double t = trace.times[i];
    if (t >= t_lo && t <= t_hi && t > 0.0) {
      xs.push_back(std::log(t));
      ys.push_back(trace.positions[i] - sqrt2 * t);
    }
  }
  if (xs.size() < 10) {
    throw std::invalid_argument("log-correction fit needs at least 10 samples in the window");
  }
  return fit_line(xs, ys).slope;
}

double wave_integral_identity(const Field1D& field) {
  check_field(field, FieldRole::kCdf);
  const auto cross = try_front(field.grid, field.values, 0.5);
  if (!cross) throw std::invalid_argument("field is not a developed front");
  guard_front(field.grid, *cross);
  std::vector<double> integrand(field.values.size());
  for (std::size_t i = 0; i < field.values.size(); ++i) {
    integrand[i] = field.values[i] * (1.0 - field.values[i]);
  }
  return trapezoid(integrand, field.grid.dx());
}

double trapezoid_mass(const Field1D& field) {
  field.grid.validate();
  if (field.values.size() != field.grid.n_nodes) {
    throw std::invalid_argument("field value count does not match the grid");
  }
  return trapezoid(field.values, field.grid.dx());
}

Field1D heaviside_cdf(const Grid1D& grid, double x0) {
  grid.validate();
  Field1D f{grid, std::vector<double>(grid.n_nodes, 0.0), FieldRole::kCdf, 0.0};
  for (std::size_t i = 0; i < grid.n_nodes; ++i) {
    f.values[i] = grid.x(i) >= x0 ? 1.0 : 0.0;
  }
  return f;
}

Field1D gaussian_density(const Grid1D& grid, double mean, double sd) {
  grid.validate();
  if (!(sd > 0.0)) throw std::invalid_argument("standard deviation must be positive");
  Field1D f{grid, std::vector<double>(grid.n_nodes, 0.0), FieldRole::kDensity, 0.0};
  for (std::size_t i = 0; i < grid.n_nodes; ++i) {
    const double z = (grid.x(i) - mean) / sd;
    f.values[i] = std::exp(-0.5 * z * z);
  }
  // Normalized to unit trapezoid mass on this grid, not the analytic constant.
  const double mass = trapezoid(f.values, grid.dx());
  if (!(mass > 0.0)) throw std::invalid_argument("density vanishes on the grid");
  for (double& v : f.values) v /= mass;
  return f;
}

Field1D integrate_density(const Field1D& density) {
  check_field(density, FieldRole::kDensity);
  const double dx = density.grid.dx();
  Field1D out{density.grid, std::vector<double>(density.values.size(), 0.0),
              FieldRole::kCdf, density.time};
  double acc = 0.0;
  for (std::size_t i = 1; i < density.values.size(); ++i) {
    acc += 0.5 * (density.values[i - 1] + density.values[i]) * dx;
    out.values[i] = acc;
  }
  return out;
}

}  // namespace logbbm
