#include "logbbm/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "logbbm/lbprocess.hpp"
#include "logbbm/parallel.hpp"
#include "logbbm/stats.hpp"

namespace logbbm {

namespace {

double max_alive_position(const PopulationState& s) {
  double m = -std::numeric_limits<double>::infinity();
  for (auto i : s.alive_blue) m = std::max(m, s.particles[i].position);
  return m;
}

double min_alive_position(const PopulationState& s) {
  double m = std::numeric_limits<double>::infinity();
  for (auto i : s.alive_blue) m = std::min(m, s.particles[i].position);
  return m;
}

// Count-normalized empirical CDF of the alive blue population at x; positions
// must be realized at the state's current time.
double empirical_cdf_at(const PopulationState& s, double x) {
  std::size_t cnt = 0;
  for (auto i : s.alive_blue) {
    if (s.particles[i].position <= x) ++cnt;
  }
  return static_cast<double>(cnt) / static_cast<double>(s.alive_blue.size());
}

double mean_alive_position(const PopulationState& s) {
  double sum = 0.0;
  for (auto i : s.alive_blue) sum += s.particles[i].position;
  return sum / static_cast<double>(s.alive_blue.size());
}

}  // namespace

RenewalRecord sample_renewal_cycle(double c, Rng& rng, std::uint64_t event_budget) {
  if (!(c > 0.0)) throw std::invalid_argument("renewal cycles require c > 0");
  SimConfig cfg;
  cfg.c = c;
  cfg.t_end = 1.0;  // unused; the cycle is driven event by event
  cfg.init_positions = {0.0};
  PopulationState s = init_system(cfg, rng);

  RenewalRecord rec;
  const double eps = rng.exponential(1.0);
  run_until(s, eps, rng);
  rec.running_max = max_alive_position(s);
  // First time >= eps at which the count is one; counts change only at events,
  // so past eps it suffices to stop at the first event leaving one survivor.
  while (s.alive_count_blue() != 1) {
    advance_to_next_event(s, rng);
    rec.n_events = s.births + s.deaths;
    if (rec.n_events > event_budget) {
      throw std::runtime_error("renewal cycle at c=" + std::to_string(c) +
                               " exceeded the event budget of " +
                               std::to_string(event_budget) +
                               " events by t=" + std::to_string(s.time));
    }
    // The running max is sampled at event times only, which underestimates the
    // continuous-time maximum; it is a diagnostic, not an estimator.
    realize_positions(s, rng);
    rec.running_max = std::max(rec.running_max, max_alive_position(s));
  }
  rec.n_events = s.births + s.deaths;
  rec.duration = s.time;
  rec.displacement = s.particles[s.alive_blue.front()].position;
  return rec;
}

std::vector<RenewalRecord> sample_renewal_cycles(double c, std::size_t n_cycles,
                                                 std::uint64_t seed,
                                                 std::uint64_t event_budget) {
  if (n_cycles == 0) throw std::invalid_argument("need at least one cycle");
  std::vector<RenewalRecord> out(n_cycles);
  parallel_for(n_cycles, [&](std::uint64_t i) {
    Rng rng(Rng::child_seed(seed, i));
    out[i] = sample_renewal_cycle(c, rng, event_budget);
    out[i].cycle_index = i;
  });
  return out;
}

VelocityEstimate velocity_from_cycles(double c, const std::vector<RenewalRecord>& cycles) {
  const std::size_t n = cycles.size();
  if (n < 2) throw std::invalid_argument("velocity needs at least 2 cycles");
  double mean_m = 0.0, mean_t = 0.0;
  for (const auto& r : cycles) {
    mean_m += r.displacement;
    mean_t += r.duration;
  }
  mean_m /= static_cast<double>(n);
  mean_t /= static_cast<double>(n);
  double s_mm = 0.0, s_tt = 0.0, s_mt = 0.0;
  for (const auto& r : cycles) {
    const double dm = r.displacement - mean_m;
    const double dt = r.duration - mean_t;
    s_mm += dm * dm;
    s_tt += dt * dt;
    s_mt += dm * dt;
  }
  const double denom = static_cast<double>(n - 1);
  s_mm /= denom;
  s_tt /= denom;
  s_mt /= denom;

  VelocityEstimate est;
  est.c = c;
  est.v_hat = mean_m / mean_t;
  const double var_v = (s_mm - 2.0 * est.v_hat * s_mt + est.v_hat * est.v_hat * s_tt) /
                       (static_cast<double>(n) * mean_t * mean_t);
  est.std_error = std::sqrt(std::max(0.0, var_v));
  est.horizon = static_cast<double>(n);
  est.method = "renewal";
  return est;
}

VelocityEstimate velocity_renewal(double c, std::size_t n_cycles, std::uint64_t seed) {
  if (n_cycles < 100) throw std::invalid_argument("velocity_renewal needs >= 100 cycles");
  return velocity_from_cycles(c, sample_renewal_cycles(c, n_cycles, seed));
}

DirectVelocity velocity_direct(double c, double t_horizon, std::size_t replicates,
                               std::uint64_t seed, std::uint64_t max_particles) {
  if (c < 0.0) throw std::invalid_argument("velocity_direct: c must be >= 0");
  if (!(t_horizon >= 50.0)) {
    throw std::invalid_argument("velocity_direct: t_horizon must be >= 50");
  }
  if (replicates < 2) throw std::invalid_argument("velocity_direct: need >= 2 replicates");

  std::vector<double> maxs(replicates), mins(replicates);
  parallel_for(replicates, [&](std::uint64_t r) {
    Rng rng(Rng::child_seed(seed, r));
    SimConfig cfg;
    cfg.c = c;
    cfg.t_end = t_horizon;
    cfg.init_positions = {0.0};
    cfg.max_particles = max_particles;
    PopulationState s = init_system(cfg, rng);
    run_until(s, t_horizon, rng);
    maxs[r] = max_alive_position(s);
    mins[r] = min_alive_position(s);
  });

  RunningStat hi, lo;
  for (std::size_t r = 0; r < replicates; ++r) {
    hi.add(maxs[r]);
    lo.add(mins[r]);
  }
  DirectVelocity out;
  out.max_based = {c, hi.mean / t_horizon, hi.se_mean() / t_horizon, t_horizon,
                   "direct-max"};
  out.min_based = {c, lo.mean / t_horizon, lo.se_mean() / t_horizon, t_horizon,
                   "direct-min"};
  return out;
}

std::vector<HydroResult> hydrodynamic_study(const HydroConfig& config,
                                            const Field1D& pde_initial) {
  if (config.K_list.empty()) throw std::invalid_argument("hydro: K_list is empty");
  if (config.replicates < 2) throw std::invalid_argument("hydro: need >= 2 replicates");
  if (config.t < 0.0) throw std::invalid_argument("hydro: t must be >= 0");
  if (!(config.c > 0.0)) throw std::invalid_argument("hydro: c must be > 0");
  config.grid.validate();
  for (const auto K : config.K_list) {
    if (K == 0) throw std::invalid_argument("hydro: K must be >= 1");
  }

  const std::size_t nn = config.grid.n_nodes;
  if (pde_initial.role != FieldRole::kCdf || pde_initial.values.size() != nn ||
      pde_initial.grid.x_min != config.grid.x_min ||
      pde_initial.grid.x_max != config.grid.x_max ||
      pde_initial.grid.n_nodes != nn) {
    throw std::invalid_argument("hydro: PDE initial field must be a CDF on the study grid");
  }
  // Particles start all at the origin, so the matching PDE start is the
  // Heaviside CDF jumping at 0.
  for (std::size_t i = 0; i < nn; ++i) {
    const double want = config.grid.x(i) >= 0.0 ? 1.0 : 0.0;
    if (pde_initial.values[i] != want) {
      throw std::invalid_argument(
          "hydro: PDE initial condition does not match the all-at-origin particle start");
    }
  }

  std::vector<double> pde_vals;
  if (config.t == 0.0) {
    pde_vals = pde_initial.values;
  } else {
    const double dx = config.grid.dx();
    CdfSolution sol =
        solve_fkpp_cdf(pde_initial, config.t, config.dt_factor * dx * dx, {config.t});
    pde_vals = sol.snapshots.back().values;
  }

  std::vector<double> grid_x(nn);
  for (std::size_t i = 0; i < nn; ++i) grid_x[i] = config.grid.x(i);

  std::vector<HydroResult> results;
  results.reserve(config.K_list.size());
  for (std::size_t ki = 0; ki < config.K_list.size(); ++ki) {
    const std::uint32_t K = config.K_list[ki];
    const std::uint64_t k_seed = Rng::child_seed(config.seed, ki);
    const std::size_t reps = config.replicates;
    std::vector<double> node_vals(reps * nn);

    parallel_for(reps, [&](std::uint64_t r) {
      Rng rng(Rng::child_seed(k_seed, r));
      SimConfig scfg;
      scfg.c = config.c;
      scfg.K = K;
      scfg.t_end = std::max(config.t, 1.0);
      scfg.n0 = 0;  // stationary count at rate c/K
      PopulationState s = init_system(scfg, rng);
      run_until(s, config.t, rng);
      const StepCdf sc = cdf(empirical_measure(s, config.normalization));
      for (std::size_t i = 0; i < nn; ++i) {
        node_vals[static_cast<std::size_t>(r) * nn + i] = sc.value(grid_x[i]);
      }
    });

    std::vector<double> sums(nn, 0.0);
    for (std::size_t r = 0; r < reps; ++r) {
      for (std::size_t i = 0; i < nn; ++i) sums[i] += node_vals[r * nn + i];
    }
    HydroResult res;
    res.K = K;
    res.t = config.t;
    res.replicates = reps;
    res.grid_x = grid_x;
    res.pde_cdf = pde_vals;
    res.mean_cdf.resize(nn);
    double sup = 0.0;
    for (std::size_t i = 0; i < nn; ++i) {
      res.mean_cdf[i] = sums[i] / static_cast<double>(reps);
      sup = std::max(sup, std::abs(res.mean_cdf[i] - pde_vals[i]));
    }
    res.sup_dist = sup;

    // Leave-one-out jackknife for the standard error of the sup statistic.
    std::vector<double> loo(reps);
    for (std::size_t r = 0; r < reps; ++r) {
      double d = 0.0;
      for (std::size_t i = 0; i < nn; ++i) {
        const double m = (sums[i] - node_vals[r * nn + i]) / static_cast<double>(reps - 1);
        d = std::max(d, std::abs(m - pde_vals[i]));
      }
      loo[r] = d;
    }
    double loo_mean = 0.0;
    for (const double d : loo) loo_mean += d;
    loo_mean /= static_cast<double>(reps);
    double ss = 0.0;
    for (const double d : loo) ss += (d - loo_mean) * (d - loo_mean);
    res.sup_dist_se =
        std::sqrt(ss * static_cast<double>(reps - 1) / static_cast<double>(reps));
    results.push_back(std::move(res));
  }
  return results;
}

ManyToOneResult many_to_one_check(TestFunctional functional, double t,
                                  std::size_t replicates, std::uint64_t seed) {
  if (!(t > 0.0)) throw std::invalid_argument("many_to_one_check: t must be > 0");
  if (replicates < 2) throw std::invalid_argument("many_to_one_check: need >= 2 replicates");

  std::vector<double> sums(replicates);
  parallel_for(replicates, [&](std::uint64_t r) {
    Rng rng(Rng::child_seed(seed, r));
    SimConfig cfg;
    cfg.c = 0.0;  // pure branching: every particle counts, none compete
    cfg.t_end = t;
    cfg.init_positions = {0.0};
    PopulationState s = init_system(cfg, rng);
    run_until(s, t, rng);
    double acc = 0.0;
    for (auto i : s.alive_blue) {
      const double x = s.particles[i].position;
      switch (functional) {
        case TestFunctional::kOne: acc += 1.0; break;
        case TestFunctional::kIdentity: acc += x; break;
        case TestFunctional::kSquare: acc += x * x; break;
      }
    }
    sums[r] = acc;
  });

  RunningStat st;
  for (const double v : sums) st.add(v);
  const double et = std::exp(t);
  double rhs = 0.0;
  switch (functional) {
    case TestFunctional::kOne: rhs = et; break;
    case TestFunctional::kIdentity: rhs = 0.0; break;
    case TestFunctional::kSquare: rhs = et * t; break;
  }
  ManyToOneResult res;
  res.lhs_mc = st.mean;
  res.lhs_se = st.se_mean();
  res.rhs_analytic = rhs;
  res.z_score = res.lhs_se > 0.0 ? (res.lhs_mc - rhs) / res.lhs_se : 0.0;
  return res;
}

namespace {

void validate_drift_config(const DriftCheckConfig& cfg) {
  if (cfg.c < 0.0) throw std::invalid_argument("drift check: c must be >= 0");
  if (cfg.K == 0) throw std::invalid_argument("drift check: K must be >= 1");
  if (!(cfg.dt_probe > 0.0)) throw std::invalid_argument("drift check: dt_probe must be > 0");
  if (!(cfg.t - cfg.dt_probe > 0.0)) {
    throw std::invalid_argument("drift check: t must exceed dt_probe");
  }
  if (!(cfg.dx_probe > 0.0)) throw std::invalid_argument("drift check: dx_probe must be > 0");
  if (cfg.replicates < 2) throw std::invalid_argument("drift check: need >= 2 replicates");
  if (cfg.n0 == 0) throw std::invalid_argument("drift check: n0 must be >= 1");
  if (!(cfg.max_std_error > 0.0)) {
    throw std::invalid_argument("drift check: max_std_error must be > 0");
  }
}

}  // namespace

DriftCheckResult mean_cdf_drift_check(const DriftCheckConfig& cfg) {
  validate_drift_config(cfg);
  const double c_k = cfg.c / static_cast<double>(cfg.K);
  const double h = cfg.dx_probe;
  const std::size_t reps = cfg.replicates;

  // Per replicate: one trajectory observed at t - dt, t, t + dt.
  std::vector<double> res_vals(reps), time_fd(reps), curv(reps), kill(reps), center(reps);
  parallel_for(reps, [&](std::uint64_t r) {
    Rng rng(Rng::child_seed(cfg.seed, r));
    SimConfig sc;
    sc.c = cfg.c;
    sc.K = cfg.K;
    sc.t_end = cfg.t + cfg.dt_probe;
    sc.n0 = cfg.n0;
    PopulationState s = init_system(sc, rng);

    run_until(s, cfg.t - cfg.dt_probe, rng);
    const double f_minus = empirical_cdf_at(s, cfg.x_probe);

    run_until(s, cfg.t, rng);
    const double n_alive = static_cast<double>(s.alive_count_blue());
    double stencil[5];
    for (int j = -2; j <= 2; ++j) {
      stencil[j + 2] = empirical_cdf_at(s, cfg.x_probe + h * static_cast<double>(j));
    }
    const double f0 = stencil[2];
    double w = 0.0;
    if (s.alive_count_blue() > 1) {
      w = c_k * n_alive * n_alive / (n_alive - 1.0) * (f0 - f0 * f0);
    }

    run_until(s, cfg.t + cfg.dt_probe, rng);
    const double f_plus = empirical_cdf_at(s, cfg.x_probe);

    const double a = (f_plus - f_minus) / (2.0 * cfg.dt_probe);
    // Least-squares quadratic curvature over the 5-point stencil.
    const double cv = (2.0 * stencil[0] - stencil[1] - 2.0 * stencil[2] - stencil[3] +
                       2.0 * stencil[4]) /
                      (7.0 * h * h);
    time_fd[r] = a;
    curv[r] = cv;
    kill[r] = w;
    center[r] = f0;
    res_vals[r] = a - 0.5 * cv + w;
  });

  RunningStat rs, as, cs, ws, fs;
  for (std::size_t r = 0; r < reps; ++r) {
    rs.add(res_vals[r]);
    as.add(time_fd[r]);
    cs.add(curv[r]);
    ws.add(kill[r]);
    fs.add(center[r]);
  }
  DriftCheckResult out;
  out.mean_residual = rs.mean;
  out.se_residual = rs.se_mean();
  if (out.se_residual > cfg.max_std_error) {
    throw std::runtime_error(
        "drift check: probe stencil is below the Monte Carlo noise floor (residual SE " +
        std::to_string(out.se_residual) + "); increase replicates or widen the probes");
  }
  out.z_score = out.se_residual > 0.0 ? out.mean_residual / out.se_residual : 0.0;
  out.time_derivative = as.mean;
  out.half_curvature = 0.5 * cs.mean;
  out.kill_term = ws.mean;
  out.mean_cdf_at_probe = fs.mean;
  out.se_cdf_at_probe = fs.se_mean();
  return out;
}

MeanDriftCrossCheck mean_drift_gap_route(const DriftCheckConfig& cfg) {
  validate_drift_config(cfg);
  const double c_k = cfg.c / static_cast<double>(cfg.K);
  const std::size_t reps = cfg.replicates;

  std::vector<double> fd_vals(reps), gap_vals(reps);
  parallel_for(reps, [&](std::uint64_t r) {
    Rng rng(Rng::child_seed(cfg.seed, r));
    SimConfig sc;
    sc.c = cfg.c;
    sc.K = cfg.K;
    sc.t_end = cfg.t + cfg.dt_probe;
    sc.n0 = cfg.n0;
    PopulationState s = init_system(sc, rng);

    run_until(s, cfg.t - cfg.dt_probe, rng);
    const double xbar_minus = mean_alive_position(s);

    run_until(s, cfg.t, rng);
    double g = 0.0;
    const std::size_t n_alive = s.alive_count_blue();
    if (n_alive > 1) {
      const std::vector<double> gap_vec = gaps(s);
      const double nd = static_cast<double>(n_alive);
      for (std::size_t i = 0; i < gap_vec.size(); ++i) {
        const double below = static_cast<double>(i + 1);
        g += c_k * below * (nd - below) / (nd - 1.0) * gap_vec[i];
      }
    }

    run_until(s, cfg.t + cfg.dt_probe, rng);
    const double xbar_plus = mean_alive_position(s);

    fd_vals[r] = (xbar_plus - xbar_minus) / (2.0 * cfg.dt_probe);
    gap_vals[r] = g;
  });

  RunningStat fd, gp, diff;
  for (std::size_t r = 0; r < reps; ++r) {
    fd.add(fd_vals[r]);
    gp.add(gap_vals[r]);
    diff.add(fd_vals[r] - gap_vals[r]);
  }
  MeanDriftCrossCheck out;
  out.fd_rate = fd.mean;
  out.gap_rate = gp.mean;
  out.diff_se = diff.se_mean();
  out.z_score = out.diff_se > 0.0 ? diff.mean / out.diff_se : 0.0;
  return out;
}

}  // namespace logbbm
