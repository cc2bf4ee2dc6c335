#include "logbbm/lbprocess.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace logbbm {

LbRates transition_rates(std::uint64_t n, const LbParams& params) {
  if (n == 0) throw std::invalid_argument("transition_rates: chain undefined below 1");
  if (params.c < 0.0) throw std::invalid_argument("transition_rates: c must be >= 0");
  LbRates r;
  const double nd = static_cast<double>(n);
  r.birth = params.birth_rate * nd;
  r.death = params.c * nd * (nd - 1.0);
  return r;
}

double stationary_pmf(double c, std::uint64_t k) {
  if (!(c > 0.0)) throw std::invalid_argument("stationary_pmf: c must be > 0");
  if (k == 0) throw std::invalid_argument("stationary_pmf: support starts at 1");
  const double kd = static_cast<double>(k);
  // log of e^{-1/c}/(1-e^{-1/c}); -expm1 keeps 1-e^{-1/c} accurate for large c
  const double log_norm = -1.0 / c - std::log(-std::expm1(-1.0 / c));
  const double log_pmf = -kd * std::log(c) - std::lgamma(kd + 1.0) + log_norm;
  return std::exp(log_pmf);
}

double stationary_mean(double c) {
  if (!(c > 0.0)) throw std::invalid_argument("stationary_mean: c must be > 0");
  return 1.0 / (c * (-std::expm1(-1.0 / c)));
}

std::uint64_t sample_stationary(double c, Rng& rng) {
  if (!(c > 0.0)) throw std::invalid_argument("sample_stationary: c must be > 0");
  return rng.poisson_positive(1.0 / c);
}

LbTrajectory simulate_lb_chain(const LbParams& params, std::uint64_t n0, double t_end,
                               Rng& rng, std::uint64_t max_size) {
  if (n0 == 0) throw std::invalid_argument("simulate_lb_chain: n0 must be >= 1");
  if (!(t_end > 0.0)) throw std::invalid_argument("simulate_lb_chain: t_end must be > 0");
  LbTrajectory traj;
  traj.n0 = n0;
  traj.t_end = t_end;
  std::uint64_t n = n0;
  double t = 0.0;
  for (;;) {
    const LbRates r = transition_rates(n, params);
    const double total = r.birth + r.death;
    if (total <= 0.0) break;  // unreachable with birth_rate > 0; guards custom params
    t += rng.exponential(total);
    if (t > t_end) break;
    if (rng.uniform01() * total < r.birth) {
      ++n;
      if (n > max_size)
        throw std::runtime_error("simulate_lb_chain: population exceeded cap " +
                                 std::to_string(max_size) + " at t=" + std::to_string(t));
    } else {
      --n;  // death rate vanishes at n=1, so n stays >= 1
    }
    traj.event_times.push_back(t);
    traj.sizes.push_back(n);
  }
  return traj;
}

LbTrajectory simulate_lb_chain(const LbParams& params, std::uint64_t n0, double t_end,
                               std::uint64_t seed, std::uint64_t max_size) {
  Rng rng(seed);
  LbTrajectory traj = simulate_lb_chain(params, n0, t_end, rng, max_size);
  traj.seed = seed;
  return traj;
}

std::vector<double> occupation_pmf(const LbTrajectory& traj, double burn_in) {
  if (burn_in < 0.0 || burn_in >= traj.t_end)
    throw std::invalid_argument("occupation_pmf: burn_in outside [0, t_end)");
  std::vector<double> weights;
  auto deposit = [&](std::uint64_t size, double from, double to) {
    const double lo = std::max(from, burn_in);
    const double hi = std::min(to, traj.t_end);
    if (hi <= lo) return;
    if (size > weights.size()) weights.resize(size, 0.0);
    weights[size - 1] += hi - lo;
  };
  std::uint64_t n = traj.n0;
  double t = 0.0;
  for (std::size_t i = 0; i < traj.event_times.size(); ++i) {
    deposit(n, t, traj.event_times[i]);
    t = traj.event_times[i];
    n = traj.sizes[i];
  }
  deposit(n, t, traj.t_end);
  const double total = traj.t_end - burn_in;
  for (auto& w : weights) w /= total;
  return weights;
}

double occupation_mean(const LbTrajectory& traj, double burn_in) {
  const std::vector<double> pmf = occupation_pmf(traj, burn_in);
  double m = 0.0;
  for (std::size_t i = 0; i < pmf.size(); ++i)
    m += static_cast<double>(i + 1) * pmf[i];
  return m;
}

}  // namespace logbbm
