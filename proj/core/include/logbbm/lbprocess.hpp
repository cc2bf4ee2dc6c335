#pragma once

#include <cstdint>
#include <vector>

#include "logbbm/rng.hpp"

namespace logbbm {

// ---- population-size chain (birth n, death c*n*(n-1)) ----------------------

struct LbParams {
  double c = 1.0;           // competition rate per ordered pair
  double birth_rate = 1.0;  // per-particle branching rate
};

struct LbRates {
  double birth = 0.0;
  double death = 0.0;
};

// Jump-chain sample path.  sizes[i] is the population right after the i-th
// event; the chain holds n0 on [0, event_times[0]).
struct LbTrajectory {
  std::vector<double> event_times;
  std::vector<std::uint64_t> sizes;
  std::uint64_t n0 = 1;
  double t_end = 0.0;
  std::uint64_t seed = 0;
};

LbRates transition_rates(std::uint64_t n, const LbParams& params);

// Stationary pmf pi_k = c^{-k}/k! * e^{-1/c}/(1-e^{-1/c}), k >= 1.
// Log-space evaluation; stable for large k and for c near 0 or very large.
double stationary_pmf(double c, std::uint64_t k);

// Stationary mean 1/(c*(1-e^{-1/c})).
double stationary_mean(double c);

// Poisson(1/c) conditioned on being >= 1.
std::uint64_t sample_stationary(double c, Rng& rng);

constexpr std::uint64_t kDefaultPopulationCap = 10'000'000;

LbTrajectory simulate_lb_chain(const LbParams& params, std::uint64_t n0, double t_end,
                               Rng& rng, std::uint64_t max_size = kDefaultPopulationCap);
LbTrajectory simulate_lb_chain(const LbParams& params, std::uint64_t n0, double t_end,
                               std::uint64_t seed, std::uint64_t max_size = kDefaultPopulationCap);

// Time-weighted occupation frequencies over (burn_in, t_end]; entry k-1 is the
// fraction of time spent at population k.
std::vector<double> occupation_pmf(const LbTrajectory& traj, double burn_in = 0.0);

// Time-weighted mean population over (burn_in, t_end].
double occupation_mean(const LbTrajectory& traj, double burn_in = 0.0);

}  // namespace logbbm
