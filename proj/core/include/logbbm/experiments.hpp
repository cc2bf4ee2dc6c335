#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "logbbm/fkpp.hpp"
#include "logbbm/measures.hpp"
#include "logbbm/simulator.hpp"

namespace logbbm {

// ---- renewal structure and velocity ------------------------------------------
//
// Cycles start from a single particle at the origin.  A holding variable
// eps ~ Exp(1) is drawn first and the cycle ends at the first time >= eps at
// which the population count is one; without the holding variable the end
// would trivially coincide with the start.  The survivor's position at that
// time is the cycle displacement, and restarting at the origin makes cycles
// i.i.d. (the dynamics are translation invariant).

struct RenewalRecord {
  double duration = 0.0;      // T
  double displacement = 0.0;  // survivor position at T
  double running_max = 0.0;   // max position sampled at event times (diagnostic)
  std::uint64_t n_events = 0;
  std::size_t cycle_index = 0;
};

struct VelocityEstimate {
  double c = 0.0;
  double v_hat = 0.0;
  double std_error = 0.0;
  double horizon = 0.0;  // cycle count (renewal) or time horizon (direct)
  std::string method;    // "renewal" | "direct-max" | "direct-min"
};

RenewalRecord sample_renewal_cycle(double c, Rng& rng,
                                   std::uint64_t event_budget = 50'000'000);

// One child RNG stream per cycle index, so results are independent of thread
// scheduling.
std::vector<RenewalRecord> sample_renewal_cycles(double c, std::size_t n_cycles,
                                                 std::uint64_t seed,
                                                 std::uint64_t event_budget = 50'000'000);

// v_hat = mean(displacement) / mean(duration); the standard error comes from
// the delta method on the joint cycle-level covariance.
VelocityEstimate velocity_from_cycles(double c, const std::vector<RenewalRecord>& cycles);

VelocityEstimate velocity_renewal(double c, std::size_t n_cycles, std::uint64_t seed);

struct DirectVelocity {
  VelocityEstimate max_based;
  VelocityEstimate min_based;
};

// Ratio-to-horizon estimates of the front speed from the extreme positions at
// t_horizon (>= 50), one replicate per child stream.
DirectVelocity velocity_direct(double c, double t_horizon, std::size_t replicates,
                               std::uint64_t seed,
                               std::uint64_t max_particles = 10'000'000);

// ---- hydrodynamic limit -------------------------------------------------------

struct HydroConfig {
  double c = 1.0;
  std::vector<std::uint32_t> K_list;
  double t = 1.0;
  std::size_t replicates = 200;
  Grid1D grid{-8.0, 8.0, 321};
  double dt_factor = 0.9;  // PDE time step = dt_factor * dx^2
  Normalization normalization = Normalization::kMass;
  std::uint64_t seed = 1;
};

struct HydroResult {
  std::uint32_t K = 1;
  double t = 0.0;
  std::size_t replicates = 0;
  std::vector<double> grid_x;
  std::vector<double> mean_cdf;  // replicate average evaluated at the grid nodes
  std::vector<double> pde_cdf;
  double sup_dist = 0.0;       // max over grid nodes of |mean_cdf - pde_cdf|
  double sup_dist_se = 0.0;    // leave-one-replicate-out jackknife
};

// For each K: Log-BBM(1, c/K) started from a stationary count all at the
// origin, run to time t; the replicate-averaged normalized empirical CDF is
// compared on the grid against the PDE solution evolved from pde_initial.
// pde_initial must match the all-at-origin particle start (a Heaviside CDF
// with its jump at 0), or the study is rejected.
std::vector<HydroResult> hydrodynamic_study(const HydroConfig& config,
                                            const Field1D& pde_initial);

// ---- many-to-one --------------------------------------------------------------

enum class TestFunctional : std::uint8_t { kOne, kIdentity, kSquare };

struct ManyToOneResult {
  double lhs_mc = 0.0;  // mean over replicates of sum over particles of F
  double lhs_se = 0.0;
  double rhs_analytic = 0.0;  // e^t * Gaussian moment
  double z_score = 0.0;
};

// Pure branching (c = 0) from one particle at the origin: the expected
// population sum of F equals e^t times the single-Brownian expectation.
ManyToOneResult many_to_one_check(TestFunctional functional, double t,
                                  std::size_t replicates, std::uint64_t seed);

// ---- mean-CDF drift identity ---------------------------------------------------
//
// With F~ the count-normalized empirical CDF and N the population count, the
// mean CDF satisfies
//   d/dt E[F~(t,x)] = (1/2) d2/dx2 E[F~(t,x)] - E[ c_K N^2/(N-1) (F~ - F~^2) ],
// the kill term being zero at N = 1.  The check forms, per replicate along one
// trajectory, a central time difference, a least-squares curvature over a
// 5-point probe stencil, and the kill term, and z-tests the mean residual
// against zero.

struct DriftCheckConfig {
  double c = 1.0;
  std::uint32_t K = 1;
  double x_probe = 0.0;
  double t = 1.0;
  double dt_probe = 0.05;
  double dx_probe = 0.2;
  std::size_t replicates = 100'000;
  std::uint64_t n0 = 1;  // initial particles, all at the origin
  std::uint64_t seed = 1;
  // Reject the run when the residual's standard error exceeds this (the
  // stencil is then below the Monte Carlo noise floor).
  double max_std_error = 0.1;
};

struct DriftCheckResult {
  double mean_residual = 0.0;
  double se_residual = 0.0;
  double z_score = 0.0;
  double time_derivative = 0.0;  // decomposition, replicate means
  double half_curvature = 0.0;
  double kill_term = 0.0;
  double mean_cdf_at_probe = 0.0;  // E[F~(t, x_probe)] with its standard error,
  double se_cdf_at_probe = 0.0;    // for external closed-form comparisons
};

DriftCheckResult mean_cdf_drift_check(const DriftCheckConfig& config);

// Integrated form of the same identity: d/dt E[mean position] equals the
// expected gap-weighted kill sum  sum_j c_K j(N-j)/(N-1) gap_j.  Both sides
// are estimated on paired replicates and the difference is z-tested.
struct MeanDriftCrossCheck {
  double fd_rate = 0.0;  // central difference of the replicate mean position
  double gap_rate = 0.0; // gap-weighted kill sum at time t
  double diff_se = 0.0;  // paired standard error of (fd - gap)
  double z_score = 0.0;
};

MeanDriftCrossCheck mean_drift_gap_route(const DriftCheckConfig& config);

}  // namespace logbbm
