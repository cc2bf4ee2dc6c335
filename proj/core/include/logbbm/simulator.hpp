#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "logbbm/rng.hpp"

namespace logbbm {

// ---- spatial Log-BBM(1,c) ---------------------------------------------------
//
// Event-driven: one aggregate exponential clock with rate n + c_eff*n*(n-1)
// (n = alive blue count; in coupled mode the birth part counts red particles
// too), then a categorical event choice.  Positions are diffused lazily by
// exact Gaussian increments of the elapsed interval, so there is no time
// discretization anywhere in the particle system.

enum class Color : std::uint8_t { kBlue, kRed };

struct Particle {
  std::vector<std::uint32_t> label;  // Ulam-Harris path; label[0] = root index
  double position = 0.0;
  double birth_time = 0.0;
  double last_update = 0.0;  // position is exact as of this time
  double death_time = -1.0;  // < 0 while alive; red particles never die
  Color color = Color::kBlue;
  std::uint32_t n_children = 0;

  bool alive() const { return death_time < 0.0; }
};

struct SimConfig {
  double c = 1.0;
  std::uint32_t K = 1;  // effective pair rate is c/K
  double t_end = 1.0;
  std::vector<double> snapshot_times;  // sorted, within [0, t_end]
  std::uint64_t seed = 1;
  // Initial condition: explicit positions win if nonempty; otherwise n0
  // particles at the origin; n0 = 0 draws the count from the stationary law
  // (requires c > 0).
  std::vector<double> init_positions;
  std::uint64_t n0 = 0;
  bool coupled = false;
  std::uint64_t max_particles = 10'000'000;

  double c_eff() const { return c / static_cast<double>(K); }
  void validate() const;
};

enum class EventKind : std::uint8_t { kBirth, kCompetition };

struct EventMark {
  double time = 0.0;
  EventKind kind = EventKind::kBirth;
  std::uint32_t birth_index = 0;                  // particle index (birth)
  std::pair<std::uint32_t, std::uint32_t> pair{0, 0};  // ordered particle indices (competition)
};

struct PopulationState {
  double time = 0.0;
  std::vector<Particle> particles;
  std::vector<std::uint32_t> alive_blue;  // indices into particles, insertion order
  std::vector<std::uint32_t> alive_red;
  std::uint64_t births = 0;
  std::uint64_t deaths = 0;
  // run parameters carried with the state
  double c_eff = 1.0;
  bool coupled = false;
  std::uint64_t max_particles = 10'000'000;

  std::size_t alive_count_blue() const { return alive_blue.size(); }
  std::size_t alive_count_total() const { return alive_blue.size() + alive_red.size(); }
  // Require every alive particle realized at state.time (true after run_until
  // or realize_positions; after advance_to_next_event only the particles the
  // event touched are current).
  std::vector<double> blue_positions_sorted() const;
  std::vector<double> all_positions_sorted() const;
};

PopulationState init_system(const SimConfig& config, Rng& rng);

// Advances to the next event and applies it.  Only the particles the event
// needs are brought forward (the parent at a birth, the drawn pair at a
// competition); everything else stays lazy, which keeps the cost per event
// O(1) instead of O(n).
EventMark advance_to_next_event(PopulationState& state, Rng& rng);

// Realizes every alive particle's position at state.time with one exact
// Gaussian increment each (a no-op for already-current particles).
void realize_positions(PopulationState& state, Rng& rng);

// Advances the state to exactly time t.  Events whose sampled times overshoot
// t are discarded after diffusing the remaining interval; memorylessness of
// the exponential clock makes the restart exact.
void run_until(PopulationState& state, double t, Rng& rng);

struct CoupledSnapshot {
  double time = 0.0;
  std::vector<double> blue;  // sorted ascending
  std::vector<double> red;   // sorted ascending
};

// Blue/red coupling: competition recolors the loser red; red particles keep
// branching and diffusing and never compete.  Snapshots at config.snapshot_times
// and t_end.
std::vector<CoupledSnapshot> run_coupled(const SimConfig& config, Rng& rng);

// Order statistics of alive blue positions shifted so the minimum sits at 0.
std::vector<double> seen_from_min(const PopulationState& state);

// Adjacent order-statistic gaps of alive blue positions (length N-1).
std::vector<double> gaps(const PopulationState& state);

// ---- shared-mark gap coupling ----------------------------------------------
//
// Two copies evolve on the gap level only: same event times, same birth rank,
// same competition rank pair, and the same rank-indexed Gaussian increments
// applied on a fine common substep grid between events.  A substep adds the
// adjacent increment difference to each gap and truncates at zero, the
// monotone Euler step for reflected ranked-gap dynamics; a sort-based update
// would let ranks tunnel through each other within a substep and lose the
// componentwise comparison.  Event updates: birth at rank u inserts a zero
// gap at slot u in both systems; competition removes the lower rank r of the
// drawn pair, which drops the first gap when r = 0 and otherwise merges gaps
// r-1 and r.

struct GapCoupledConfig {
  double c = 1.0;
  double t_end = 1.0;
  double substep = 1e-4;
  std::uint64_t max_n = 1'000'000;
};

struct GapCoupledStep {
  double time = 0.0;
  EventKind kind = EventKind::kBirth;
  bool terminal = false;  // true for the final t_end record (no event applied)
  std::vector<double> gaps_a;
  std::vector<double> gaps_b;
};

struct GapCoupledResult {
  std::vector<GapCoupledStep> steps;  // one per event, plus the t_end state
};

GapCoupledResult run_gap_coupled(const GapCoupledConfig& config,
                                 const std::vector<double>& init_a,
                                 const std::vector<double>& init_b, Rng& rng);

}  // namespace logbbm
