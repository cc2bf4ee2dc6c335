#include "logbbm/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "logbbm/lbprocess.hpp"

namespace logbbm {

void SimConfig::validate() const {
  if (c < 0.0) throw std::invalid_argument("SimConfig: c must be >= 0");
  if (K == 0) throw std::invalid_argument("SimConfig: K must be >= 1");
  if (!(t_end > 0.0)) throw std::invalid_argument("SimConfig: t_end must be > 0");
  if (max_particles == 0) throw std::invalid_argument("SimConfig: max_particles must be >= 1");
  double prev = 0.0;
  for (double s : snapshot_times) {
    if (s < prev || s > t_end)
      throw std::invalid_argument("SimConfig: snapshot_times must be sorted within [0, t_end]");
    prev = s;
  }
  if (init_positions.empty() && n0 == 0 && !(c_eff() > 0.0))
    throw std::invalid_argument(
        "SimConfig: stationary initial count requires c > 0; give n0 or positions");
}

std::vector<double> PopulationState::blue_positions_sorted() const {
  std::vector<double> xs;
  xs.reserve(alive_blue.size());
  for (auto i : alive_blue) xs.push_back(particles[i].position);
  std::sort(xs.begin(), xs.end());
  return xs;
}

std::vector<double> PopulationState::all_positions_sorted() const {
  std::vector<double> xs;
  xs.reserve(alive_blue.size() + alive_red.size());
  for (auto i : alive_blue) xs.push_back(particles[i].position);
  for (auto i : alive_red) xs.push_back(particles[i].position);
  std::sort(xs.begin(), xs.end());
  return xs;
}

PopulationState init_system(const SimConfig& config, Rng& rng) {
  config.validate();
  PopulationState s;
  s.c_eff = config.c_eff();
  s.coupled = config.coupled;
  s.max_particles = config.max_particles;

  std::vector<double> xs = config.init_positions;
  if (xs.empty()) {
    const std::uint64_t n =
        config.n0 > 0 ? config.n0 : sample_stationary(s.c_eff, rng);
    xs.assign(n, 0.0);
  }
  s.particles.reserve(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    Particle p;
    p.label = {static_cast<std::uint32_t>(i + 1)};
    p.position = xs[i];
    s.particles.push_back(std::move(p));
    s.alive_blue.push_back(static_cast<std::uint32_t>(i));
  }
  return s;
}

namespace {

// Brings one particle's position forward to time t with a single exact
// Gaussian increment over the untracked interval.
void realize(PopulationState& s, Rng& rng, std::uint32_t idx, double t) {
  Particle& p = s.particles[idx];
  if (t > p.last_update) {
    p.position += std::sqrt(t - p.last_update) * rng.normal();
    p.last_update = t;
  }
}

void realize_all(PopulationState& s, Rng& rng, double t) {
  for (auto i : s.alive_blue) realize(s, rng, i, t);
  for (auto i : s.alive_red) realize(s, rng, i, t);
}

// One aggregate-clock step, truncated at t_max.  Returns the applied event,
// or nothing when the proposed event lands beyond t_max (the state is then
// realized at exactly t_max and the discarded clock needs no compensation by
// memorylessness).  Event rates never depend on positions, so only the
// particles an event touches are realized at its time.
std::optional<EventMark> step_to(PopulationState& s, Rng& rng, double t_max) {
  const std::size_t nb = s.alive_blue.size();
  if (nb == 0) throw std::logic_error("step_to: blue population emptied");
  const std::size_t ntot = s.coupled ? nb + s.alive_red.size() : nb;
  const double birth_rate = static_cast<double>(ntot);
  const double comp_rate =
      s.c_eff * static_cast<double>(nb) * static_cast<double>(nb - 1);
  const double total = birth_rate + comp_rate;

  const double dt = rng.exponential(total);
  if (s.time + dt > t_max) {
    realize_all(s, rng, t_max);
    s.time = t_max;
    return std::nullopt;
  }
  s.time += dt;

  EventMark mark;
  mark.time = s.time;
  if (rng.uniform01() * total < birth_rate) {
    mark.kind = EventKind::kBirth;
    const std::uint64_t k = rng.uniform_below(ntot);
    const std::uint32_t pidx =
        k < nb ? s.alive_blue[k] : s.alive_red[k - nb];
    if (s.particles.size() >= s.max_particles)
      throw std::runtime_error("simulator: particle cap " +
                               std::to_string(s.max_particles) +
                               " exceeded at t=" + std::to_string(s.time));
    realize(s, rng, pidx, s.time);
    Particle& parent = s.particles[pidx];
    Particle child;
    child.label = parent.label;
    child.label.push_back(++parent.n_children);
    child.position = parent.position;
    child.birth_time = s.time;
    child.last_update = s.time;
    child.color = parent.color;
    const auto cidx = static_cast<std::uint32_t>(s.particles.size());
    s.particles.push_back(std::move(child));
    if (s.particles[cidx].color == Color::kBlue)
      s.alive_blue.push_back(cidx);
    else
      s.alive_red.push_back(cidx);
    ++s.births;
    mark.birth_index = pidx;
  } else {
    mark.kind = EventKind::kCompetition;
    // uniform ordered pair of distinct alive blue particles
    const std::uint64_t a = rng.uniform_below(nb);
    std::uint64_t b = rng.uniform_below(nb - 1);
    if (b >= a) ++b;
    const std::uint32_t ia = s.alive_blue[a];
    const std::uint32_t ib = s.alive_blue[b];
    mark.pair = {ia, ib};
    realize(s, rng, ia, s.time);
    realize(s, rng, ib, s.time);
    // the lower-positioned member dies; on a tie the second of the ordered
    // pair dies (any fixed measurable rule leaves the law unchanged)
    std::uint64_t loser_rank;
    if (s.particles[ia].position < s.particles[ib].position)
      loser_rank = a;
    else
      loser_rank = b;
    const std::uint32_t lidx = s.alive_blue[loser_rank];
    s.alive_blue.erase(s.alive_blue.begin() + static_cast<std::ptrdiff_t>(loser_rank));
    if (s.coupled) {
      s.particles[lidx].color = Color::kRed;
      s.alive_red.push_back(lidx);
    } else {
      s.particles[lidx].death_time = s.time;
    }
    ++s.deaths;
  }
  return mark;
}

}  // namespace

EventMark advance_to_next_event(PopulationState& state, Rng& rng) {
  const auto mark = step_to(state, rng, std::numeric_limits<double>::infinity());
  return *mark;  // with t_max = inf an event is always applied
}

void realize_positions(PopulationState& state, Rng& rng) {
  realize_all(state, rng, state.time);
}

void run_until(PopulationState& state, double t, Rng& rng) {
  if (t < state.time) throw std::invalid_argument("run_until: target before current time");
  while (state.time < t) step_to(state, rng, t);
}

std::vector<CoupledSnapshot> run_coupled(const SimConfig& config, Rng& rng) {
  if (!config.coupled)
    throw std::invalid_argument("run_coupled: coupling_enabled must be set");
  PopulationState s = init_system(config, rng);

  std::vector<double> times = config.snapshot_times;
  if (times.empty() || times.back() < config.t_end) times.push_back(config.t_end);

  std::vector<CoupledSnapshot> out;
  out.reserve(times.size());
  for (double t : times) {
    run_until(s, t, rng);
    CoupledSnapshot snap;
    snap.time = t;
    for (auto i : s.alive_blue) snap.blue.push_back(s.particles[i].position);
    for (auto i : s.alive_red) snap.red.push_back(s.particles[i].position);
    std::sort(snap.blue.begin(), snap.blue.end());
    std::sort(snap.red.begin(), snap.red.end());
    out.push_back(std::move(snap));
  }
  return out;
}

std::vector<double> seen_from_min(const PopulationState& state) {
  std::vector<double> z = state.blue_positions_sorted();
  if (z.empty()) throw std::invalid_argument("seen_from_min: no alive blue particles");
  const double lo = z.front();
  for (auto& v : z) v -= lo;
  return z;
}

std::vector<double> gaps(const PopulationState& state) {
  const std::vector<double> xs = state.blue_positions_sorted();
  if (xs.size() < 2) throw std::invalid_argument("gaps: need at least 2 alive blue particles");
  std::vector<double> g(xs.size() - 1);
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) g[i] = xs[i + 1] - xs[i];
  return g;
}

// ---- gap coupling ------------------------------------------------------------

namespace {

std::vector<double> gaps_of_positions(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  std::vector<double> g(xs.size() - 1);
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) g[i] = xs[i + 1] - xs[i];
  return g;
}

// Applies one shared rank-indexed Gaussian increment of variance h to both
// gap vectors: gap i receives the difference of the rank-(i+1) and rank-i
// deviates and is truncated at zero.  Truncation is the monotone Euler step
// for the reflected ranked-gap dynamics; float addition and max are both
// order-preserving, so componentwise domination between the two systems
// survives every substep exactly.
void shared_increment(std::vector<double>& ga, std::vector<double>& gb,
                      std::vector<double>& xi, double h, Rng& rng) {
  const std::size_t n = ga.size() + 1;
  const double sd = std::sqrt(h);
  xi.resize(n);
  for (auto& v : xi) v = sd * rng.normal();

  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double d = xi[i + 1] - xi[i];
    ga[i] = std::max(ga[i] + d, 0.0);
    gb[i] = std::max(gb[i] + d, 0.0);
  }
}

}  // namespace

GapCoupledResult run_gap_coupled(const GapCoupledConfig& config,
                                 const std::vector<double>& init_a,
                                 const std::vector<double>& init_b, Rng& rng) {
  if (init_a.size() != init_b.size())
    throw std::invalid_argument("run_gap_coupled: initial sizes must match");
  if (init_a.size() < 2)
    throw std::invalid_argument("run_gap_coupled: need n >= 2");
  if (config.c < 0.0) throw std::invalid_argument("run_gap_coupled: c must be >= 0");
  if (!(config.t_end > 0.0))
    throw std::invalid_argument("run_gap_coupled: t_end must be > 0");
  if (!(config.substep > 0.0))
    throw std::invalid_argument("run_gap_coupled: substep must be > 0");

  std::vector<double> ga = gaps_of_positions(init_a);
  std::vector<double> gb = gaps_of_positions(init_b);
  for (std::size_t i = 0; i < ga.size(); ++i)
    if (ga[i] > gb[i])
      throw std::invalid_argument(
          "run_gap_coupled: initial gaps of a must be componentwise <= gaps of b");

  std::size_t n = init_a.size();
  double t = 0.0;
  GapCoupledResult result;
  std::vector<double> xi;  // scratch

  auto diffuse_to = [&](double target) {
    double remaining = target - t;
    while (remaining > 0.0) {
      const double h = std::min(remaining, config.substep);
      shared_increment(ga, gb, xi, h, rng);
      remaining -= h;
    }
    t = target;
  };

  while (t < config.t_end) {
    const double nd = static_cast<double>(n);
    const double rate = nd + config.c * nd * (nd - 1.0);
    const double dt = rng.exponential(rate);
    if (t + dt >= config.t_end) {
      diffuse_to(config.t_end);
      GapCoupledStep fin;
      fin.time = t;
      fin.terminal = true;
      fin.gaps_a = ga;
      fin.gaps_b = gb;
      result.steps.push_back(std::move(fin));
      break;
    }
    diffuse_to(t + dt);

    GapCoupledStep step;
    step.time = t;
    if (rng.uniform01() * rate < nd) {
      step.kind = EventKind::kBirth;
      if (n + 1 > config.max_n)
        throw std::runtime_error("run_gap_coupled: population cap exceeded");
      const std::uint64_t u = rng.uniform_below(n);  // parent rank
      ga.insert(ga.begin() + static_cast<std::ptrdiff_t>(u), 0.0);
      gb.insert(gb.begin() + static_cast<std::ptrdiff_t>(u), 0.0);
      ++n;
    } else {
      step.kind = EventKind::kCompetition;
      // ordered rank pair; the lower rank is the lower position by definition
      const std::uint64_t a = rng.uniform_below(n);
      std::uint64_t b = rng.uniform_below(n - 1);
      if (b >= a) ++b;
      const std::uint64_t r = std::min(a, b);
      if (r == 0) {
        ga.erase(ga.begin());
        gb.erase(gb.begin());
      } else {
        ga[r - 1] += ga[r];
        gb[r - 1] += gb[r];
        ga.erase(ga.begin() + static_cast<std::ptrdiff_t>(r));
        gb.erase(gb.begin() + static_cast<std::ptrdiff_t>(r));
      }
      --n;
    }
    step.gaps_a = ga;
    step.gaps_b = gb;
    result.steps.push_back(std::move(step));
  }
  return result;
}

}  // namespace logbbm
