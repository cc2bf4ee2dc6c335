// Configuration-driven front end: parse a JSON config, dispatch one command,
// write data files plus a manifest into the output directory.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "logbbm/acceptance.hpp"
#include "logbbm/experiments.hpp"
#include "logbbm/fkpp.hpp"
#include "logbbm/io.hpp"
#include "logbbm/measures.hpp"
#include "logbbm/rng.hpp"
#include "logbbm/simulator.hpp"

#ifndef LOGBBM_VERSION
#define LOGBBM_VERSION "unversioned"
#endif

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace logbbm;

namespace {

std::string strf(const char* fmt, ...) {
  char buf[256];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, args);
  va_end(args);
  return std::string(buf);
}

[[noreturn]] void bad_key(const std::string& key, const std::string& why) {
  throw std::runtime_error("config key \"" + key + "\" " + why);
}

// Tracks which keys a command consumed; anything left over in the file is an
// error, so typos never pass silently.  `echo` collects the effective values
// (defaults included) for the manifest.
class Config {
 public:
  explicit Config(json file) : file_(std::move(file)) {
    if (!file_.is_object())
      throw std::runtime_error("config root must be a JSON object");
  }

  double number(const std::string& key, double fallback) {
    if (!mark(key)) {
      echo[key] = fallback;
      return fallback;
    }
    const auto& v = file_.at(key);
    if (!v.is_number()) bad_key(key, "must be a number");
    const double d = v.get<double>();
    echo[key] = d;
    return d;
  }

  double positive(const std::string& key, double fallback) {
    const double d = number(key, fallback);
    if (!(d > 0.0)) bad_key(key, "must be > 0");
    return d;
  }

  double nonnegative(const std::string& key, double fallback) {
    const double d = number(key, fallback);
    if (!(d >= 0.0)) bad_key(key, "must be >= 0");
    return d;
  }

  std::uint64_t integer(const std::string& key, std::uint64_t fallback) {
    if (!mark(key)) {
      echo[key] = fallback;
      return fallback;
    }
    const auto& v = file_.at(key);
    if (!v.is_number_integer() && !v.is_number_unsigned())
      bad_key(key, "must be an integer");
    if (v.is_number_integer() && v.get<std::int64_t>() < 0)
      bad_key(key, "must be >= 0");
    const std::uint64_t u = v.get<std::uint64_t>();
    echo[key] = u;
    return u;
  }

  std::vector<double> numbers(const std::string& key, std::vector<double> fallback) {
    if (!mark(key)) {
      echo[key] = fallback;
      return fallback;
    }
    const auto& v = file_.at(key);
    if (!v.is_array()) bad_key(key, "must be an array of numbers");
    std::vector<double> out;
    for (const auto& e : v) {
      if (!e.is_number()) bad_key(key, "must be an array of numbers");
      out.push_back(e.get<double>());
    }
    echo[key] = out;
    return out;
  }

  std::string text(const std::string& key, std::string fallback) {
    if (!mark(key)) {
      echo[key] = fallback;
      return fallback;
    }
    const auto& v = file_.at(key);
    if (!v.is_string()) bad_key(key, "must be a string");
    const std::string s = v.get<std::string>();
    echo[key] = s;
    return s;
  }

  void finish(const std::string& command) const {
    for (const auto& item : file_.items())
      if (seen_.find(item.key()) == seen_.end())
        throw std::runtime_error("unknown config key \"" + item.key() +
                                 "\" for command \"" + command + "\"");
  }

  json echo = json::object();

 private:
  bool mark(const std::string& key) {
    seen_.insert(key);
    return file_.contains(key);
  }

  json file_;
  std::set<std::string> seen_;
};

// Data files go through the staged writers in io.cpp, so a failed run never
// leaves partial files.  Every name written here ends up in the manifest.
struct OutputWriter {
  fs::path dir;
  std::string format;  // "csv" | "jsonl"
  std::vector<std::string> files;

  std::string table(std::string base, const CsvTable& t) {
    if (format == "jsonl") {
      base += ".jsonl";
      std::string body;
      for (const auto& row : t.rows) {
        json line = json::object();
        for (std::size_t i = 0; i < t.columns.size(); ++i) line[t.columns[i]] = row[i];
        body += line.dump();
        body += '\n';
      }
      write_text_file(dir / base, body);
    } else {
      base += ".csv";
      write_csv(dir / base, t);
    }
    files.push_back(base);
    return base;
  }

  void raw(const std::string& name, const std::string& content) {
    write_text_file(dir / name, content);
    files.push_back(name);
  }

  void json_file(const std::string& name, const json& j) {
    write_text_file(dir / name, j.dump(2) + "\n");
    files.push_back(name);
  }
};

std::string time_label(double t) { return strf("%.10g", t); }

Normalization parse_normalization(const std::string& s) {
  if (s == "count") return Normalization::kCount;
  if (s == "mass") return Normalization::kMass;
  bad_key("normalization", "must be \"count\" or \"mass\"");
}

// snapshot list in ascending order plus t_end, duplicates merged
std::vector<double> snapshot_targets(std::vector<double> times, double t_end) {
  std::sort(times.begin(), times.end());
  for (double t : times)
    if (t < 0.0 || t > t_end) bad_key("snapshot_times", "entries must lie in [0, t_end]");
  if (times.empty() || t_end - times.back() > 1e-12) times.push_back(t_end);
  return times;
}

CsvTable step_cdf_table(const StepCdf& F) {
  CsvTable t{{"x", "F"}, {}};
  for (std::size_t i = 0; i < F.jump_points.size(); ++i)
    t.rows.push_back({F.jump_points[i], F.cumulative[i]});
  return t;
}

CsvTable field_table(const Field1D& f, const char* value_column) {
  CsvTable t{{"x", value_column}, {}};
  for (std::size_t i = 0; i < f.values.size(); ++i)
    t.rows.push_back({f.grid.x(i), f.values[i]});
  return t;
}

// ---- commands -----------------------------------------------------------------

int cmd_simulate(Config& cfg, std::uint64_t seed, OutputWriter& out) {
  SimConfig sc;
  sc.c = cfg.nonnegative("c", 1.0);
  sc.K = static_cast<std::uint32_t>(cfg.integer("K", 1));
  sc.t_end = cfg.positive("t_end", 1.0);
  sc.snapshot_times = cfg.numbers("snapshot_times", {});
  sc.n0 = cfg.integer("n0", 1);
  sc.init_positions = cfg.numbers("init_positions", {});
  sc.max_particles = cfg.integer("max_particles", 10'000'000);
  const Normalization norm = parse_normalization(cfg.text("normalization", "count"));
  cfg.finish("simulate");
  if (sc.K == 0) bad_key("K", "must be >= 1");
  sc.seed = seed;
  sc.validate();

  const auto targets = snapshot_targets(sc.snapshot_times, sc.t_end);
  Rng rng(seed);
  PopulationState state = init_system(sc, rng);
  for (double t : targets) {
    run_until(state, t, rng);
    const StepCdf F = cdf(empirical_measure(state, norm));
    out.table("cdf_t" + time_label(t), step_cdf_table(F));
  }

  const auto xs = state.blue_positions_sorted();
  json summary;
  summary["t_end"] = state.time;
  summary["final_count"] = xs.size();
  summary["births"] = state.births;
  summary["deaths"] = state.deaths;
  if (!xs.empty()) {
    summary["min_position"] = xs.front();
    summary["max_position"] = xs.back();
  }
  out.json_file("summary.json", summary);
  return 0;
}

int cmd_couple(Config& cfg, std::uint64_t seed, OutputWriter& out) {
  SimConfig sc;
  sc.c = cfg.nonnegative("c", 1.0);
  sc.K = static_cast<std::uint32_t>(cfg.integer("K", 1));
  sc.t_end = cfg.positive("t_end", 1.0);
  sc.snapshot_times = cfg.numbers("snapshot_times", {});
  sc.n0 = cfg.integer("n0", 1);
  sc.init_positions = cfg.numbers("init_positions", {0.0});
  sc.max_particles = cfg.integer("max_particles", 10'000'000);
  cfg.finish("couple");
  if (sc.K == 0) bad_key("K", "must be >= 1");
  sc.snapshot_times = snapshot_targets(sc.snapshot_times, sc.t_end);
  sc.seed = seed;
  sc.coupled = true;
  sc.validate();

  Rng rng(seed);
  const auto snaps = run_coupled(sc, rng);

  CsvTable table{{"t", "blue_count", "total_count", "max_blue", "max_total"}, {}};
  bool dominated = true;
  for (const auto& s : snaps) {
    const double max_blue = s.blue.empty() ? 0.0 : s.blue.back();
    double max_total = max_blue;
    for (double x : s.red) max_total = std::max(max_total, x);
    const auto blue_n = static_cast<double>(s.blue.size());
    const auto total_n = static_cast<double>(s.blue.size() + s.red.size());
    table.rows.push_back({s.time, blue_n, total_n, max_blue, max_total});
    dominated = dominated && !s.blue.empty() && max_blue <= max_total;
  }
  out.table("couple", table);

  json summary;
  summary["snapshots"] = snaps.size();
  summary["domination_held"] = dominated;
  out.json_file("summary.json", summary);
  return dominated ? 0 : 1;
}

int cmd_gaps(Config& cfg, std::uint64_t seed, OutputWriter& out) {
  GapCoupledConfig gc;
  gc.c = cfg.nonnegative("c", 1.0);
  gc.t_end = cfg.positive("t_end", 1.0);
  gc.substep = cfg.positive("substep", 1e-4);
  gc.max_n = cfg.integer("max_n", 1'000'000);
  const auto init_a = cfg.numbers("init_a", {0.0, 0.1, 0.25, 0.45});
  const auto init_b = cfg.numbers("init_b", {0.0, 0.4, 0.85, 1.45});
  cfg.finish("gaps");

  Rng rng(seed);
  const auto res = run_gap_coupled(gc, init_a, init_b, rng);

  CsvTable table{{"record", "t", "kind", "terminal", "slot", "gap_a", "gap_b"}, {}};
  double min_margin = 1e300;
  std::size_t events = 0;
  for (std::size_t r = 0; r < res.steps.size(); ++r) {
    const auto& step = res.steps[r];
    if (!step.terminal) ++events;
    for (std::size_t i = 0; i < step.gaps_a.size(); ++i) {
      table.rows.push_back({static_cast<double>(r), step.time,
                            step.kind == EventKind::kBirth ? 0.0 : 1.0,
                            step.terminal ? 1.0 : 0.0, static_cast<double>(i),
                            step.gaps_a[i], step.gaps_b[i]});
      min_margin = std::min(min_margin, step.gaps_b[i] - step.gaps_a[i]);
    }
  }
  out.table("gaps", table);

  json summary;
  summary["events"] = events;
  summary["min_margin"] = min_margin;
  summary["domination_held"] = min_margin >= -1e-12;
  out.json_file("summary.json", summary);
  return min_margin >= -1e-12 ? 0 : 1;
}

int cmd_pde_cdf(Config& cfg, std::uint64_t /*seed*/, OutputWriter& out) {
  Grid1D grid;
  grid.x_min = cfg.number("x_min", -20.0);
  grid.x_max = cfg.number("x_max", 40.0);
  grid.n_nodes = static_cast<std::size_t>(cfg.integer("n_nodes", 1201));
  const double dt_factor = cfg.positive("dt_factor", 0.9);
  const double t_end = cfg.positive("t_end", 10.0);
  const auto snapshots = cfg.numbers("snapshot_times", {});
  const double tick = cfg.positive("tick_interval", 0.1);
  const double level = cfg.number("front_level", 0.5);
  const double ic_x0 = cfg.number("ic_x0", 0.0);
  const double fit_lo = cfg.number("fit_t_lo", 0.0);
  const double fit_hi = cfg.number("fit_t_hi", 0.0);
  cfg.finish("pde-cdf");
  grid.validate();

  const double dt = dt_factor * grid.dx() * grid.dx();
  const Field1D ic = heaviside_cdf(grid, ic_x0);
  const CdfSolution sol = solve_fkpp_cdf(ic, t_end, dt, snapshots, tick, level);

  CsvTable front{{"t", "m"}, {}};
  for (std::size_t i = 0; i < sol.front.times.size(); ++i)
    front.rows.push_back({sol.front.times[i], sol.front.positions[i]});
  out.table("front", front);
  for (const auto& snap : sol.snapshots)
    out.table("cdf_t" + time_label(snap.time), field_table(snap, "F"));

  json summary;
  summary["dt"] = dt;
  summary["clamp_count"] = sol.clamps.count;
  if (!sol.front.positions.empty()) summary["front_final"] = sol.front.positions.back();
  if (fit_hi > fit_lo) {
    const LinearFit fit = front_speed(sol.front, fit_lo, fit_hi);
    summary["fit_t_lo"] = fit_lo;
    summary["fit_t_hi"] = fit_hi;
    summary["front_speed"] = fit.slope;
    summary["front_speed_residual_rms"] = fit.residual_rms;
  }
  out.json_file("summary.json", summary);
  return 0;
}

int cmd_pde_nonlocal(Config& cfg, std::uint64_t /*seed*/, OutputWriter& out) {
  Grid1D grid;
  grid.x_min = cfg.number("x_min", -20.0);
  grid.x_max = cfg.number("x_max", 40.0);
  grid.n_nodes = static_cast<std::size_t>(cfg.integer("n_nodes", 1201));
  const double dt_factor = cfg.positive("dt_factor", 0.9);
  const double t_end = cfg.positive("t_end", 5.0);
  const auto snapshots = cfg.numbers("snapshot_times", {});
  const double tick = cfg.positive("tick_interval", 0.1);
  const double mass_tol = cfg.positive("mass_tolerance", 1e-2);
  const double ic_mean = cfg.number("ic_mean", 0.0);
  const double ic_sd = cfg.positive("ic_sd", 1.0);
  const double ic_mass = cfg.positive("ic_mass", 1.0);
  cfg.finish("pde-nonlocal");
  grid.validate();

  const double dt = dt_factor * grid.dx() * grid.dx();
  Field1D ic = gaussian_density(grid, ic_mean, ic_sd);
  for (auto& v : ic.values) v *= ic_mass;
  const DensitySolution sol =
      solve_fkpp_nonlocal_density(ic, t_end, dt, snapshots, tick, mass_tol);

  CsvTable mass{{"t", "mass"}, {}};
  for (std::size_t i = 0; i < sol.masses.size(); ++i)
    mass.rows.push_back({sol.mass_times[i], sol.masses[i]});
  out.table("mass", mass);
  for (const auto& snap : sol.snapshots)
    out.table("density_t" + time_label(snap.time), field_table(snap, "u"));

  json summary;
  summary["dt"] = dt;
  summary["clamp_count"] = sol.clamps.count;
  summary["final_mass"] = sol.masses.empty() ? trapezoid_mass(ic) : sol.masses.back();
  out.json_file("summary.json", summary);
  return 0;
}

int cmd_velocity(Config& cfg, std::uint64_t seed, OutputWriter& out) {
  const auto c_list = cfg.numbers("c_list", {1.0});
  const std::string method = cfg.text("method", "both");
  const auto n_cycles = static_cast<std::size_t>(cfg.integer("n_cycles", 20'000));
  const double t_horizon = cfg.number("t_horizon", 200.0);
  const auto replicates = static_cast<std::size_t>(cfg.integer("replicates", 200));
  const auto max_particles = cfg.integer("max_particles", 10'000'000);
  cfg.finish("velocity");
  if (method != "renewal" && method != "direct" && method != "both")
    bad_key("method", "must be \"renewal\", \"direct\", or \"both\"");
  for (double c : c_list)
    if (!(c >= 0.0)) bad_key("c_list", "entries must be >= 0");

  std::vector<VelocityEstimate> estimates;
  for (std::size_t i = 0; i < c_list.size(); ++i) {
    if (method != "direct")
      estimates.push_back(
          velocity_renewal(c_list[i], n_cycles, Rng::child_seed(seed, 2 * i)));
    if (method != "renewal") {
      const DirectVelocity d = velocity_direct(c_list[i], t_horizon, replicates,
                                               Rng::child_seed(seed, 2 * i + 1),
                                               max_particles);
      estimates.push_back(d.max_based);
      estimates.push_back(d.min_based);
    }
  }

  if (out.format == "jsonl") {
    std::string body;
    for (const auto& e : estimates) {
      json row;
      row["c"] = e.c;
      row["v_hat"] = e.v_hat;
      row["stderr"] = e.std_error;
      row["method"] = e.method;
      body += row.dump();
      body += '\n';
    }
    out.raw("velocity.jsonl", body);
  } else {
    std::string body = "c,v_hat,stderr,method\n";
    for (const auto& e : estimates)
      body += format_double(e.c) + "," + format_double(e.v_hat) + "," +
              format_double(e.std_error) + "," + e.method + "\n";
    out.raw("velocity.csv", body);
  }

  json summary;
  summary["estimates"] = json::array();
  for (const auto& e : estimates) {
    json row;
    row["c"] = e.c;
    row["v_hat"] = e.v_hat;
    row["stderr"] = e.std_error;
    row["horizon"] = e.horizon;
    row["method"] = e.method;
    summary["estimates"].push_back(row);
  }
  out.json_file("summary.json", summary);
  return 0;
}

int cmd_hydro(Config& cfg, std::uint64_t seed, OutputWriter& out) {
  HydroConfig hc;
  hc.c = cfg.positive("c", 1.0);
  const auto k_raw = cfg.numbers("K_list", {5.0, 20.0, 50.0});
  hc.t = cfg.nonnegative("t", 1.0);
  hc.replicates = static_cast<std::size_t>(cfg.integer("replicates", 200));
  hc.grid.x_min = cfg.number("x_min", -8.0);
  hc.grid.x_max = cfg.number("x_max", 8.0);
  hc.grid.n_nodes = static_cast<std::size_t>(cfg.integer("n_nodes", 321));
  hc.dt_factor = cfg.positive("dt_factor", 0.9);
  hc.normalization = parse_normalization(cfg.text("normalization", "mass"));
  cfg.finish("hydro");
  hc.seed = seed;
  hc.K_list.clear();
  for (double k : k_raw) {
    if (!(k >= 1.0) || k != std::floor(k)) bad_key("K_list", "entries must be integers >= 1");
    hc.K_list.push_back(static_cast<std::uint32_t>(k));
  }
  hc.grid.validate();

  const auto results = hydrodynamic_study(hc, heaviside_cdf(hc.grid, 0.0));

  CsvTable sup{{"K", "sup_dist", "sup_dist_se"}, {}};
  CsvTable curves{{"K", "x", "mean_cdf", "pde_cdf"}, {}};
  for (const auto& r : results) {
    sup.rows.push_back({static_cast<double>(r.K), r.sup_dist, r.sup_dist_se});
    for (std::size_t i = 0; i < r.grid_x.size(); ++i)
      curves.rows.push_back(
          {static_cast<double>(r.K), r.grid_x[i], r.mean_cdf[i], r.pde_cdf[i]});
  }
  out.table("hydro", sup);
  out.table("hydro_cdf", curves);

  json summary;
  summary["results"] = json::array();
  for (const auto& r : results) {
    json row;
    row["K"] = r.K;
    row["sup_dist"] = r.sup_dist;
    row["sup_dist_se"] = r.sup_dist_se;
    summary["results"].push_back(row);
  }
  out.json_file("summary.json", summary);
  return 0;
}

int cmd_checks(Config& cfg, std::uint64_t seed, OutputWriter& out) {
  cfg.finish("checks");
  ChecksConfig cc;
  cc.seed = seed;
  const ChecksReport report = run_all_checks(cc);

  for (const auto& c : report.criteria)
    std::printf("%s %2d  %-34s %8.2f s  %s\n", c.pass ? "PASS" : "FAIL", c.id,
                c.name.c_str(), c.seconds, c.details.c_str());
  std::printf("%s\n", report.all_pass ? "all checks passed" : "CHECKS FAILED");

  for (const auto& [name, content] : report.data_files) out.raw(name, content);

  json summary;
  summary["all_pass"] = report.all_pass;
  summary["criteria"] = json::array();
  for (const auto& c : report.criteria) {
    json row;
    row["id"] = c.id;
    row["name"] = c.name;
    row["pass"] = c.pass;
    row["seconds"] = c.seconds;
    row["details"] = c.details;
    summary["criteria"].push_back(row);
  }
  out.json_file("summary.json", summary);
  return report.all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"event-driven branching Brownian simulator with logistic competition"};
  app.require_subcommand(1);

  std::string config_path;
  std::uint64_t seed_flag = 0;
  std::string out_flag;
  std::string format_flag;

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"simulate", "run one particle system and write empirical CDF snapshots"},
      {"couple", "run the pruning coupling and report count/max domination"},
      {"gaps", "run the shared-mark gap coupling for one seeded pair"},
      {"pde-cdf", "solve the CDF reaction-diffusion equation and track the front"},
      {"pde-nonlocal", "solve the nonlocal density equation and track the mass"},
      {"velocity", "estimate front velocities by renewal cycles and direct horizon runs"},
      {"hydro", "compare replicate-averaged empirical CDFs against the PDE"},
      {"checks", "run the full verification suite (nonzero exit on any failure)"},
  };
  for (const auto& [name, desc] : commands) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->add_option("--config", config_path, "JSON config file")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--seed", seed_flag, "master seed (overrides the config file)");
    sub->add_option("--out", out_flag, "output directory (overrides the config file)");
    sub->add_option("--format", format_flag, "data file format (overrides the config file)")
        ->check(CLI::IsMember({"csv", "jsonl"}));
  }

  CLI11_PARSE(app, argc, argv);
  CLI::App* sub = app.get_subcommands().front();
  const std::string command = sub->get_name();

  try {
    json file;
    try {
      file = json::parse(std::ifstream(config_path));
    } catch (const json::parse_error& e) {
      throw std::runtime_error("malformed config " + config_path + ": " + e.what());
    }
    Config cfg(std::move(file));

    const std::string file_command = cfg.text("command", command);
    if (file_command != command)
      bad_key("command", "names \"" + file_command + "\" but the invocation is \"" +
                             command + "\"");
    std::uint64_t seed = cfg.integer("seed", 1);
    std::string out_dir = cfg.text("output_dir", ".");
    std::string format = cfg.text("format", "csv");
    if (sub->count("--seed") > 0) seed = seed_flag;
    if (sub->count("--out") > 0) out_dir = out_flag;
    if (sub->count("--format") > 0) format = format_flag;
    if (format != "csv" && format != "jsonl")
      bad_key("format", "must be \"csv\" or \"jsonl\"");
    cfg.echo["command"] = command;
    cfg.echo["seed"] = seed;
    cfg.echo["output_dir"] = out_dir;
    cfg.echo["format"] = format;

    fs::create_directories(out_dir);
    OutputWriter writer{fs::path(out_dir), format, {}};

    const auto t0 = std::chrono::steady_clock::now();
    int rc = 0;
    if (command == "simulate") rc = cmd_simulate(cfg, seed, writer);
    else if (command == "couple") rc = cmd_couple(cfg, seed, writer);
    else if (command == "gaps") rc = cmd_gaps(cfg, seed, writer);
    else if (command == "pde-cdf") rc = cmd_pde_cdf(cfg, seed, writer);
    else if (command == "pde-nonlocal") rc = cmd_pde_nonlocal(cfg, seed, writer);
    else if (command == "velocity") rc = cmd_velocity(cfg, seed, writer);
    else if (command == "hydro") rc = cmd_hydro(cfg, seed, writer);
    else if (command == "checks") rc = cmd_checks(cfg, seed, writer);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    json manifest;
    manifest["command"] = command;
    manifest["version"] = LOGBBM_VERSION;
    manifest["config"] = cfg.echo;
    manifest["wall_time_seconds"] = wall;
    manifest["files"] = writer.files;
    write_text_file(writer.dir / "manifest.json", manifest.dump(2) + "\n");
    return rc;
  } catch (const std::exception& e) {
    std::cerr << "logbbm: error: " << e.what() << "\n";
    return 1;
  }
}
