// Command-line front end: encode/verify/anneal/sweep/factor/device over
// file-based problems and the built-in chip units. Every command is
// deterministic for a fixed seed; repeated runs are byte-identical.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "CLI11.hpp"
#include "json.hpp"

#include "qalogic/anneal.hpp"
#include "qalogic/composer.hpp"
#include "qalogic/device.hpp"
#include "qalogic/ising.hpp"
#include "qalogic/logic.hpp"

namespace {

using nlohmann::json;
using namespace qalogic;

constexpr int exit_ok = 0;
constexpr int exit_usage = 1;
constexpr int exit_validation = 2;
constexpr int exit_infeasible = 3;
constexpr int exit_capacity = 4;

void emit_error(const std::string& kind, const std::string& message,
                const json& detail = json::object()) {
  json err{{"error", kind}, {"message", message}};
  if (!detail.empty()) err["detail"] = detail;
  std::cerr << err.dump() << "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << content;
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-")
    std::cout << content;
  else
    write_file(path, content);
}

json load_json(const std::string& path) { return json::parse(read_file(path)); }

std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

IsingProblem load_problem(const std::string& problem_path, const std::string& unit) {
  if (!unit.empty() && !problem_path.empty())
    throw std::invalid_argument("give either --problem or --unit, not both");
  if (!unit.empty()) return unit_problem(unit);
  if (problem_path.empty()) throw std::invalid_argument("need --problem or --unit");
  return load_json(problem_path).get<IsingProblem>();
}

TruthTable load_table(const std::string& table_path, const std::string& unit) {
  if (!unit.empty() && !table_path.empty())
    throw std::invalid_argument("give either --table or --unit, not both");
  if (!unit.empty()) return unit_table(unit);
  if (table_path.empty()) throw std::invalid_argument("need --table or --unit");
  return load_json(table_path).get<TruthTable>();
}

// "A=0,B=1" or "0=1,2=0" -> qubit index to bit
std::map<int, int> parse_clamp(const IsingProblem& p, const std::string& spec) {
  std::map<int, int> out;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("bad clamp entry '" + item + "'");
    int q = p.qubit_index(item.substr(0, eq));
    int b = std::stoi(item.substr(eq + 1));
    if (b != 0 && b != 1) throw std::invalid_argument("clamp bit must be 0 or 1");
    if (out.count(q)) throw std::invalid_argument("duplicate clamp for qubit " + std::to_string(q));
    out[q] = b;
  }
  if (out.empty()) throw std::invalid_argument("empty clamp spec");
  return out;
}

std::vector<double> parse_grid(const std::string& spec) {
  std::vector<double> grid;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) grid.push_back(std::stod(item));
  }
  return grid;
}

std::set<std::string> parse_targets(const std::string& spec) {
  std::set<std::string> out;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.insert(item);
  }
  return out;
}

// "0,1=0.5;0,2=1.0" -> fixed couplings
std::map<std::pair<int, int>, double> parse_fixed_j(const std::string& spec) {
  std::map<std::pair<int, int>, double> out;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ';')) {
    if (item.empty()) continue;
    auto eq = item.find('=');
    auto comma = item.find(',');
    if (eq == std::string::npos || comma == std::string::npos || comma > eq)
      throw std::invalid_argument("bad fixed coupling '" + item + "' (want i,j=v)");
    int a = std::stoi(item.substr(0, comma));
    int b = std::stoi(item.substr(comma + 1, eq - comma - 1));
    if (a > b) std::swap(a, b);
    out[{a, b}] = std::stod(item.substr(eq + 1));
  }
  return out;
}

struct EngineOpts {
  std::string engine = "thermal";
  // exact
  double ta = 100.0;
  double a0 = 2.0, b0 = 2.0;
  int steps = 100;
  // thermal
  double temperature = 0.1;
  double t_start = 0.0;  // > 0 selects geometric cooling
  int sweeps = 100;
  std::uint64_t seed = default_seed;

  void add_flags(CLI::App* cmd, bool with_engine_choice = true) {
    if (with_engine_choice)
      cmd->add_option("--engine", engine, "exact | thermal")->capture_default_str();
    cmd->add_option("--ta", ta, "total anneal time (exact engine)")->capture_default_str();
    cmd->add_option("--a0", a0, "transverse envelope amplitude")->capture_default_str();
    cmd->add_option("--b0", b0, "problem envelope amplitude")->capture_default_str();
    cmd->add_option("--steps", steps, "integrator step floor")->capture_default_str();
    cmd->add_option("--temp", temperature, "thermal engine temperature (final when cooling)")
        ->capture_default_str();
    cmd->add_option("--t-start", t_start,
                    "geometric cooling start temperature (0 = fixed temperature)")
        ->capture_default_str();
    cmd->add_option("--sweeps", sweeps, "Metropolis sweeps per anneal")->capture_default_str();
    cmd->add_option("--seed", seed, "RNG seed (fixed default for reproducibility)")
        ->capture_default_str();
  }

  ThermalConfig thermal() const {
    ThermalConfig cfg;
    cfg.temperature = temperature;
    cfg.sweeps = sweeps;
    cfg.seed = seed;
    if (t_start > 0) {
      cfg.cooling = ThermalConfig::Cooling::geometric;
      cfg.start_temperature = t_start;
    }
    return cfg;
  }

  Schedule schedule() const { return Schedule::linear(a0, b0, ta, steps); }

  Engine make() const {
    if (engine == "exact") return ExactEngine{schedule()};
    if (engine == "thermal") return ThermalEngine{thermal()};
    throw std::invalid_argument("unknown engine '" + engine + "'");
  }
};

json verify_report_json(const VerifyReport& rep) {
  json out{{"pass", rep.pass},
           {"ground_degeneracy", rep.ground_degeneracy},
           {"classical_gap", rep.classical_gap},
           {"missing_rows", rep.missing_rows},
           {"extra_states", rep.extra_states}};
  if (rep.worst_violation)
    out["worst_violation"] = {{"state", rep.worst_violation->first},
                              {"energy_above_ground", rep.worst_violation->second}};
  return out;
}

int run(int argc, char** argv) {
  CLI::App app{
      "qalogic: native truth-table encodings as Ising problems, annealing simulation,\n"
      "clamped forward/backward computation, and device parameter mapping"};
  app.require_subcommand(1);

  int threads = 0;
  std::string config_path;
  app.add_option("--threads", threads, "cap OpenMP parallelism (0 = default)");
  app.add_option("--config", config_path, "JSON file supplying flag defaults");

  // Config values become defaults before parsing, so explicit flags win.
  json config = json::object();
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--config") config = load_json(argv[i + 1]);
  auto cfg_str = [&](const char* key, std::string& slot) {
    if (config.contains(key)) slot = config.at(key).get<std::string>();
  };
  auto cfg_num = [&](const char* key, auto& slot) {
    if (config.contains(key)) slot = config.at(key).get<std::decay_t<decltype(slot)>>();
  };

  // ---- encode ----
  auto* enc = app.add_subcommand("encode", "truth table -> Ising problem (native synthesis)");
  std::string enc_table, enc_unit, enc_out, enc_mode = "lp", enc_fixed;
  SynthesisConfig enc_cfg;
  cfg_str("table", enc_table);
  cfg_str("unit", enc_unit);
  cfg_str("out", enc_out);
  cfg_str("mode", enc_mode);
  cfg_str("fix-j", enc_fixed);
  cfg_num("bound", enc_cfg.coefficient_bound);
  cfg_num("min-gap", enc_cfg.min_gap);
  cfg_num("grid-step", enc_cfg.grid_step);
  enc->add_option("--table", enc_table, "truth table JSON path");
  enc->add_option("--unit", enc_unit, "built-in unit (canonical encoding, no search)");
  enc->add_option("--out", enc_out, "output problem JSON (default stdout)");
  enc->add_option("--bound", enc_cfg.coefficient_bound, "coefficient bound")->capture_default_str();
  enc->add_option("--min-gap", enc_cfg.min_gap, "required classical gap")->capture_default_str();
  enc->add_option("--mode", enc_mode, "lp | grid")->capture_default_str();
  enc->add_option("--grid-step", enc_cfg.grid_step, "grid mode step")->capture_default_str();
  enc->add_option("--fix-j", enc_fixed, "fixed couplings, e.g. \"0,1=0.5;0,2=1.0\"");

  // ---- verify ----
  auto* ver = app.add_subcommand("verify", "check that a problem's ground set equals a table");
  std::string ver_problem, ver_table, ver_unit;
  cfg_str("problem", ver_problem);
  ver->add_option("--problem", ver_problem, "problem JSON path")->required();
  ver->add_option("--table", ver_table, "truth table JSON path");
  ver->add_option("--unit", ver_unit, "built-in unit's table");

  // ---- anneal ----
  auto* ann = app.add_subcommand("anneal", "run an engine and emit a histogram CSV");
  std::string ann_problem, ann_unit, ann_out, ann_clamp;
  double ann_alpha = 0.0;
  std::uint64_t ann_iters = 10000;
  EngineOpts ann_engine;
  cfg_str("problem", ann_problem);
  cfg_str("unit", ann_unit);
  cfg_str("out", ann_out);
  cfg_str("clamp", ann_clamp);
  cfg_num("alpha", ann_alpha);
  cfg_num("iters", ann_iters);
  cfg_str("engine", ann_engine.engine);
  cfg_num("ta", ann_engine.ta);
  cfg_num("temp", ann_engine.temperature);
  cfg_num("sweeps", ann_engine.sweeps);
  cfg_num("seed", ann_engine.seed);
  ann->add_option("--problem", ann_problem, "problem JSON path");
  ann->add_option("--unit", ann_unit, "built-in unit");
  ann->add_option("--iters", ann_iters, "histogram iterations")->capture_default_str();
  ann->add_option("--clamp", ann_clamp, "clamp spec, e.g. \"A=0,B=0\" or \"0=1\"");
  ann->add_option("--alpha", ann_alpha, "clamp offset strength")->capture_default_str();
  ann->add_option("--out", ann_out, "histogram CSV path (default stdout)");
  ann_engine.add_flags(ann);

  // ---- sweep ----
  auto* swp = app.add_subcommand("sweep", "success probability over a parameter grid (CSV)");
  std::string swp_problem, swp_unit, swp_out, swp_clamp, swp_variable = "ta", swp_grid,
                                                         swp_targets;
  bool swp_target_ground = false;
  std::uint64_t swp_iters = 10000;
  EngineOpts swp_engine;
  cfg_str("problem", swp_problem);
  cfg_str("unit", swp_unit);
  cfg_str("variable", swp_variable);
  cfg_str("grid", swp_grid);
  cfg_str("targets", swp_targets);
  cfg_num("iters", swp_iters);
  swp->add_option("--problem", swp_problem, "problem JSON path");
  swp->add_option("--unit", swp_unit, "built-in unit");
  swp->add_option("--variable", swp_variable, "alpha | ta | temperature")->capture_default_str();
  swp->add_option("--grid", swp_grid, "ascending comma list, e.g. \"1,10,100\"")->required();
  swp->add_option("--targets", swp_targets, "target bitstrings, comma separated");
  swp->add_flag("--target-ground", swp_target_ground, "use the problem's ground set as targets");
  swp->add_option("--clamp", swp_clamp, "clamp spec for alpha sweeps");
  swp->add_option("--iters", swp_iters, "iterations per grid point")->capture_default_str();
  swp->add_option("--out", swp_out, "sweep CSV path (default stdout)");
  swp_engine.add_flags(swp);

  // ---- factor ----
  auto* fac = app.add_subcommand("factor", "backward multiplication: recover (x, y) with x*y = N");
  FactorQuery fac_query;
  std::string fac_out, fac_hist, fac_engine_name = "exhaustive";
  EngineOpts fac_engine;
  cfg_num("n", fac_query.n);
  cfg_num("xbits", fac_query.x_bits);
  cfg_num("ybits", fac_query.y_bits);
  cfg_num("alpha", fac_query.alpha);
  cfg_num("iters", fac_query.iterations);
  cfg_str("engine", fac_engine_name);
  cfg_num("temp", fac_engine.temperature);
  cfg_num("sweeps", fac_engine.sweeps);
  cfg_num("seed", fac_engine.seed);
  fac->add_option("--n", fac_query.n, "product to factor")->required();
  fac->add_option("--xbits", fac_query.x_bits, "x operand width")->capture_default_str();
  fac->add_option("--ybits", fac_query.y_bits, "y operand width")->capture_default_str();
  fac->add_option("--alpha", fac_query.alpha, "product clamp strength")->capture_default_str();
  fac->add_option("--iters", fac_query.iterations, "anneals (sampling engines)")
      ->capture_default_str();
  fac->add_option("--hist", fac_hist, "also write the histogram CSV here");
  fac->add_option("--out", fac_out, "result JSON path (default stdout)");
  fac->add_option("--engine", fac_engine_name, "exhaustive | exact | thermal")
      ->capture_default_str();
  fac_engine.add_flags(fac, false);

  // ---- device ----
  auto* dev = app.add_subcommand("device", "derive dimensionless (h, J) and beta_L from SI values");
  std::string dev_params, dev_reference, dev_out;
  bool dev_json = false;
  cfg_str("params", dev_params);
  dev->add_option("--params", dev_params, "device parameter JSON path");
  dev->add_option("--reference", dev_reference, "built-in reference design: gate | multiplier");
  dev->add_flag("--json", dev_json, "emit JSON instead of text");
  dev->add_option("--out", dev_out, "output path (default stdout)");

  CLI11_PARSE(app, argc, argv);

#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#endif

  if (enc->parsed()) {
    IsingProblem problem;
    if (!enc_unit.empty()) {
      problem = unit_problem(enc_unit);
    } else {
      TruthTable table = load_table(enc_table, "");
      SynthesisConfig cfg = enc_cfg;
      cfg.mode = enc_mode == "grid" ? SynthesisConfig::Mode::grid : SynthesisConfig::Mode::lp;
      if (!enc_fixed.empty()) cfg.fixed_j = parse_fixed_j(enc_fixed);
      problem = synthesize(table, cfg);
    }
    write_output(enc_out, dump_json(json(problem)));
    return exit_ok;
  }

  if (ver->parsed()) {
    IsingProblem problem = load_problem(ver_problem, "");
    TruthTable table = load_table(ver_table, ver_unit);
    VerifyReport rep = verify(problem, table);
    std::cout << dump_json(verify_report_json(rep));
    return rep.pass ? exit_ok : exit_validation;
  }

  if (ann->parsed()) {
    IsingProblem problem = load_problem(ann_problem, ann_unit);
    if (!ann_clamp.empty()) problem = clamp(problem, parse_clamp(problem, ann_clamp), ann_alpha);
    Histogram hist = run_histogram(problem, ann_engine.make(), ann_iters);
    write_output(ann_out, hist.csv());
    return exit_ok;
  }

  if (swp->parsed()) {
    IsingProblem problem = load_problem(swp_problem, swp_unit);
    std::vector<double> grid = parse_grid(swp_grid);
    std::set<std::string> targets;
    if (swp_target_ground) {
      for (StateBits b : ground_set(problem)) targets.insert(bits_to_string(b, problem.n));
    } else {
      targets = parse_targets(swp_targets);
    }
    SweepVariable variable;
    if (swp_variable == "alpha")
      variable = SweepVariable::alpha;
    else if (swp_variable == "ta")
      variable = SweepVariable::anneal_time;
    else if (swp_variable == "temperature")
      variable = SweepVariable::temperature;
    else
      throw std::invalid_argument("unknown sweep variable '" + swp_variable + "'");
    std::map<int, int> clamp_bits;
    if (!swp_clamp.empty()) clamp_bits = parse_clamp(problem, swp_clamp);
    auto rows = sweep(problem, variable, grid, swp_engine.make(), targets, swp_iters, clamp_bits);
    write_output(swp_out, sweep_csv(rows));
    return exit_ok;
  }

  if (fac->parsed()) {
    if (fac_engine_name == "exhaustive")
      fac_query.engine = ExhaustiveEngine{};
    else if (fac_engine_name == "exact")
      fac_query.engine = ExactEngine{fac_engine.schedule()};
    else if (fac_engine_name == "thermal")
      fac_query.engine = ThermalEngine{fac_engine.thermal()};
    else
      throw std::invalid_argument("unknown engine '" + fac_engine_name + "'");
    FactorResult result = factor(fac_query);
    if (!fac_hist.empty()) write_file(fac_hist, result.histogram.csv());
    json pairs = json::array();
    for (const auto& [x, y] : result.pairs) pairs.push_back({x, y});
    json out{{"pairs", pairs}, {"success", result.success}};
    out["histogram"] = fac_hist.empty() ? json(nullptr) : json(fac_hist);
    json counts = json::array();
    for (const auto& [pair, c] : result.pair_counts)
      counts.push_back({{"x", pair.first}, {"y", pair.second}, {"count", c}});
    out["pair_counts"] = counts;
    out["query"] = {{"n", fac_query.n},          {"xbits", fac_query.x_bits},
                    {"ybits", fac_query.y_bits}, {"alpha", fac_query.alpha},
                    {"engine", fac_engine_name}, {"iterations", fac_query.iterations}};
    write_output(fac_out, dump_json(out));
    return exit_ok;
  }

  if (dev->parsed()) {
    device::DeviceParams params;
    if (!dev_reference.empty()) {
      if (dev_reference == "gate")
        params = device::reference_gate_device();
      else if (dev_reference == "multiplier")
        params = device::reference_multiplier_device();
      else
        throw std::invalid_argument("unknown reference design '" + dev_reference + "'");
    } else if (!dev_params.empty()) {
      params = load_json(dev_params).get<device::DeviceParams>();
    } else {
      throw std::invalid_argument("need --params or --reference");
    }
    device::DeviceReport rep = device::derive(params);
    write_output(dev_out, dev_json ? dump_json(rep.to_json()) : rep.text());
    return exit_ok;
  }

  return exit_usage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const InfeasibleEncodingError& e) {
    json detail{{"reason", e.report().reason}};
    json weights = json::array();
    for (const auto& [state, w] : e.report().state_weights)
      weights.push_back({{"state", state}, {"weight", w}});
    detail["state_weights"] = weights;
    emit_error("infeasible", e.what(), detail);
    return exit_infeasible;
  } catch (const CapacityError& e) {
    emit_error("capacity", e.what());
    return exit_capacity;
  } catch (const DimensionError& e) {
    emit_error("dimension", e.what());
    return exit_validation;
  } catch (const nlohmann::json::exception& e) {
    emit_error("invalid-input", e.what());
    return exit_usage;
  } catch (const std::invalid_argument& e) {
    emit_error("invalid-input", e.what());
    return exit_usage;
  } catch (const std::exception& e) {
    emit_error("runtime", e.what());
    return exit_usage;
  }
}
