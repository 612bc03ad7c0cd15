#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "qalogic/ising.hpp"

namespace qalogic {

inline constexpr int max_evolve_qubits = 12;
inline constexpr std::uint64_t default_seed = 12345;

/// Annealing envelopes on normalized time s in [0,1]. The evolved
/// Hamiltonian is H(s) = -A(s)/2 sum_i sigma_x^i + B(s)/2 (problem term).
/// A(1) must vanish (transverse field off at readout) and both envelopes
/// must be non-negative.
struct Schedule {
  std::function<double(double)> a;
  std::function<double(double)> b;
  double total_time = 100.0;  // T_a in dimensionless time (1/energy) units
  int steps = 100;            // integrator floor; effective count also scales with T_a
  double a0 = 2.0, b0 = 2.0;

  static Schedule linear(double a0 = 2.0, double b0 = 2.0, double total_time = 100.0,
                         int steps = 100);
  int effective_steps() const;  // max(steps, ceil(100 * T_a))
  void validate() const;
};

struct EvolveResult {
  std::vector<double> probabilities;  // |psi|^2 per basis state, sums to 1 within 1e-9
  double max_norm_error = 0.0;        // max per-step | ||psi|| - 1 |
  int steps = 0;
};

/// Integrates i dpsi/dt = H(s(t)) psi from the uniform superposition (the
/// ground state of the pure transverse-field term) over [0, T_a] with a
/// fixed-step norm-preserving split-operator scheme, second order in dt.
/// T_a = 0 returns the uniform distribution exactly.
EvolveResult exact_evolve(const IsingProblem& p, const Schedule& schedule,
                          Exec exec = Exec::parallel);

/// Dense H at fixed envelope values (row-major, 2^n x 2^n). The diagonal at
/// b_value = 2 equals state_energies(p) exactly, which pins the sigma_z sign
/// convention.
std::vector<double> dense_hamiltonian(const IsingProblem& p, double a_value, double b_value);

struct GapScan {
  double s_at_min = 0.0;
  double min_gap = 0.0;
  std::vector<double> s;
  std::vector<double> gap;
};

/// Scans s over `resolution` grid points and diagonalizes H(s). The gap at
/// each point is measured from the top of the near-degenerate ground cluster
/// (levels within cluster_tol of E0) to the first level above it, so finally
/// degenerate ground sets report the gap protecting the whole ground
/// manifold instead of the vanishing intra-manifold splitting.
/// cluster_tol < 0 selects the default 1e-6 * B(1).
GapScan min_gap(const IsingProblem& p, const Schedule& schedule, int resolution,
                double cluster_tol = -1.0, Exec exec = Exec::parallel);

struct ThermalConfig {
  double temperature = 0.1;  // dimensionless, in the problem's energy units
  int sweeps = 100;
  enum class Cooling { fixed, geometric } cooling = Cooling::fixed;
  double start_temperature = 1.0;  // geometric cooling start; final is `temperature`
  std::uint64_t seed = default_seed;

  void validate() const;
  double temperature_at(int sweep) const;
};

/// Metropolis single-spin-flip dynamics from a uniform random state;
/// acceptance min(1, exp(-dE/T)), sequential sweeps over the qubits.
/// Deterministic for a fixed seed. T = 0 is greedy descent.
SpinState thermal_anneal(const IsingProblem& p, const ThermalConfig& cfg);

struct Histogram {
  int n = 0;
  std::map<std::string, std::uint64_t> counts;
  std::uint64_t total = 0;
  nlohmann::json metadata;

  void add(const std::string& bitstring, std::uint64_t k = 1);
  std::string csv() const;  // header "bitstring,count", rows sorted
};

struct ExactEngine {
  Schedule schedule;
};
struct ThermalEngine {
  ThermalConfig config;
};
using Engine = std::variant<ExactEngine, ThermalEngine>;

/// Exact engine: histogram = computed distribution times iterations
/// (rounded, residual assigned to the mode). Thermal engine: `iterations`
/// independent anneals with per-iteration seeds (seed + index), so parallel
/// and serial runs agree exactly.
Histogram run_histogram(const IsingProblem& p, const Engine& engine, std::uint64_t iterations,
                        Exec exec = Exec::parallel);

/// Mass fraction of the target bitstrings; in [0,1].
double success_probability(const Histogram& hist, const std::set<std::string>& targets);

enum class SweepVariable { alpha, anneal_time, temperature };

const char* sweep_variable_name(SweepVariable v);

struct SweepRow {
  double value = 0.0;
  double success = 0.0;
  std::uint64_t iterations = 0;
};

/// One histogram per grid value. alpha sweeps clamp `clamp_targets` on the
/// base problem at each strength; anneal-time and temperature sweeps adjust
/// the engine. The grid must be non-empty and ascending.
std::vector<SweepRow> sweep(const IsingProblem& base, SweepVariable variable,
                            const std::vector<double>& grid, const Engine& engine,
                            const std::set<std::string>& targets, std::uint64_t iterations,
                            const std::map<int, int>& clamp_targets = {},
                            Exec exec = Exec::parallel);

std::string sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace qalogic
