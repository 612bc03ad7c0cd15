#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "qalogic/exec.hpp"

namespace qalogic {

/// Basis state packed as bits; bit i is qubit i. Qubit state "1" (clockwise
/// persistent current on hardware) corresponds to spin +1.
using StateBits = std::uint32_t;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DegenerateSpectrumError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double default_group_tol = 1e-9;
inline constexpr int default_enum_cap = 24;

std::string bits_to_string(StateBits bits, int n);
StateBits string_to_bits(const std::string& bitstring);

/// Spin configuration over {-1,+1}. Bit b maps to spin 2b-1.
struct SpinState {
  std::vector<std::int8_t> spins;

  SpinState() = default;
  explicit SpinState(std::vector<std::int8_t> s) : spins(std::move(s)) {}

  static SpinState from_bits(StateBits bits, int n);
  static SpinState from_string(const std::string& bitstring);

  StateBits to_bits() const;
  std::string to_string() const;

  int size() const { return static_cast<int>(spins.size()); }
  bool operator==(const SpinState&) const = default;
};

/// Dimensionless problem Hamiltonian
///   E(s) = offset + sum_i h[i] s_i + sum_{i<j} J_ij s_i s_j.
/// Couplings are stored sparsely on unordered pairs; an absent pair is 0.
struct IsingProblem {
  int n = 0;
  std::vector<double> h;
  std::map<std::pair<int, int>, double> j;  // keys (i, j) with i < j
  double offset = 0.0;
  std::vector<std::string> labels;  // empty, or one name per qubit

  IsingProblem() = default;
  explicit IsingProblem(int qubits) : n(qubits), h(qubits, 0.0) {}

  void set_coupling(int a, int b, double value);
  void add_coupling(int a, int b, double value);
  double coupling(int a, int b) const;

  void validate() const;

  double energy(const SpinState& state) const;
  double energy_bits(StateBits state) const;

  std::string label_or_index(int qubit) const;
  /// Index of the qubit named `name`; also accepts a decimal index.
  int qubit_index(const std::string& name) const;
};

void to_json(nlohmann::json& out, const IsingProblem& p);
void from_json(const nlohmann::json& in, IsingProblem& p);

/// Per-qubit gauge flip: h_k -> flip[k] h_k, J_kl -> flip[k] flip[l] J_kl.
/// Relabels states (s_k -> flip[k] s_k) but preserves the spectrum.
IsingProblem gauge_flip(const IsingProblem& p, const std::vector<int>& flip);

/// Global spin flip h -> -h; ground states map by bitwise complement.
IsingProblem negate_h(const IsingProblem& p);

struct SpectrumGroup {
  double energy = 0.0;            // energy of the lowest state in the group
  std::vector<StateBits> states;  // ascending
};

/// Full classical spectrum grouped within a tolerance. Groups are disjoint,
/// cover all 2^n states, and successive group energies differ by more than
/// the grouping tolerance.
struct Spectrum {
  int n = 0;
  double group_tol = default_group_tol;
  std::vector<SpectrumGroup> groups;

  const SpectrumGroup& ground() const { return groups.front(); }
  double classical_gap() const;  // throws DegenerateSpectrumError on one group
};

/// Energies of all 2^n basis states, indexed by StateBits.
std::vector<double> state_energies(const IsingProblem& p, Exec exec = Exec::parallel);

Spectrum enumerate_spectrum(const IsingProblem& p, double group_tol = default_group_tol,
                            int enum_cap = default_enum_cap, Exec exec = Exec::parallel);

std::vector<StateBits> ground_set(const IsingProblem& p, double group_tol = default_group_tol,
                                  int enum_cap = default_enum_cap, Exec exec = Exec::parallel);

double classical_gap(const IsingProblem& p, double group_tol = default_group_tol,
                     int enum_cap = default_enum_cap, Exec exec = Exec::parallel);

/// Exact partial evaluation. Returns the problem restricted to the
/// unassigned qubits (original order preserved) with couplings into fixed
/// spins folded into h and constants folded into the offset, so that the
/// reduced energy of any completion equals the original energy of the merged
/// state. `assignment` maps qubit index -> bit.
IsingProblem fix_spins(const IsingProblem& p, const std::map<int, int>& assignment);

/// Offset-bias pinning: h_i -> h_i - (2b-1) alpha for each targeted qubit;
/// couplings and untargeted fields are unchanged. alpha must be >= 0.
IsingProblem clamp(const IsingProblem& p, const std::map<int, int>& targets, double alpha);

/// |h_i| + sum_j |J_ij|. Any alpha strictly above this pins qubit i to the
/// clamped bit in every ground state (single-spin-flip argument).
double clamp_threshold(const IsingProblem& p, int qubit);

}  // namespace qalogic
