#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qalogic/ising.hpp"

namespace qalogic {

enum class GateKind { Nor, Nand, Or, And, MultiplierCell };

const char* gate_name(GateKind kind);
std::optional<GateKind> gate_from_name(std::string_view name);

/// A logic specification: the set of valid bit-rows over named qubits.
/// An encoding is correct when the ground set equals exactly these rows.
struct TruthTable {
  std::vector<std::string> labels;
  int n = 0;
  std::vector<StateBits> rows;  // sorted ascending, unique

  static TruthTable from_rows(std::vector<std::string> labels,
                              const std::vector<std::string>& row_strings);
  void validate() const;
  bool contains(StateBits state) const;
  std::vector<std::string> row_strings() const;
};

void to_json(nlohmann::json& out, const TruthTable& t);
void from_json(const nlohmann::json& in, TruthTable& t);

/// Truth table of a built-in unit. Gates use qubit order (A, B, R); the
/// multiplier cell uses (X, Y, Z, D, C, S).
TruthTable truth_table(GateKind kind);

/// The 16 rows satisfying X*Y + Z + D = S + 2C over bits.
TruthTable multiplier_table();

/// Canonical native encoding of a built-in unit. Gate couplings are
/// (J_AB, J_AR, J_BR) = (0.5, 1.0, 1.0) for NOR/NAND and (0.5, -1.0, -1.0)
/// for OR/AND; gate fields are (±0.5, ±0.5, ±1.0) with the sign pattern that
/// makes the ground set equal the gate's truth table. The multiplier cell is
/// the deterministic synthesizer output (see multiplier_cell()).
IsingProblem gate(GateKind kind);

/// Cached canonical six-qubit multiplier cell encoding.
const IsingProblem& multiplier_cell();

struct SynthesisConfig {
  double coefficient_bound = 8.0;
  double min_gap = 1.0;
  enum class Mode { lp, grid } mode = Mode::lp;
  double grid_step = 0.5;
  /// Couplings held at fixed values instead of being free variables.
  std::map<std::pair<int, int>, double> fixed_j;
};

struct InfeasibilityReport {
  std::string reason;
  /// Per-state multipliers from the exact phase-1 dual; their weighted
  /// combination of the row/non-row constraints is contradictory.
  std::vector<std::pair<std::string, double>> state_weights;
};

class InfeasibleEncodingError : public std::runtime_error {
 public:
  InfeasibleEncodingError(const std::string& msg, InfeasibilityReport report);
  const InfeasibilityReport& report() const { return report_; }

 private:
  InfeasibilityReport report_;
};

/// Ancilla-free synthesis: finds (h, J) on exactly the table's qubits with
/// every row at equal minimal energy and every non-row at least min_gap
/// above. LP mode solves the 2^n-constraint system in exact rational
/// arithmetic (the result is provable, not sampled) and canonicalizes the
/// solution deterministically; grid mode scans integer-step coefficients.
/// Throws InfeasibleEncodingError when no ancilla-free 2-local encoding
/// exists within the coefficient bound.
IsingProblem synthesize(const TruthTable& table, const SynthesisConfig& cfg = {});

struct VerifyReport {
  bool pass = false;
  int ground_degeneracy = 0;
  double classical_gap = 0.0;  // 0 when the spectrum has a single group
  std::vector<std::string> missing_rows;
  std::vector<std::string> extra_states;
  /// Worst offender when failing: state and its energy above the ground set.
  std::optional<std::pair<std::string, double>> worst_violation;
  std::string summary() const;
};

VerifyReport verify(const IsingProblem& p, const TruthTable& table,
                    double group_tol = default_group_tol, int enum_cap = default_enum_cap);

struct Gauge {
  std::vector<int> flip;    // ±1 per qubit, flip[0] fixed to +1
  double scale = 1.0;       // b.J ~= scale * flip_i flip_j * a.J
  double j_residual = 0.0;  // rms over the union of coupled pairs
  double h_residual = 0.0;  // rms of b.h - scale * flip * a.h
  bool h_matched = false;
};

/// Searches the 2^(n-1) per-qubit flips and a least-squares scale for a
/// gauge making a's coupling pattern proportional to b's. Returns the best
/// candidate only if its J residual is within tol (relative to the coupling
/// magnitude); h agreement is reported, not required.
std::optional<Gauge> gauge_match(const IsingProblem& a, const IsingProblem& b, double tol = 1e-9);

/// Best gauge by J residual regardless of fit quality.
Gauge best_gauge(const IsingProblem& a, const IsingProblem& b);

/// Named problem units available on one "chip" image.
std::vector<std::string> unit_names();
IsingProblem unit_problem(const std::string& name);
TruthTable unit_table(const std::string& name);

}  // namespace qalogic
