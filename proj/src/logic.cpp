#include "qalogic/logic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <sstream>

#include "qalogic/simplex.hpp"

namespace qalogic {

const char* gate_name(GateKind kind) {
  switch (kind) {
    case GateKind::Nor: return "nor";
    case GateKind::Nand: return "nand";
    case GateKind::Or: return "or";
    case GateKind::And: return "and";
    case GateKind::MultiplierCell: return "multiplier";
  }
  return "?";
}

std::optional<GateKind> gate_from_name(std::string_view name) {
  if (name == "nor") return GateKind::Nor;
  if (name == "nand") return GateKind::Nand;
  if (name == "or") return GateKind::Or;
  if (name == "and") return GateKind::And;
  if (name == "multiplier" || name == "multiplier-cell") return GateKind::MultiplierCell;
  return std::nullopt;
}

TruthTable TruthTable::from_rows(std::vector<std::string> labels,
                                 const std::vector<std::string>& row_strings) {
  TruthTable t;
  t.labels = std::move(labels);
  t.n = static_cast<int>(t.labels.size());
  for (const auto& r : row_strings) {
    if (static_cast<int>(r.size()) != t.n)
      throw DimensionError("truth table row '" + r + "' does not match label count");
    t.rows.push_back(string_to_bits(r));
  }
  std::sort(t.rows.begin(), t.rows.end());
  t.validate();
  return t;
}

void TruthTable::validate() const {
  if (n <= 0) throw DimensionError("truth table needs at least one qubit");
  if (n > 31) throw CapacityError("truth table wider than 31 qubits");
  if (static_cast<int>(labels.size()) != n) throw DimensionError("label count mismatch");
  if (rows.empty()) throw std::invalid_argument("truth table has no rows");
  if (!std::is_sorted(rows.begin(), rows.end())) throw std::invalid_argument("rows not sorted");
  if (std::adjacent_find(rows.begin(), rows.end()) != rows.end())
    throw std::invalid_argument("duplicate truth table row");
  const std::uint64_t full = std::uint64_t{1} << n;
  if (rows.size() >= full)
    throw std::invalid_argument(
        "table listing all states cannot be encoded as a strict ground set");
  for (StateBits r : rows)
    if (static_cast<std::uint64_t>(r) >= full) throw DimensionError("row wider than table");
}

bool TruthTable::contains(StateBits state) const {
  return std::binary_search(rows.begin(), rows.end(), state);
}

std::vector<std::string> TruthTable::row_strings() const {
  std::vector<std::string> out;
  out.reserve(rows.size());
  for (StateBits r : rows) out.push_back(bits_to_string(r, n));
  return out;
}

void to_json(nlohmann::json& out, const TruthTable& t) {
  out = nlohmann::json::object();
  out["labels"] = t.labels;
  out["rows"] = t.row_strings();
}

void from_json(const nlohmann::json& in, TruthTable& t) {
  t = TruthTable::from_rows(in.at("labels").get<std::vector<std::string>>(),
                            in.at("rows").get<std::vector<std::string>>());
}

namespace {

StateBits pack3(int a, int b, int r) {
  return static_cast<StateBits>(a | (b << 1) | (r << 2));
}

TruthTable gate_table(GateKind kind) {
  std::vector<std::string> rows;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      int r = 0;
      switch (kind) {
        case GateKind::Nor: r = !(a || b); break;
        case GateKind::Nand: r = !(a && b); break;
        case GateKind::Or: r = a || b; break;
        case GateKind::And: r = a && b; break;
        default: break;
      }
      rows.push_back(bits_to_string(pack3(a, b, r), 3));
    }
  }
  return TruthTable::from_rows({"A", "B", "R"}, rows);
}

}  // namespace

TruthTable multiplier_table() {
  std::vector<std::string> rows;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int z = 0; z < 2; ++z)
        for (int d = 0; d < 2; ++d) {
          int t = x * y + z + d;
          int c = t >> 1;
          int s = t & 1;
          StateBits b = static_cast<StateBits>(x | (y << 1) | (z << 2) | (d << 3) | (c << 4) |
                                               (s << 5));
          rows.push_back(bits_to_string(b, 6));
        }
  return TruthTable::from_rows({"X", "Y", "Z", "D", "C", "S"}, rows);
}

TruthTable truth_table(GateKind kind) {
  if (kind == GateKind::MultiplierCell) return multiplier_table();
  return gate_table(kind);
}

IsingProblem gate(GateKind kind) {
  if (kind == GateKind::MultiplierCell) return multiplier_cell();
  IsingProblem p(3);
  p.labels = {"A", "B", "R"};
  // Input fields are symmetric; the output field carries twice their weight.
  // NOR/NAND differ by the overall sign of h, OR/AND additionally flip the
  // couplings into the output qubit.
  switch (kind) {
    case GateKind::Nor:
      p.h = {0.5, 0.5, 1.0};
      p.set_coupling(0, 1, 0.5);
      p.set_coupling(0, 2, 1.0);
      p.set_coupling(1, 2, 1.0);
      break;
    case GateKind::Nand:
      p.h = {-0.5, -0.5, -1.0};
      p.set_coupling(0, 1, 0.5);
      p.set_coupling(0, 2, 1.0);
      p.set_coupling(1, 2, 1.0);
      break;
    case GateKind::Or:
      p.h = {0.5, 0.5, -1.0};
      p.set_coupling(0, 1, 0.5);
      p.set_coupling(0, 2, -1.0);
      p.set_coupling(1, 2, -1.0);
      break;
    case GateKind::And:
      p.h = {-0.5, -0.5, 1.0};
      p.set_coupling(0, 1, 0.5);
      p.set_coupling(0, 2, -1.0);
      p.set_coupling(1, 2, -1.0);
      break;
    default:
      break;
  }
  return p;
}

InfeasibleEncodingError::InfeasibleEncodingError(const std::string& msg, InfeasibilityReport report)
    : std::runtime_error(msg), report_(std::move(report)) {}

namespace {

using lp::Rational;
using lp::Relation;

struct VariableLayout {
  // Coefficient variables: h_0..h_{n-1} first, then free couplings in lex
  // pair order. E0 (the common row energy) is appended by the LP builder.
  std::vector<std::pair<int, int>> free_pairs;
  int n = 0;
  int coeff_count() const { return n + static_cast<int>(free_pairs.size()); }
};

double spin_d(StateBits s, int q) { return (s >> q) & 1u ? 1.0 : -1.0; }

// Builds the per-state constraint rows over (coeffs..., E0): rows of the
// table pin the energy to E0 exactly, non-rows sit at least min_gap above.
// Pinned coefficient values are folded into the constants.
void add_state_constraints(lp::ExactLp& lp_problem, const TruthTable& table,
                           const VariableLayout& vars, const SynthesisConfig& cfg,
                           const std::map<int, Rational>& pinned) {
  const int n = vars.n;
  const int coeffs = vars.coeff_count();
  const Rational gap = lp::rational_from_double(cfg.min_gap);
  const std::int64_t total = std::int64_t{1} << n;
  for (std::int64_t sb = 0; sb < total; ++sb) {
    const StateBits s = static_cast<StateBits>(sb);
    std::vector<Rational> row(static_cast<std::size_t>(lp_problem.num_vars()), Rational(0));
    Rational constant = 0;
    for (int i = 0; i < n; ++i) {
      Rational c(static_cast<int>(spin_d(s, i)));
      auto it = pinned.find(i);
      if (it != pinned.end())
        constant += c * it->second;
      else
        row[static_cast<std::size_t>(i)] = c;
    }
    for (std::size_t k = 0; k < vars.free_pairs.size(); ++k) {
      auto [i, jj] = vars.free_pairs[k];
      Rational c(static_cast<int>(spin_d(s, i) * spin_d(s, jj)));
      int var = n + static_cast<int>(k);
      auto it = pinned.find(var);
      if (it != pinned.end())
        constant += c * it->second;
      else
        row[static_cast<std::size_t>(var)] = c;
    }
    for (const auto& [pair, v] : cfg.fixed_j) {
      constant += lp::rational_from_double(v) *
                  Rational(static_cast<int>(spin_d(s, pair.first) * spin_d(s, pair.second)));
    }
    row[static_cast<std::size_t>(coeffs)] = -1;  // E0
    if (table.contains(s))
      lp_problem.add_constraint(std::move(row), Relation::eq, -constant);
    else
      lp_problem.add_constraint(std::move(row), Relation::ge, gap - constant);
  }
}

IsingProblem synthesize_lp(const TruthTable& table, const SynthesisConfig& cfg) {
  const int n = table.n;
  if (n > 16) throw CapacityError("LP synthesis is limited to 16 qubits (2^n constraints)");

  VariableLayout vars;
  vars.n = n;
  for (int i = 0; i < n; ++i)
    for (int jj = i + 1; jj < n; ++jj)
      if (!cfg.fixed_j.count({i, jj})) vars.free_pairs.push_back({i, jj});

  const int coeffs = vars.coeff_count();
  const Rational bound = lp::rational_from_double(cfg.coefficient_bound);
  Rational e0_bound = bound * Rational(coeffs) + lp::rational_from_double(cfg.min_gap) + 1;
  for (const auto& [pair, v] : cfg.fixed_j) {
    (void)pair;
    e0_bound += lp::rational_from_double(std::abs(v));
  }

  // Stage 0: minimize the coefficient envelope t with |coeff| <= t <= bound.
  // The tightest envelope both canonicalizes the scale and keeps the
  // encoding balanced for annealing.
  Rational envelope;
  {
    lp::ExactLp stage(coeffs + 2);  // coeffs..., E0, t
    const int e0_var = coeffs;
    const int t_var = coeffs + 1;
    for (int k = 0; k < coeffs; ++k) stage.set_bounds(k, -bound, bound);
    stage.set_bounds(e0_var, -e0_bound, e0_bound);
    stage.set_bounds(t_var, 0, bound);
    add_state_constraints(stage, table, vars, cfg, {});
    for (int k = 0; k < coeffs; ++k) {
      std::vector<Rational> le_t(static_cast<std::size_t>(coeffs + 2), Rational(0));
      le_t[static_cast<std::size_t>(k)] = 1;
      le_t[static_cast<std::size_t>(t_var)] = -1;
      stage.add_constraint(le_t, Relation::le, 0);
      std::vector<Rational> ge_t(static_cast<std::size_t>(coeffs + 2), Rational(0));
      ge_t[static_cast<std::size_t>(k)] = -1;
      ge_t[static_cast<std::size_t>(t_var)] = -1;
      stage.add_constraint(ge_t, Relation::le, 0);
    }
    std::vector<Rational> objective(static_cast<std::size_t>(coeffs + 2), Rational(0));
    objective[static_cast<std::size_t>(t_var)] = 1;
    lp::LpResult r = stage.minimize(objective);
    if (r.status == lp::LpStatus::infeasible) {
      InfeasibilityReport report;
      report.reason = "the row-degeneracy and gap constraints admit no solution within the bound";
      const std::int64_t total = std::int64_t{1} << n;
      for (std::int64_t sb = 0; sb < total && sb < static_cast<std::int64_t>(r.constraint_multipliers.size()); ++sb) {
        double w = lp::to_double(r.constraint_multipliers[static_cast<std::size_t>(sb)]);
        if (w != 0.0)
          report.state_weights.push_back({bits_to_string(static_cast<StateBits>(sb), n), w});
      }
      std::ostringstream msg;
      msg << "no ancilla-free 2-local encoding for the " << table.rows.size() << "-row table on "
          << n << " qubits (coefficient bound " << cfg.coefficient_bound << ", min gap "
          << cfg.min_gap << ")";
      throw InfeasibleEncodingError(msg.str(), std::move(report));
    }
    envelope = r.x[static_cast<std::size_t>(t_var)];
  }

  // Remaining stages: lexicographic minimization of each coefficient inside
  // the fixed envelope, substituting pins so later LPs shrink. The result is
  // the unique lex-smallest solution, so builds are reproducible.
  std::map<int, Rational> pinned;
  for (int target = 0; target < coeffs; ++target) {
    const int free_count = coeffs - static_cast<int>(pinned.size());
    lp::ExactLp stage(free_count + 1);
    // Map original variable index -> stage index for unpinned variables.
    std::vector<int> stage_index(static_cast<std::size_t>(coeffs), -1);
    {
      int next = 0;
      for (int k = 0; k < coeffs; ++k)
        if (!pinned.count(k)) stage_index[static_cast<std::size_t>(k)] = next++;
    }
    for (int k = 0; k < coeffs; ++k)
      if (stage_index[static_cast<std::size_t>(k)] >= 0)
        stage.set_bounds(stage_index[static_cast<std::size_t>(k)], -envelope, envelope);
    stage.set_bounds(free_count, -e0_bound, e0_bound);

    // Rebuild the state constraints over the shrunken variable set.
    const Rational gap = lp::rational_from_double(cfg.min_gap);
    const std::int64_t total = std::int64_t{1} << n;
    for (std::int64_t sb = 0; sb < total; ++sb) {
      const StateBits s = static_cast<StateBits>(sb);
      std::vector<Rational> row(static_cast<std::size_t>(free_count + 1), Rational(0));
      Rational constant = 0;
      for (int k = 0; k < coeffs; ++k) {
        Rational c;
        if (k < n) {
          c = Rational(static_cast<int>(spin_d(s, k)));
        } else {
          auto [i, jj] = vars.free_pairs[static_cast<std::size_t>(k - n)];
          c = Rational(static_cast<int>(spin_d(s, i) * spin_d(s, jj)));
        }
        auto it = pinned.find(k);
        if (it != pinned.end())
          constant += c * it->second;
        else
          row[static_cast<std::size_t>(stage_index[static_cast<std::size_t>(k)])] = c;
      }
      for (const auto& [pair, v] : cfg.fixed_j)
        constant += lp::rational_from_double(v) *
                    Rational(static_cast<int>(spin_d(s, pair.first) * spin_d(s, pair.second)));
      row[static_cast<std::size_t>(free_count)] = -1;
      if (table.contains(s))
        stage.add_constraint(std::move(row), Relation::eq, -constant);
      else
        stage.add_constraint(std::move(row), Relation::ge, gap - constant);
    }

    std::vector<Rational> objective(static_cast<std::size_t>(free_count + 1), Rational(0));
    objective[static_cast<std::size_t>(stage_index[static_cast<std::size_t>(target)])] = 1;
    lp::LpResult r = stage.minimize(objective);
    if (r.status != lp::LpStatus::optimal)
      throw std::logic_error("lexicographic stage infeasible after feasible envelope");
    pinned[target] = r.x[static_cast<std::size_t>(stage_index[static_cast<std::size_t>(target)])];
  }

  IsingProblem p(n);
  p.labels = table.labels;
  for (int i = 0; i < n; ++i) p.h[static_cast<std::size_t>(i)] = lp::to_double(pinned.at(i));
  for (std::size_t k = 0; k < vars.free_pairs.size(); ++k) {
    auto [i, jj] = vars.free_pairs[k];
    double v = lp::to_double(pinned.at(n + static_cast<int>(k)));
    if (v != 0.0) p.set_coupling(i, jj, v);
  }
  for (const auto& [pair, v] : cfg.fixed_j) p.set_coupling(pair.first, pair.second, v);
  return p;
}

IsingProblem synthesize_grid(const TruthTable& table, const SynthesisConfig& cfg) {
  const int n = table.n;
  if (cfg.grid_step <= 0) throw std::invalid_argument("grid step must be positive");

  std::vector<std::pair<int, int>> free_pairs;
  for (int i = 0; i < n; ++i)
    for (int jj = i + 1; jj < n; ++jj)
      if (!cfg.fixed_j.count({i, jj})) free_pairs.push_back({i, jj});
  const int dims = n + static_cast<int>(free_pairs.size());

  std::vector<double> values;
  for (double v = -cfg.coefficient_bound; v <= cfg.coefficient_bound + 1e-12; v += cfg.grid_step)
    values.push_back(std::abs(v) < 1e-12 ? 0.0 : v);
  const std::int64_t k = static_cast<std::int64_t>(values.size());

  double space = 1;
  for (int d = 0; d < dims; ++d) space *= static_cast<double>(k);
  if (space > static_cast<double>(std::int64_t{1} << 24))
    throw CapacityError("grid search space too large; use LP mode");
  const std::int64_t total_assignments = static_cast<std::int64_t>(space);

  auto materialize = [&](std::int64_t index, IsingProblem& p) {
    for (int d = 0; d < dims; ++d) {
      double v = values[static_cast<std::size_t>(index % k)];
      index /= k;
      if (d < n)
        p.h[static_cast<std::size_t>(d)] = v;
      else if (v != 0.0)
        p.set_coupling(free_pairs[static_cast<std::size_t>(d - n)].first,
                       free_pairs[static_cast<std::size_t>(d - n)].second, v);
    }
    for (const auto& [pair, v] : cfg.fixed_j) p.set_coupling(pair.first, pair.second, v);
  };

  auto accepts = [&](std::int64_t index) {
    IsingProblem p(n);
    materialize(index, p);
    const std::int64_t states = std::int64_t{1} << n;
    double e0 = p.energy_bits(table.rows.front());
    for (std::int64_t sb = 0; sb < states; ++sb) {
      double e = p.energy_bits(static_cast<StateBits>(sb));
      if (table.contains(static_cast<StateBits>(sb))) {
        if (e != e0) return false;  // grid values are dyadic, sums are exact
      } else if (e < e0 + cfg.min_gap) {
        return false;
      }
    }
    return true;
  };

  // Scan in lexicographic order; parallel chunks each report their first hit
  // and the global minimum wins, so the result is thread-count independent.
  std::int64_t found = -1;
#pragma omp parallel
  {
    std::int64_t local = -1;
#pragma omp for schedule(static) nowait
    for (std::int64_t chunk = 0; chunk < k; ++chunk) {
      const std::int64_t begin = chunk * (total_assignments / k);
      const std::int64_t end = begin + total_assignments / k;
      if (local >= 0) continue;
      for (std::int64_t idx = begin; idx < end; ++idx) {
        if (accepts(idx)) {
          local = idx;
          break;
        }
      }
    }
#pragma omp critical
    if (local >= 0 && (found < 0 || local < found)) found = local;
  }

  if (found < 0) {
    InfeasibilityReport report;
    std::ostringstream reason;
    reason << "grid search exhausted " << total_assignments << " assignments (step "
           << cfg.grid_step << ", bound " << cfg.coefficient_bound << ")";
    report.reason = reason.str();
    throw InfeasibleEncodingError("no ancilla-free 2-local encoding found by grid search",
                                  std::move(report));
  }
  IsingProblem p(n);
  p.labels = table.labels;
  materialize(found, p);
  return p;
}

}  // namespace

IsingProblem synthesize(const TruthTable& table, const SynthesisConfig& cfg) {
  table.validate();
  if (cfg.coefficient_bound <= 0) throw std::invalid_argument("coefficient bound must be positive");
  if (cfg.min_gap <= 0) throw std::invalid_argument("minimum gap must be positive");
  for (const auto& [pair, v] : cfg.fixed_j) {
    (void)v;
    if (pair.first < 0 || pair.second >= table.n || pair.first >= pair.second)
      throw DimensionError("fixed coupling pair out of range or unnormalized");
  }
  if (cfg.mode == SynthesisConfig::Mode::grid) return synthesize_grid(table, cfg);
  return synthesize_lp(table, cfg);
}

const IsingProblem& multiplier_cell() {
  static const IsingProblem cell = [] {
    SynthesisConfig cfg;  // defaults: bound 8, min gap 1, LP mode
    return synthesize(multiplier_table(), cfg);
  }();
  return cell;
}

VerifyReport verify(const IsingProblem& p, const TruthTable& table, double group_tol,
                    int enum_cap) {
  if (p.n != table.n) throw DimensionError("problem and table qubit counts differ");
  Spectrum spec = enumerate_spectrum(p, group_tol, enum_cap);
  const auto& ground = spec.ground().states;

  VerifyReport rep;
  rep.ground_degeneracy = static_cast<int>(ground.size());
  rep.classical_gap = spec.groups.size() > 1 ? spec.classical_gap() : 0.0;

  std::set<StateBits> ground_states(ground.begin(), ground.end());
  for (StateBits r : table.rows)
    if (!ground_states.count(r)) rep.missing_rows.push_back(bits_to_string(r, p.n));
  for (StateBits g : ground)
    if (!table.contains(g)) rep.extra_states.push_back(bits_to_string(g, p.n));
  rep.pass = rep.missing_rows.empty() && rep.extra_states.empty();

  if (!rep.pass) {
    const double e0 = spec.ground().energy;
    double worst = -1;
    std::string worst_state;
    for (StateBits r : table.rows) {
      double excess = p.energy_bits(r) - e0;
      if (excess > worst) {
        worst = excess;
        worst_state = bits_to_string(r, p.n);
      }
    }
    if (!rep.extra_states.empty() && worst <= 0) {
      worst_state = rep.extra_states.front();
      worst = 0;
    }
    rep.worst_violation = {worst_state, worst};
  }
  return rep;
}

std::string VerifyReport::summary() const {
  std::ostringstream out;
  out << (pass ? "pass" : "fail") << ": ground degeneracy " << ground_degeneracy;
  if (classical_gap > 0) out << ", classical gap " << classical_gap;
  if (!missing_rows.empty()) {
    out << "; rows not in ground set:";
    for (const auto& r : missing_rows) out << ' ' << r;
  }
  if (!extra_states.empty()) {
    out << "; ground states outside table:";
    for (const auto& r : extra_states) out << ' ' << r;
  }
  if (worst_violation)
    out << "; worst violation " << worst_violation->first << " (+" << worst_violation->second
        << ")";
  return out.str();
}

namespace {

Gauge evaluate_gauge(const IsingProblem& a, const IsingProblem& b, std::uint32_t mask) {
  const int n = a.n;
  Gauge g;
  g.flip.assign(static_cast<std::size_t>(n), 1);
  for (int q = 1; q < n; ++q)
    if ((mask >> (q - 1)) & 1u) g.flip[static_cast<std::size_t>(q)] = -1;

  std::set<std::pair<int, int>> pairs;
  for (const auto& [key, v] : a.j) {
    (void)v;
    pairs.insert(key);
  }
  for (const auto& [key, v] : b.j) {
    (void)v;
    pairs.insert(key);
  }

  double dot = 0, norm_a = 0;
  for (const auto& [i, jj] : pairs) {
    double va = a.coupling(i, jj) * g.flip[static_cast<std::size_t>(i)] *
                g.flip[static_cast<std::size_t>(jj)];
    double vb = b.coupling(i, jj);
    dot += va * vb;
    norm_a += va * va;
  }
  g.scale = norm_a > 0 ? dot / norm_a : 1.0;

  double j_sq = 0;
  for (const auto& [i, jj] : pairs) {
    double va = a.coupling(i, jj) * g.flip[static_cast<std::size_t>(i)] *
                g.flip[static_cast<std::size_t>(jj)];
    double d = g.scale * va - b.coupling(i, jj);
    j_sq += d * d;
  }
  g.j_residual = pairs.empty() ? 0.0 : std::sqrt(j_sq / static_cast<double>(pairs.size()));

  double h_sq = 0;
  for (int i = 0; i < n; ++i) {
    double d = g.scale * g.flip[static_cast<std::size_t>(i)] * a.h[static_cast<std::size_t>(i)] -
               b.h[static_cast<std::size_t>(i)];
    h_sq += d * d;
  }
  g.h_residual = n > 0 ? std::sqrt(h_sq / n) : 0.0;
  return g;
}

}  // namespace

Gauge best_gauge(const IsingProblem& a, const IsingProblem& b) {
  if (a.n != b.n) throw DimensionError("gauge search needs equal qubit counts");
  if (a.n > 24) throw CapacityError("gauge search over 2^(n-1) flips limited to 24 qubits");
  Gauge best;
  bool have = false;
  const std::uint32_t masks = a.n > 0 ? (std::uint32_t{1} << (a.n - 1)) : 1;
  for (std::uint32_t mask = 0; mask < masks; ++mask) {
    Gauge g = evaluate_gauge(a, b, mask);
    if (!have || g.j_residual < best.j_residual) {
      best = g;
      have = true;
    }
  }
  return best;
}

std::optional<Gauge> gauge_match(const IsingProblem& a, const IsingProblem& b, double tol) {
  Gauge g = best_gauge(a, b);
  double j_mag = 1.0;
  for (const auto& [key, v] : b.j) {
    (void)key;
    j_mag = std::max(j_mag, std::abs(v));
  }
  for (const auto& [key, v] : a.j) {
    (void)key;
    j_mag = std::max(j_mag, std::abs(g.scale * v));
  }
  if (g.j_residual > tol * j_mag) return std::nullopt;
  double h_mag = 1.0;
  for (double v : b.h) h_mag = std::max(h_mag, std::abs(v));
  for (double v : a.h) h_mag = std::max(h_mag, std::abs(g.scale * v));
  g.h_matched = g.h_residual <= tol * h_mag;
  return g;
}

std::vector<std::string> unit_names() { return {"nor", "nand", "or", "and", "multiplier"}; }

IsingProblem unit_problem(const std::string& name) {
  auto kind = gate_from_name(name);
  if (!kind) throw std::invalid_argument("unknown unit '" + name + "'");
  return gate(*kind);
}

TruthTable unit_table(const std::string& name) {
  auto kind = gate_from_name(name);
  if (!kind) throw std::invalid_argument("unknown unit '" + name + "'");
  return truth_table(*kind);
}

}  // namespace qalogic
