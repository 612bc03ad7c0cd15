#include "qalogic/composer.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qalogic/logic.hpp"

namespace qalogic {

namespace {

int bit_of(const std::string& state, int spin) {
  return state[static_cast<std::size_t>(spin)] == '1' ? 1 : 0;
}

}  // namespace

int ComposedProblem::decode_x(const std::string& state) const {
  int v = 0;
  for (std::size_t i = 0; i < x_spins.size(); ++i) v |= bit_of(state, x_spins[i]) << i;
  return v;
}

int ComposedProblem::decode_y(const std::string& state) const {
  int v = 0;
  for (std::size_t i = 0; i < y_spins.size(); ++i) v |= bit_of(state, y_spins[i]) << i;
  return v;
}

std::uint64_t ComposedProblem::decode_product(const std::string& state) const {
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < product_spin.size(); ++i)
    v |= static_cast<std::uint64_t>(bit_of(state, product_spin[i])) << i;
  return v;
}

std::map<int, int> ComposedProblem::operand_clamp_bits(int x, int y) const {
  if (x < 0 || x >= (1 << x_bits) || y < 0 || y >= (1 << y_bits))
    throw std::invalid_argument("operand out of range for the array widths");
  std::map<int, int> bits;
  for (std::size_t i = 0; i < x_spins.size(); ++i) bits[x_spins[i]] = (x >> i) & 1;
  for (std::size_t i = 0; i < y_spins.size(); ++i) bits[y_spins[i]] = (y >> i) & 1;
  return bits;
}

std::map<int, int> ComposedProblem::product_clamp_bits(std::uint64_t n) const {
  if (n >= (std::uint64_t{1} << product_spin.size()))
    throw std::invalid_argument("product does not fit the array's output width");
  std::map<int, int> bits;
  for (std::size_t i = 0; i < product_spin.size(); ++i)
    bits[product_spin[i]] = static_cast<int>((n >> i) & 1u);
  return bits;
}

double ComposedProblem::max_clamp_threshold(const std::map<int, int>& targets) const {
  double t = 0.0;
  for (const auto& [q, b] : targets) {
    (void)b;
    t = std::max(t, clamp_threshold(problem, q));
  }
  return t;
}

ComposedProblem build_array(int x_bits, int y_bits) {
  if (x_bits < 1 || y_bits < 1) throw std::invalid_argument("array widths must be at least 1");
  const int m = x_bits, n = y_bits;

  ComposedProblem arr;
  arr.x_bits = m;
  arr.y_bits = n;
  const int total = m + n + 2 * m * n;
  arr.problem = IsingProblem(total);
  arr.problem.labels.resize(static_cast<std::size_t>(total));
  arr.roles.assign(static_cast<std::size_t>(total), SpinRole::carry);

  auto carry_spin = [&](int i, int j) { return m + n + 2 * (j * m + i); };
  auto sum_spin = [&](int i, int j) { return m + n + 2 * (j * m + i) + 1; };

  for (int i = 0; i < m; ++i) {
    arr.x_spins.push_back(i);
    arr.problem.labels[static_cast<std::size_t>(i)] = "x" + std::to_string(i);
    arr.roles[static_cast<std::size_t>(i)] = SpinRole::x_bit;
  }
  for (int j = 0; j < n; ++j) {
    arr.y_spins.push_back(m + j);
    arr.problem.labels[static_cast<std::size_t>(m + j)] = "y" + std::to_string(j);
    arr.roles[static_cast<std::size_t>(m + j)] = SpinRole::y_bit;
  }
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < m; ++i) {
      arr.problem.labels[static_cast<std::size_t>(carry_spin(i, j))] =
          "c" + std::to_string(i) + "_" + std::to_string(j);
      arr.problem.labels[static_cast<std::size_t>(sum_spin(i, j))] =
          "s" + std::to_string(i) + "_" + std::to_string(j);
      arr.roles[static_cast<std::size_t>(carry_spin(i, j))] = SpinRole::carry;
      arr.roles[static_cast<std::size_t>(sum_spin(i, j))] = SpinRole::sum;
    }
  }

  const IsingProblem& cell = multiplier_cell();
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < m; ++i) {
      CellRef ref;
      ref.col = i;
      ref.row = j;
      ref.x = i;
      ref.y = m + j;
      ref.c = carry_spin(i, j);
      ref.s = sum_spin(i, j);
      if (j > 0) ref.z = (i == m - 1) ? carry_spin(m - 1, j - 1) : sum_spin(i + 1, j - 1);
      if (i > 0) ref.d = carry_spin(i - 1, j);

      // Eliminate boundary inputs from the cell exactly, then splice the
      // reduced cell onto the shared spins. Cell qubit order is
      // (X, Y, Z, D, C, S).
      std::map<int, int> boundary;
      if (ref.z < 0) boundary[2] = 0;
      if (ref.d < 0) boundary[3] = 0;
      IsingProblem reduced = boundary.empty() ? cell : fix_spins(cell, boundary);

      std::vector<int> mapping;  // reduced cell qubit -> global spin
      const int sources[6] = {ref.x, ref.y, ref.z, ref.d, ref.c, ref.s};
      for (int qc = 0; qc < 6; ++qc) {
        if (boundary.count(qc)) continue;
        mapping.push_back(sources[qc]);
      }
      arr.problem.offset += reduced.offset;
      for (int qc = 0; qc < reduced.n; ++qc)
        arr.problem.h[static_cast<std::size_t>(mapping[static_cast<std::size_t>(qc)])] +=
            reduced.h[static_cast<std::size_t>(qc)];
      for (const auto& [key, v] : reduced.j)
        arr.problem.add_coupling(mapping[static_cast<std::size_t>(key.first)],
                                 mapping[static_cast<std::size_t>(key.second)], v);
      arr.cells.push_back(ref);
    }
  }

  // Product bits are the unconsumed outputs: the first column's sums, the
  // last row's sums, and the last row's top carry.
  for (int j = 0; j + 1 < n; ++j) arr.product_spin.push_back(sum_spin(0, j));
  for (int i = 0; i < m; ++i) arr.product_spin.push_back(sum_spin(i, n - 1));
  arr.product_spin.push_back(carry_spin(m - 1, n - 1));
  return arr;
}

namespace {

Histogram run_composer_histogram(const IsingProblem& clamped, const ComposerEngine& engine,
                                 std::uint64_t iterations, Exec exec) {
  if (std::holds_alternative<ExhaustiveEngine>(engine)) {
    Spectrum spec = enumerate_spectrum(clamped, default_group_tol, default_enum_cap, exec);
    Histogram hist;
    hist.n = clamped.n;
    for (StateBits b : spec.ground().states) hist.add(bits_to_string(b, clamped.n));
    hist.metadata = {{"engine", "exhaustive"}, {"ground_energy", spec.ground().energy}};
    return hist;
  }
  if (const auto* ex = std::get_if<ExactEngine>(&engine))
    return run_histogram(clamped, Engine{*ex}, iterations, exec);
  return run_histogram(clamped, Engine{std::get<ThermalEngine>(engine)}, iterations, exec);
}

}  // namespace

ForwardResult multiply_forward(const ComposedProblem& arr, int x, int y, double alpha,
                               const ComposerEngine& engine, std::uint64_t iterations, Exec exec) {
  const auto bits = arr.operand_clamp_bits(x, y);
  const IsingProblem clamped = clamp(arr.problem, bits, alpha);

  ForwardResult result;
  result.histogram = run_composer_histogram(clamped, engine, iterations, exec);

  std::map<std::uint64_t, std::uint64_t> product_mass;
  for (const auto& [state, count] : result.histogram.counts)
    product_mass[arr.decode_product(state)] += count;

  std::uint64_t best = 0;
  for (const auto& [prod, mass] : product_mass)
    if (mass > best) best = mass;
  for (const auto& [prod, mass] : product_mass)
    if (mass == best) result.tied_products.push_back(prod);
  result.product = result.tied_products.front();
  result.product_mass =
      static_cast<double>(best) / static_cast<double>(result.histogram.total);
  if (result.tied_products.size() == 1) result.tied_products.clear();
  return result;
}

FactorResult factor(const FactorQuery& query, Exec exec) {
  ComposedProblem arr = build_array(query.x_bits, query.y_bits);
  const auto bits = arr.product_clamp_bits(query.n);
  const IsingProblem clamped = clamp(arr.problem, bits, query.alpha);

  FactorResult result;
  result.histogram = run_composer_histogram(clamped, query.engine, query.iterations, exec);

  std::uint64_t consistent = 0;
  for (const auto& [state, count] : result.histogram.counts) {
    const int x = arr.decode_x(state);
    const int y = arr.decode_y(state);
    if (static_cast<std::uint64_t>(x) * static_cast<std::uint64_t>(y) == query.n) {
      result.pair_counts[{x, y}] += count;
      consistent += count;
    }
  }
  for (const auto& [pair, count] : result.pair_counts) {
    (void)count;
    result.pairs.push_back(pair);
  }
  result.success =
      static_cast<double>(consistent) / static_cast<double>(result.histogram.total);
  return result;
}

std::vector<SweepRow> alpha_sweep_factor(const FactorQuery& query, const std::vector<double>& grid,
                                         Exec exec) {
  if (grid.empty()) throw std::invalid_argument("alpha grid is empty");
  if (!std::is_sorted(grid.begin(), grid.end()))
    throw std::invalid_argument("alpha grid must be ascending");
  std::vector<SweepRow> rows;
  rows.reserve(grid.size());
  for (double alpha : grid) {
    FactorQuery q = query;
    q.alpha = alpha;
    FactorResult r = factor(q, exec);
    rows.push_back(SweepRow{alpha, r.success, r.histogram.total});
  }
  return rows;
}

}  // namespace qalogic
