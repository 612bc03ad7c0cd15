#include "qalogic/ising.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <sstream>

#if defined(__GNUC__) && defined(_OPENMP)
#include <parallel/algorithm>
#endif

namespace qalogic {

namespace {

// Flattened CSR-style view of the couplings. Evaluating a state walks qubit
// rows in order (h first, then couplings by ascending partner), which is the
// same summation order as IsingProblem::energy_bits, so both paths agree
// bit-for-bit.
struct FlatProblem {
  int n = 0;
  double offset = 0.0;
  std::vector<double> h;
  std::vector<int> row_start;  // size n+1
  std::vector<int> col;
  std::vector<double> val;
};

FlatProblem flatten(const IsingProblem& p) {
  FlatProblem f;
  f.n = p.n;
  f.offset = p.offset;
  f.h = p.h;
  f.row_start.assign(p.n + 1, 0);
  for (const auto& [key, v] : p.j) f.row_start[key.first + 1]++;
  for (int i = 0; i < p.n; ++i) f.row_start[i + 1] += f.row_start[i];
  f.col.reserve(p.j.size());
  f.val.reserve(p.j.size());
  for (const auto& [key, v] : p.j) {  // map order is row-major already
    f.col.push_back(key.second);
    f.val.push_back(v);
  }
  return f;
}

inline double spin_of(StateBits b, int q) { return (b >> q) & 1u ? 1.0 : -1.0; }

inline double energy_flat(const FlatProblem& f, StateBits b) {
  double e = f.offset;
  for (int i = 0; i < f.n; ++i) {
    double acc = f.h[i];
    for (int k = f.row_start[i]; k < f.row_start[i + 1]; ++k)
      acc += f.val[k] * spin_of(b, f.col[k]);
    e += spin_of(b, i) * acc;
  }
  return e;
}

void check_qubit(const IsingProblem& p, int q, const char* what) {
  if (q < 0 || q >= p.n) {
    std::ostringstream msg;
    msg << what << ": qubit index " << q << " out of range for n=" << p.n;
    throw DimensionError(msg.str());
  }
}

void check_bit(int b) {
  if (b != 0 && b != 1) throw std::invalid_argument("bit value must be 0 or 1");
}

}  // namespace

std::string bits_to_string(StateBits bits, int n) {
  std::string s(static_cast<std::size_t>(n), '0');
  for (int i = 0; i < n; ++i)
    if ((bits >> i) & 1u) s[static_cast<std::size_t>(i)] = '1';
  return s;
}

StateBits string_to_bits(const std::string& bitstring) {
  if (bitstring.size() > 32) throw CapacityError("bitstring longer than 32 qubits");
  StateBits b = 0;
  for (std::size_t i = 0; i < bitstring.size(); ++i) {
    char c = bitstring[i];
    if (c == '1')
      b |= StateBits{1} << i;
    else if (c != '0')
      throw std::invalid_argument("bitstring must contain only '0' and '1': " + bitstring);
  }
  return b;
}

SpinState SpinState::from_bits(StateBits bits, int n) {
  SpinState st;
  st.spins.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) st.spins[static_cast<std::size_t>(i)] = ((bits >> i) & 1u) ? 1 : -1;
  return st;
}

SpinState SpinState::from_string(const std::string& bitstring) {
  return from_bits(string_to_bits(bitstring), static_cast<int>(bitstring.size()));
}

StateBits SpinState::to_bits() const {
  if (spins.size() > 32) throw CapacityError("state longer than 32 qubits");
  StateBits b = 0;
  for (std::size_t i = 0; i < spins.size(); ++i)
    if (spins[i] > 0) b |= StateBits{1} << i;
  return b;
}

std::string SpinState::to_string() const {
  std::string s(spins.size(), '0');
  for (std::size_t i = 0; i < spins.size(); ++i)
    if (spins[i] > 0) s[i] = '1';
  return s;
}

void IsingProblem::set_coupling(int a, int b, double value) {
  check_qubit(*this, a, "set_coupling");
  check_qubit(*this, b, "set_coupling");
  if (a == b) throw std::invalid_argument("self-coupling {i,i} is not allowed");
  if (a > b) std::swap(a, b);
  j[{a, b}] = value;
}

void IsingProblem::add_coupling(int a, int b, double value) {
  check_qubit(*this, a, "add_coupling");
  check_qubit(*this, b, "add_coupling");
  if (a == b) throw std::invalid_argument("self-coupling {i,i} is not allowed");
  if (a > b) std::swap(a, b);
  j[{a, b}] += value;
}

double IsingProblem::coupling(int a, int b) const {
  if (a > b) std::swap(a, b);
  auto it = j.find({a, b});
  return it == j.end() ? 0.0 : it->second;
}

void IsingProblem::validate() const {
  if (n < 0) throw DimensionError("negative qubit count");
  if (static_cast<int>(h.size()) != n) throw DimensionError("h size does not match qubit count");
  if (!labels.empty() && static_cast<int>(labels.size()) != n)
    throw DimensionError("labels size does not match qubit count");
  for (const auto& [key, v] : j) {
    auto [a, b] = key;
    if (a < 0 || b >= n || a >= b) throw DimensionError("coupling pair out of range or unnormalized");
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite coupling");
    (void)v;
  }
  for (double x : h)
    if (!std::isfinite(x)) throw std::invalid_argument("non-finite field");
  if (!std::isfinite(offset)) throw std::invalid_argument("non-finite offset");
}

double IsingProblem::energy(const SpinState& state) const {
  if (state.size() != n) {
    std::ostringstream msg;
    msg << "state has " << state.size() << " spins, problem has " << n << " qubits";
    throw DimensionError(msg.str());
  }
  double e = offset;
  auto it = j.begin();
  for (int i = 0; i < n; ++i) {
    double acc = h[static_cast<std::size_t>(i)];
    while (it != j.end() && it->first.first == i) {
      acc += it->second * static_cast<double>(state.spins[static_cast<std::size_t>(it->first.second)]);
      ++it;
    }
    e += static_cast<double>(state.spins[static_cast<std::size_t>(i)]) * acc;
  }
  return e;
}

double IsingProblem::energy_bits(StateBits state) const {
  double e = offset;
  auto it = j.begin();
  for (int i = 0; i < n; ++i) {
    double acc = h[static_cast<std::size_t>(i)];
    while (it != j.end() && it->first.first == i) {
      acc += it->second * spin_of(state, it->first.second);
      ++it;
    }
    e += spin_of(state, i) * acc;
  }
  return e;
}

std::string IsingProblem::label_or_index(int qubit) const {
  if (!labels.empty()) return labels[static_cast<std::size_t>(qubit)];
  return std::to_string(qubit);
}

int IsingProblem::qubit_index(const std::string& name) const {
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == name) return static_cast<int>(i);
  try {
    std::size_t pos = 0;
    int idx = std::stoi(name, &pos);
    if (pos == name.size() && idx >= 0 && idx < n) return idx;
  } catch (const std::exception&) {
  }
  throw std::invalid_argument("unknown qubit '" + name + "'");
}

void to_json(nlohmann::json& out, const IsingProblem& p) {
  out = nlohmann::json::object();
  out["n"] = p.n;
  if (!p.labels.empty()) out["labels"] = p.labels;
  out["h"] = p.h;
  auto arr = nlohmann::json::array();
  for (const auto& [key, v] : p.j)
    arr.push_back({{"i", key.first}, {"j", key.second}, {"v", v}});
  out["j"] = arr;
  out["offset"] = p.offset;
}

void from_json(const nlohmann::json& in, IsingProblem& p) {
  p = IsingProblem{};
  p.n = in.at("n").get<int>();
  if (p.n < 0 || p.n > 31) throw DimensionError("qubit count out of range [0,31]");
  p.h = in.at("h").get<std::vector<double>>();
  if (in.contains("labels")) p.labels = in.at("labels").get<std::vector<std::string>>();
  p.offset = in.value("offset", 0.0);
  if (in.contains("j")) {
    for (const auto& entry : in.at("j")) {
      int a = entry.at("i").get<int>();
      int b = entry.at("j").get<int>();
      double v = entry.at("v").get<double>();
      if (a == b) throw std::invalid_argument("self-coupling {i,i} rejected on load");
      if (a > b) std::swap(a, b);
      if (a < 0 || b >= p.n) throw DimensionError("coupling index out of range");
      if (p.j.count({a, b})) {
        std::ostringstream msg;
        msg << "duplicate coupling pair {" << a << "," << b << "} rejected on load";
        throw std::invalid_argument(msg.str());
      }
      p.j[{a, b}] = v;
    }
  }
  p.validate();
}

IsingProblem gauge_flip(const IsingProblem& p, const std::vector<int>& flip) {
  if (static_cast<int>(flip.size()) != p.n) throw DimensionError("flip vector size mismatch");
  for (int f : flip)
    if (f != 1 && f != -1) throw std::invalid_argument("flip entries must be +1 or -1");
  IsingProblem q = p;
  for (int i = 0; i < p.n; ++i)
    q.h[static_cast<std::size_t>(i)] *= static_cast<double>(flip[static_cast<std::size_t>(i)]);
  for (auto& [key, v] : q.j)
    v *= static_cast<double>(flip[static_cast<std::size_t>(key.first)] *
                             flip[static_cast<std::size_t>(key.second)]);
  return q;
}

IsingProblem negate_h(const IsingProblem& p) {
  IsingProblem q = p;
  for (double& x : q.h) x = -x;
  return q;
}

double Spectrum::classical_gap() const {
  if (groups.size() < 2)
    throw DegenerateSpectrumError("degenerate spectrum: all states in one energy group");
  return groups[1].energy - groups[0].energy;
}

std::vector<double> state_energies(const IsingProblem& p, Exec exec) {
  p.validate();
  if (p.n > 31) throw CapacityError("state enumeration limited to 31 qubits");
  const FlatProblem f = flatten(p);
  const std::int64_t total = std::int64_t{1} << p.n;
  std::vector<double> e(static_cast<std::size_t>(total));
  if (exec == Exec::serial) {
    for (std::int64_t b = 0; b < total; ++b)
      e[static_cast<std::size_t>(b)] = energy_flat(f, static_cast<StateBits>(b));
  } else {
#pragma omp parallel for schedule(static)
    for (std::int64_t b = 0; b < total; ++b)
      e[static_cast<std::size_t>(b)] = energy_flat(f, static_cast<StateBits>(b));
  }
  return e;
}

Spectrum enumerate_spectrum(const IsingProblem& p, double group_tol, int enum_cap, Exec exec) {
  if (p.n > enum_cap) {
    std::ostringstream msg;
    msg << "problem has " << p.n << " qubits, above the enumeration cap " << enum_cap;
    throw CapacityError(msg.str());
  }
  if (group_tol < 0) throw std::invalid_argument("negative grouping tolerance");
  const std::vector<double> e = state_energies(p, exec);
  const std::int64_t total = std::int64_t{1} << p.n;

  std::vector<StateBits> order(static_cast<std::size_t>(total));
  std::iota(order.begin(), order.end(), StateBits{0});
  auto by_energy = [&e](StateBits a, StateBits b) {
    double ea = e[a], eb = e[b];
    return ea < eb || (ea == eb && a < b);
  };
#if defined(__GNUC__) && defined(_OPENMP)
  if (exec == Exec::parallel && total > (1 << 16))
    __gnu_parallel::sort(order.begin(), order.end(), by_energy);
  else
    std::sort(order.begin(), order.end(), by_energy);
#else
  std::sort(order.begin(), order.end(), by_energy);
#endif

  Spectrum spec;
  spec.n = p.n;
  spec.group_tol = group_tol;
  for (StateBits b : order) {
    if (spec.groups.empty() || e[b] - spec.groups.back().energy > group_tol) {
      spec.groups.push_back(SpectrumGroup{e[b], {}});
    }
    spec.groups.back().states.push_back(b);
  }
  return spec;
}

std::vector<StateBits> ground_set(const IsingProblem& p, double group_tol, int enum_cap, Exec exec) {
  return enumerate_spectrum(p, group_tol, enum_cap, exec).ground().states;
}

double classical_gap(const IsingProblem& p, double group_tol, int enum_cap, Exec exec) {
  return enumerate_spectrum(p, group_tol, enum_cap, exec).classical_gap();
}

IsingProblem fix_spins(const IsingProblem& p, const std::map<int, int>& assignment) {
  p.validate();
  for (const auto& [q, b] : assignment) {
    check_qubit(p, q, "fix_spins");
    check_bit(b);
  }
  std::vector<int> kept;
  std::vector<int> new_index(static_cast<std::size_t>(p.n), -1);
  for (int i = 0; i < p.n; ++i) {
    if (!assignment.count(i)) {
      new_index[static_cast<std::size_t>(i)] = static_cast<int>(kept.size());
      kept.push_back(i);
    }
  }
  auto fixed_spin = [&assignment](int q) {
    return assignment.at(q) == 1 ? 1.0 : -1.0;
  };

  IsingProblem r(static_cast<int>(kept.size()));
  if (!p.labels.empty()) {
    r.labels.reserve(kept.size());
    for (int q : kept) r.labels.push_back(p.labels[static_cast<std::size_t>(q)]);
  }
  r.offset = p.offset;
  for (const auto& [q, b] : assignment) {
    (void)b;
    r.offset += p.h[static_cast<std::size_t>(q)] * fixed_spin(q);
  }
  for (std::size_t i = 0; i < kept.size(); ++i)
    r.h[i] = p.h[static_cast<std::size_t>(kept[i])];
  for (const auto& [key, v] : p.j) {
    auto [a, b] = key;
    bool fa = assignment.count(a) > 0;
    bool fb = assignment.count(b) > 0;
    if (fa && fb) {
      r.offset += v * fixed_spin(a) * fixed_spin(b);
    } else if (fa) {
      r.h[static_cast<std::size_t>(new_index[static_cast<std::size_t>(b)])] += v * fixed_spin(a);
    } else if (fb) {
      r.h[static_cast<std::size_t>(new_index[static_cast<std::size_t>(a)])] += v * fixed_spin(b);
    } else {
      r.j[{new_index[static_cast<std::size_t>(a)], new_index[static_cast<std::size_t>(b)]}] = v;
    }
  }
  return r;
}

IsingProblem clamp(const IsingProblem& p, const std::map<int, int>& targets, double alpha) {
  if (alpha < 0) throw std::invalid_argument("negative clamp offset alpha");
  p.validate();
  IsingProblem q = p;
  for (const auto& [qubit, bit] : targets) {
    check_qubit(p, qubit, "clamp");
    check_bit(bit);
    q.h[static_cast<std::size_t>(qubit)] -= (2.0 * bit - 1.0) * alpha;
  }
  return q;
}

double clamp_threshold(const IsingProblem& p, int qubit) {
  check_qubit(p, qubit, "clamp_threshold");
  double t = std::abs(p.h[static_cast<std::size_t>(qubit)]);
  for (const auto& [key, v] : p.j)
    if (key.first == qubit || key.second == qubit) t += std::abs(v);
  return t;
}

}  // namespace qalogic
