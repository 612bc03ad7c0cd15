#include "qalogic/anneal.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <random>
#include <sstream>

#include <Eigen/Dense>

namespace qalogic {

Schedule Schedule::linear(double a0, double b0, double total_time, int steps) {
  Schedule s;
  s.a0 = a0;
  s.b0 = b0;
  s.a = [a0](double t) { return a0 * (1.0 - t); };
  s.b = [b0](double t) { return b0 * t; };
  s.total_time = total_time;
  s.steps = steps;
  return s;
}

int Schedule::effective_steps() const {
  int floor_steps = std::max(steps, 1);
  double scaled = std::ceil(100.0 * total_time);
  if (scaled > 10000000.0) throw CapacityError("anneal time requires more than 1e7 steps");
  return std::max(floor_steps, static_cast<int>(scaled));
}

void Schedule::validate() const {
  if (!a || !b) throw std::invalid_argument("schedule envelopes not set");
  if (total_time < 0) throw std::invalid_argument("negative anneal time");
  if (steps < 1) throw std::invalid_argument("schedule needs at least one step");
  double amax = 0, bmax = 0;
  for (int i = 0; i <= 100; ++i) {
    double s = i / 100.0;
    double av = a(s), bv = b(s);
    if (av < -1e-12 || bv < -1e-12)
      throw std::invalid_argument("non-normalizable schedule: negative envelope");
    amax = std::max(amax, av);
    bmax = std::max(bmax, bv);
  }
  if (std::abs(a(1.0)) > 1e-12 * std::max(1.0, amax))
    throw std::invalid_argument("non-normalizable schedule: A(1) must vanish at readout");
  if (b(0.0) > 0.1 * std::max(bmax, 1e-300))
    throw std::invalid_argument("non-normalizable schedule: B(0) must start at or near zero");
}

namespace {

using Complex = std::complex<double>;

// One split-operator step at midpoint envelopes: half diagonal phase, full
// per-qubit transverse rotation, half diagonal phase. Every element update
// is independent, so the OpenMP and serial paths are bit-identical.
struct Stepper {
  int n;
  std::int64_t dim;
  const std::vector<double>& energies;

  void half_diagonal(std::vector<Complex>& psi, double angle_per_energy, Exec exec) const {
    if (exec == Exec::serial) {
      for (std::int64_t b = 0; b < dim; ++b)
        psi[static_cast<std::size_t>(b)] *=
            std::polar(1.0, angle_per_energy * energies[static_cast<std::size_t>(b)]);
    } else {
#pragma omp parallel for schedule(static)
      for (std::int64_t b = 0; b < dim; ++b)
        psi[static_cast<std::size_t>(b)] *=
            std::polar(1.0, angle_per_energy * energies[static_cast<std::size_t>(b)]);
    }
  }

  void transverse(std::vector<Complex>& psi, double phi, Exec exec) const {
    const double c = std::cos(phi);
    const double s = std::sin(phi);
    const std::int64_t half = dim / 2;
    for (int q = 0; q < n; ++q) {
      const std::int64_t low_mask = (std::int64_t{1} << q) - 1;
      if (exec == Exec::serial) {
        for (std::int64_t m = 0; m < half; ++m) {
          const std::int64_t i0 = ((m & ~low_mask) << 1) | (m & low_mask);
          const std::int64_t i1 = i0 | (std::int64_t{1} << q);
          const Complex u = psi[static_cast<std::size_t>(i0)];
          const Complex v = psi[static_cast<std::size_t>(i1)];
          psi[static_cast<std::size_t>(i0)] = c * u + Complex(0, s) * v;
          psi[static_cast<std::size_t>(i1)] = Complex(0, s) * u + c * v;
        }
      } else {
#pragma omp parallel for schedule(static)
        for (std::int64_t m = 0; m < half; ++m) {
          const std::int64_t i0 = ((m & ~low_mask) << 1) | (m & low_mask);
          const std::int64_t i1 = i0 | (std::int64_t{1} << q);
          const Complex u = psi[static_cast<std::size_t>(i0)];
          const Complex v = psi[static_cast<std::size_t>(i1)];
          psi[static_cast<std::size_t>(i0)] = c * u + Complex(0, s) * v;
          psi[static_cast<std::size_t>(i1)] = Complex(0, s) * u + c * v;
        }
      }
    }
  }
};

}  // namespace

EvolveResult exact_evolve(const IsingProblem& p, const Schedule& schedule, Exec exec) {
  schedule.validate();
  if (p.n > max_evolve_qubits) {
    std::ostringstream msg;
    msg << "exact evolution limited to " << max_evolve_qubits << " qubits, problem has " << p.n;
    throw CapacityError(msg.str());
  }
  const std::int64_t dim = std::int64_t{1} << p.n;

  EvolveResult result;
  std::vector<Complex> psi(static_cast<std::size_t>(dim),
                           Complex(1.0 / std::sqrt(static_cast<double>(dim)), 0.0));
  if (schedule.total_time > 0) {
    const std::vector<double> energies = state_energies(p, exec);
    const int steps = schedule.effective_steps();
    const double dt = schedule.total_time / steps;
    const Stepper stepper{p.n, dim, energies};
    result.steps = steps;
    for (int k = 0; k < steps; ++k) {
      const double s_mid = (k + 0.5) / steps;
      const double a_mid = schedule.a(s_mid);
      const double b_mid = schedule.b(s_mid);
      // exp(-i dt/2 * B/2 * E) on the diagonal, exp(+i dt A/2 sigma_x) per qubit
      stepper.half_diagonal(psi, -dt * b_mid / 4.0, exec);
      stepper.transverse(psi, dt * a_mid / 2.0, exec);
      stepper.half_diagonal(psi, -dt * b_mid / 4.0, exec);

      double norm_sq = 0.0;  // serial reduction: thread-count independent
      for (const Complex& amp : psi) norm_sq += std::norm(amp);
      result.max_norm_error = std::max(result.max_norm_error, std::abs(std::sqrt(norm_sq) - 1.0));
    }
  }

  result.probabilities.resize(static_cast<std::size_t>(dim));
  for (std::int64_t b = 0; b < dim; ++b)
    result.probabilities[static_cast<std::size_t>(b)] = std::norm(psi[static_cast<std::size_t>(b)]);
  return result;
}

std::vector<double> dense_hamiltonian(const IsingProblem& p, double a_value, double b_value) {
  if (p.n > max_evolve_qubits) throw CapacityError("dense Hamiltonian limited to 12 qubits");
  const std::int64_t dim = std::int64_t{1} << p.n;
  const std::vector<double> energies = state_energies(p, Exec::serial);
  std::vector<double> m(static_cast<std::size_t>(dim * dim), 0.0);
  for (std::int64_t b = 0; b < dim; ++b) {
    m[static_cast<std::size_t>(b * dim + b)] = b_value / 2.0 * energies[static_cast<std::size_t>(b)];
    for (int q = 0; q < p.n; ++q) {
      const std::int64_t other = b ^ (std::int64_t{1} << q);
      m[static_cast<std::size_t>(b * dim + other)] += -a_value / 2.0;
    }
  }
  return m;
}

GapScan min_gap(const IsingProblem& p, const Schedule& schedule, int resolution,
                double cluster_tol, Exec exec) {
  schedule.validate();
  if (resolution < 2) throw std::invalid_argument("gap scan needs at least two grid points");
  if (p.n > max_evolve_qubits) {
    std::ostringstream msg;
    msg << "gap scan limited to " << max_evolve_qubits << " qubits, problem has " << p.n;
    throw CapacityError(msg.str());
  }
  if (cluster_tol < 0) cluster_tol = 1e-6 * std::max(schedule.b(1.0), 1e-6);

  const std::int64_t dim = std::int64_t{1} << p.n;
  GapScan scan;
  scan.s.resize(static_cast<std::size_t>(resolution));
  scan.gap.resize(static_cast<std::size_t>(resolution));

  auto gap_at = [&](double s) {
    const std::vector<double> hm = dense_hamiltonian(p, schedule.a(s), schedule.b(s));
    Eigen::Map<const Eigen::MatrixXd> mat(hm.data(), dim, dim);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(mat, Eigen::EigenvaluesOnly);
    const auto& ev = solver.eigenvalues();
    std::int64_t cluster_end = 1;
    while (cluster_end < dim && ev[cluster_end] - ev[0] <= cluster_tol) ++cluster_end;
    if (cluster_end >= dim) return 0.0;  // entire spectrum within tolerance
    return ev[cluster_end] - ev[cluster_end - 1];
  };

  if (exec == Exec::serial || p.n > 10) {
    for (int i = 0; i < resolution; ++i) {
      scan.s[static_cast<std::size_t>(i)] = static_cast<double>(i) / (resolution - 1);
      scan.gap[static_cast<std::size_t>(i)] = gap_at(scan.s[static_cast<std::size_t>(i)]);
    }
  } else {
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < resolution; ++i) {
      scan.s[static_cast<std::size_t>(i)] = static_cast<double>(i) / (resolution - 1);
      scan.gap[static_cast<std::size_t>(i)] = gap_at(scan.s[static_cast<std::size_t>(i)]);
    }
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i < scan.gap.size(); ++i)
    if (scan.gap[i] < scan.gap[best]) best = i;
  scan.s_at_min = scan.s[best];
  scan.min_gap = scan.gap[best];
  return scan;
}

void ThermalConfig::validate() const {
  if (temperature < 0) throw std::invalid_argument("negative temperature");
  if (sweeps < 1) throw std::invalid_argument("sweep count must be at least 1");
  if (cooling == Cooling::geometric && (start_temperature <= 0 || temperature <= 0))
    throw std::invalid_argument("geometric cooling needs positive start and final temperatures");
}

double ThermalConfig::temperature_at(int sweep) const {
  if (cooling == Cooling::fixed) return temperature;
  if (sweeps == 1) return temperature;
  const double f = static_cast<double>(sweep) / (sweeps - 1);
  return start_temperature * std::pow(temperature / start_temperature, f);
}

namespace {

inline double uniform01(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

struct DenseCouplings {
  int n = 0;
  std::vector<double> h;
  std::vector<double> jmat;  // symmetric, row-major

  explicit DenseCouplings(const IsingProblem& p)
      : n(p.n), h(p.h), jmat(static_cast<std::size_t>(p.n) * static_cast<std::size_t>(p.n), 0.0) {
    for (const auto& [key, v] : p.j) {
      jmat[static_cast<std::size_t>(key.first) * n + key.second] = v;
      jmat[static_cast<std::size_t>(key.second) * n + key.first] = v;
    }
  }

  double local_field(const std::vector<std::int8_t>& s, int q) const {
    double f = h[static_cast<std::size_t>(q)];
    const double* row = jmat.data() + static_cast<std::size_t>(q) * n;
    for (int k = 0; k < n; ++k) f += row[k] * s[static_cast<std::size_t>(k)];
    return f;
  }
};

SpinState metropolis_chain(const DenseCouplings& dense, const ThermalConfig& cfg,
                           std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  const int n = dense.n;
  std::vector<std::int8_t> s(static_cast<std::size_t>(n));
  for (auto& v : s) v = (gen() & 1u) ? 1 : -1;

  // Local fields kept incrementally: a proposal costs O(1), an accepted flip
  // O(n). Flipping spin q changes dE = -2 s_q field_q.
  std::vector<double> field(static_cast<std::size_t>(n));
  for (int q = 0; q < n; ++q) field[static_cast<std::size_t>(q)] = dense.local_field(s, q);

  for (int sweep = 0; sweep < cfg.sweeps; ++sweep) {
    const double t = cfg.temperature_at(sweep);
    for (int q = 0; q < n; ++q) {
      const double de = -2.0 * s[static_cast<std::size_t>(q)] * field[static_cast<std::size_t>(q)];
      bool accept = de <= 0.0;
      if (!accept && t > 0.0) accept = uniform01(gen) < std::exp(-de / t);
      if (!accept) continue;
      const double twice_old = 2.0 * s[static_cast<std::size_t>(q)];
      s[static_cast<std::size_t>(q)] = static_cast<std::int8_t>(-s[static_cast<std::size_t>(q)]);
      const double* row = dense.jmat.data() + static_cast<std::size_t>(q) * n;
      for (int k = 0; k < n; ++k) field[static_cast<std::size_t>(k)] -= twice_old * row[k];
    }
  }
  return SpinState{std::move(s)};
}

}  // namespace

SpinState thermal_anneal(const IsingProblem& p, const ThermalConfig& cfg) {
  p.validate();
  cfg.validate();
  return metropolis_chain(DenseCouplings(p), cfg, cfg.seed);
}

void Histogram::add(const std::string& bitstring, std::uint64_t k) {
  counts[bitstring] += k;
  total += k;
}

std::string Histogram::csv() const {
  std::string out = "bitstring,count\n";
  for (const auto& [key, c] : counts) {
    out += key;
    out += ',';
    out += std::to_string(c);
    out += '\n';
  }
  return out;
}

namespace {

Histogram histogram_from_distribution(const IsingProblem& p, const std::vector<double>& prob,
                                      std::uint64_t iterations) {
  const std::int64_t dim = static_cast<std::int64_t>(prob.size());
  std::vector<std::int64_t> counts(prob.size(), 0);
  std::int64_t assigned = 0;
  std::size_t mode = 0;
  for (std::size_t b = 0; b < prob.size(); ++b) {
    counts[b] = std::llround(prob[b] * static_cast<double>(iterations));
    assigned += counts[b];
    if (prob[b] > prob[mode]) mode = b;
  }
  const std::int64_t residual = static_cast<std::int64_t>(iterations) - assigned;
  counts[mode] += residual;
  if (counts[mode] < 0) {
    // Rounding overshoot larger than the mode count: fall back to largest
    // remainders, which cannot go negative.
    std::fill(counts.begin(), counts.end(), 0);
    std::vector<std::pair<double, std::size_t>> rema;
    std::int64_t used = 0;
    for (std::size_t b = 0; b < prob.size(); ++b) {
      double exact = prob[b] * static_cast<double>(iterations);
      counts[b] = static_cast<std::int64_t>(std::floor(exact));
      used += counts[b];
      rema.push_back({exact - std::floor(exact), b});
    }
    std::sort(rema.begin(), rema.end(), [](const auto& x, const auto& y) {
      return x.first > y.first || (x.first == y.first && x.second < y.second);
    });
    for (std::int64_t k = 0; k < static_cast<std::int64_t>(iterations) - used; ++k)
      counts[rema[static_cast<std::size_t>(k) % rema.size()].second] += 1;
  }

  Histogram hist;
  hist.n = p.n;
  for (std::int64_t b = 0; b < dim; ++b)
    if (counts[static_cast<std::size_t>(b)] > 0)
      hist.add(bits_to_string(static_cast<StateBits>(b), p.n),
               static_cast<std::uint64_t>(counts[static_cast<std::size_t>(b)]));
  return hist;
}

}  // namespace

Histogram run_histogram(const IsingProblem& p, const Engine& engine, std::uint64_t iterations,
                        Exec exec) {
  if (iterations < 1) throw std::invalid_argument("histogram needs at least one iteration");

  if (const auto* ex = std::get_if<ExactEngine>(&engine)) {
    EvolveResult r = exact_evolve(p, ex->schedule, exec);
    Histogram hist = histogram_from_distribution(p, r.probabilities, iterations);
    hist.metadata = {{"engine", "exact"},
                     {"ta", ex->schedule.total_time},
                     {"steps", r.steps},
                     {"iterations", iterations}};
    return hist;
  }

  const auto& th = std::get<ThermalEngine>(engine);
  th.config.validate();
  p.validate();
  const DenseCouplings dense(p);
  const std::int64_t iters = static_cast<std::int64_t>(iterations);
  std::vector<StateBits> outcomes;
  std::vector<std::string> outcomes_wide;
  const bool narrow = p.n <= 32;
  if (narrow)
    outcomes.resize(static_cast<std::size_t>(iters));
  else
    outcomes_wide.resize(static_cast<std::size_t>(iters));

  // Derived seed stream: iteration k runs an independent chain at seed+k, so
  // the histogram is identical however the loop is scheduled.
  if (exec == Exec::serial) {
    for (std::int64_t k = 0; k < iters; ++k) {
      SpinState s = metropolis_chain(dense, th.config, th.config.seed + static_cast<std::uint64_t>(k));
      if (narrow)
        outcomes[static_cast<std::size_t>(k)] = s.to_bits();
      else
        outcomes_wide[static_cast<std::size_t>(k)] = s.to_string();
    }
  } else {
#pragma omp parallel for schedule(static)
    for (std::int64_t k = 0; k < iters; ++k) {
      SpinState s = metropolis_chain(dense, th.config, th.config.seed + static_cast<std::uint64_t>(k));
      if (narrow)
        outcomes[static_cast<std::size_t>(k)] = s.to_bits();
      else
        outcomes_wide[static_cast<std::size_t>(k)] = s.to_string();
    }
  }

  Histogram hist;
  hist.n = p.n;
  for (std::int64_t k = 0; k < iters; ++k) {
    if (narrow)
      hist.add(bits_to_string(outcomes[static_cast<std::size_t>(k)], p.n));
    else
      hist.add(outcomes_wide[static_cast<std::size_t>(k)]);
  }
  hist.metadata = {{"engine", "thermal"},
                   {"temperature", th.config.temperature},
                   {"sweeps", th.config.sweeps},
                   {"cooling", th.config.cooling == ThermalConfig::Cooling::fixed ? "fixed" : "geometric"},
                   {"seed", th.config.seed},
                   {"iterations", iterations}};
  if (th.config.cooling == ThermalConfig::Cooling::geometric)
    hist.metadata["start_temperature"] = th.config.start_temperature;
  return hist;
}

double success_probability(const Histogram& hist, const std::set<std::string>& targets) {
  if (hist.total == 0) return 0.0;
  std::uint64_t mass = 0;
  for (const auto& t : targets) {
    auto it = hist.counts.find(t);
    if (it != hist.counts.end()) mass += it->second;
  }
  return static_cast<double>(mass) / static_cast<double>(hist.total);
}

const char* sweep_variable_name(SweepVariable v) {
  switch (v) {
    case SweepVariable::alpha: return "alpha";
    case SweepVariable::anneal_time: return "ta";
    case SweepVariable::temperature: return "temperature";
  }
  return "?";
}

std::vector<SweepRow> sweep(const IsingProblem& base, SweepVariable variable,
                            const std::vector<double>& grid, const Engine& engine,
                            const std::set<std::string>& targets, std::uint64_t iterations,
                            const std::map<int, int>& clamp_targets, Exec exec) {
  if (grid.empty()) throw std::invalid_argument("sweep grid is empty");
  if (!std::is_sorted(grid.begin(), grid.end()))
    throw std::invalid_argument("sweep grid must be ascending");
  if (variable == SweepVariable::alpha && clamp_targets.empty())
    throw std::invalid_argument("alpha sweep needs clamp targets");

  std::vector<SweepRow> rows;
  rows.reserve(grid.size());
  for (double value : grid) {
    IsingProblem problem = base;
    Engine point = engine;
    switch (variable) {
      case SweepVariable::alpha:
        problem = clamp(base, clamp_targets, value);
        break;
      case SweepVariable::anneal_time:
        if (auto* ex = std::get_if<ExactEngine>(&point))
          ex->schedule.total_time = value;
        else
          throw std::invalid_argument("anneal-time sweep needs the exact engine");
        break;
      case SweepVariable::temperature:
        if (auto* th = std::get_if<ThermalEngine>(&point)) {
          th->config.temperature = value;
          th->config.cooling = ThermalConfig::Cooling::fixed;
        } else {
          throw std::invalid_argument("temperature sweep needs the thermal engine");
        }
        break;
    }
    Histogram hist = run_histogram(problem, point, iterations, exec);
    rows.push_back(SweepRow{value, success_probability(hist, targets), iterations});
  }
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = "value,success_probability,iterations\n";
  char buf[64];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%.17g", r.value);
    out += buf;
    out += ',';
    std::snprintf(buf, sizeof buf, "%.17g", r.success);
    out += buf;
    out += ',';
    out += std::to_string(r.iterations);
    out += '\n';
  }
  return out;
}

}  // namespace qalogic
