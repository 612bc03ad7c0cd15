#include <map>
#include <random>
#include <set>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"

#include "qalogic/ising.hpp"

using namespace qalogic;

namespace {

IsingProblem nor_problem() {
  IsingProblem p(3);
  p.h = {0.5, 0.5, 1.0};
  p.set_coupling(0, 1, 0.5);
  p.set_coupling(0, 2, 1.0);
  p.set_coupling(1, 2, 1.0);
  return p;
}

}  // namespace

TEST_CASE("bitstring and spin conversions") {
  CHECK(bits_to_string(4, 3) == "001");
  CHECK(string_to_bits("001") == 4);
  CHECK(string_to_bits("110") == 3);
  SpinState s = SpinState::from_string("01");
  CHECK(s.spins == std::vector<std::int8_t>{-1, 1});
  CHECK(s.to_string() == "01");
  CHECK(SpinState::from_bits(5, 4).to_bits() == 5);
  CHECK_THROWS_AS(string_to_bits("0a1"), std::invalid_argument);
}

TEST_CASE("energy evaluates the closed form") {
  IsingProblem p = nor_problem();
  CHECK(p.energy(SpinState::from_string("001")) == -1.5);
  CHECK(p.energy(SpinState::from_string("111")) == 4.5);
  CHECK(p.energy_bits(string_to_bits("001")) == -1.5);

  IsingProblem zero(4);
  CHECK(zero.energy(SpinState::from_string("0110")) == 0.0);

  CHECK_THROWS_AS(p.energy(SpinState::from_string("01")), DimensionError);
}

TEST_CASE("spectrum enumeration groups and orders") {
  IsingProblem p = nor_problem();
  Spectrum spec = enumerate_spectrum(p);
  CHECK(spec.groups.size() == 3);
  CHECK(spec.ground().energy == -1.5);
  CHECK(spec.groups[1].energy == 0.5);
  CHECK(spec.groups[2].energy == 4.5);
  CHECK(spec.classical_gap() == 2.0);

  std::set<std::string> ground = testutil::ground_strings(p);
  CHECK(ground == std::set<std::string>{"001", "010", "100", "110"});

  std::size_t covered = 0;
  for (const auto& g : spec.groups) covered += g.states.size();
  CHECK(covered == 8);
  for (std::size_t i = 1; i < spec.groups.size(); ++i)
    CHECK(spec.groups[i].energy - spec.groups[i - 1].energy > spec.group_tol);
}

TEST_CASE("single qubit and degenerate spectra") {
  IsingProblem p(1);
  p.h = {1.0};
  Spectrum spec = enumerate_spectrum(p);
  CHECK(testutil::ground_strings(p) == std::set<std::string>{"0"});
  CHECK(spec.classical_gap() == 2.0);

  IsingProblem flat(3);
  Spectrum one = enumerate_spectrum(flat);
  CHECK(one.groups.size() == 1);
  CHECK_THROWS_AS(one.classical_gap(), DegenerateSpectrumError);
}

TEST_CASE("enumeration cap raises a capacity error") {
  IsingProblem p(5);
  CHECK_THROWS_AS(enumerate_spectrum(p, default_group_tol, 4), CapacityError);
}

TEST_CASE("fix_spins folds couplings and constants") {
  IsingProblem p = nor_problem();
  IsingProblem r = fix_spins(p, {{2, 1}});
  CHECK(r.n == 2);
  CHECK(r.h == std::vector<double>{1.5, 1.5});
  CHECK(r.coupling(0, 1) == 0.5);
  CHECK(r.j.size() == 1);
  CHECK(r.offset == 1.0);
  CHECK(testutil::ground_strings(r) == std::set<std::string>{"00"});

  CHECK(fix_spins(p, {}).h == p.h);
  CHECK(fix_spins(p, {}).j == p.j);

  IsingProblem all = fix_spins(p, {{0, 0}, {1, 0}, {2, 1}});
  CHECK(all.n == 0);
  CHECK(all.offset == p.energy(SpinState::from_string("001")));

  CHECK_THROWS_AS(fix_spins(p, {{7, 0}}), DimensionError);
  CHECK_THROWS_AS(fix_spins(p, {{0, 2}}), std::invalid_argument);
}

TEST_CASE("fix_spins energy identity is exact on dyadic problems") {
  std::mt19937_64 gen(41);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 2 + static_cast<int>(gen() % 9);  // up to 10 qubits
    IsingProblem p = testutil::random_dyadic_problem(gen, n);
    std::map<int, int> assignment;
    for (int q = 0; q < n; ++q)
      if (gen() % 3 == 0) assignment[q] = static_cast<int>(gen() % 2);
    IsingProblem r = fix_spins(p, assignment);

    std::vector<int> kept;
    for (int q = 0; q < n; ++q)
      if (!assignment.count(q)) kept.push_back(q);
    const std::int64_t completions = std::int64_t{1} << r.n;
    for (std::int64_t c = 0; c < completions; ++c) {
      StateBits merged = 0;
      for (const auto& [q, b] : assignment)
        if (b) merged |= StateBits{1} << q;
      for (std::size_t k = 0; k < kept.size(); ++k)
        if ((c >> k) & 1) merged |= StateBits{1} << kept[k];
      CHECK(r.energy_bits(static_cast<StateBits>(c)) == p.energy_bits(merged));
    }
  }
}

TEST_CASE("clamp shifts fields toward the requested bits") {
  IsingProblem p = nor_problem();

  IsingProblem same = clamp(p, {{0, 1}, {2, 0}}, 0.0);
  CHECK(same.h == p.h);
  CHECK(same.j == p.j);
  CHECK(same.offset == p.offset);

  IsingProblem pinned = clamp(p, {{0, 0}, {1, 0}}, 3.5);
  CHECK(pinned.h == std::vector<double>{4.0, 4.0, 1.0});
  CHECK(pinned.j == p.j);
  CHECK(testutil::ground_strings(pinned) == std::set<std::string>{"001"});

  CHECK_THROWS_AS(clamp(p, {{0, 1}}, -1.0), std::invalid_argument);
}

TEST_CASE("clamp_threshold sums field and coupling magnitudes") {
  IsingProblem p = nor_problem();
  CHECK(clamp_threshold(p, 2) == 3.0);
  CHECK(clamp_threshold(p, 0) == 2.0);

  IsingProblem lone(1);
  CHECK(clamp_threshold(lone, 0) == 0.0);
  CHECK_THROWS_AS(clamp_threshold(p, 5), DimensionError);
}

TEST_CASE("alpha above the threshold pins the qubit in every ground state") {
  std::mt19937_64 gen(1234);
  for (int trial = 0; trial < 25; ++trial) {
    int n = 2 + static_cast<int>(gen() % 7);  // up to 8 qubits
    IsingProblem p = testutil::random_dyadic_problem(gen, n);
    int qubit = static_cast<int>(gen() % static_cast<std::uint64_t>(n));
    int bit = static_cast<int>(gen() % 2);
    double alpha = clamp_threshold(p, qubit) + 0.25;
    IsingProblem c = clamp(p, {{qubit, bit}}, alpha);
    for (StateBits b : ground_set(c)) CHECK(((b >> qubit) & 1u) == static_cast<StateBits>(bit));
  }
}

TEST_CASE("global spin flip with negated fields preserves energies exactly") {
  std::mt19937_64 gen(7);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 1 + static_cast<int>(gen() % 8);
    IsingProblem p = testutil::random_dyadic_problem(gen, n);
    IsingProblem q = negate_h(p);
    const StateBits mask = static_cast<StateBits>((std::uint64_t{1} << n) - 1);
    for (int check = 0; check < 16; ++check) {
      StateBits s = static_cast<StateBits>(gen()) & mask;
      CHECK(q.energy_bits(s ^ mask) == p.energy_bits(s));
    }
  }
}

TEST_CASE("per-qubit gauge flips preserve the spectrum as a multiset") {
  std::mt19937_64 gen(99);
  for (int trial = 0; trial < 12; ++trial) {
    int n = 2 + static_cast<int>(gen() % 7);
    IsingProblem p = testutil::random_dyadic_problem(gen, n);
    std::vector<int> flip;
    for (int q = 0; q < n; ++q) flip.push_back(gen() % 2 ? -1 : 1);
    IsingProblem g = gauge_flip(p, flip);

    std::vector<double> ep = state_energies(p);
    std::vector<double> eg = state_energies(g);
    std::sort(ep.begin(), ep.end());
    std::sort(eg.begin(), eg.end());
    CHECK(ep == eg);
  }
}

TEST_CASE("serial and parallel enumeration agree bit-for-bit") {
  std::mt19937_64 gen(5);
  IsingProblem p = testutil::random_dyadic_problem(gen, 11);
  CHECK(state_energies(p, Exec::serial) == state_energies(p, Exec::parallel));
  Spectrum a = enumerate_spectrum(p, default_group_tol, default_enum_cap, Exec::serial);
  Spectrum b = enumerate_spectrum(p, default_group_tol, default_enum_cap, Exec::parallel);
  REQUIRE(a.groups.size() == b.groups.size());
  for (std::size_t g = 0; g < a.groups.size(); ++g) {
    CHECK(a.groups[g].energy == b.groups[g].energy);
    CHECK(a.groups[g].states == b.groups[g].states);
  }
}

TEST_CASE("problem JSON round trip and validation") {
  const char* text = R"({"n":3,"labels":["A","B","R"],"h":[0.5,0.5,1.0],
    "j":[{"i":0,"j":1,"v":0.5},{"i":0,"j":2,"v":1.0},{"i":1,"j":2,"v":1.0}],"offset":0.0})";
  IsingProblem p = nlohmann::json::parse(text).get<IsingProblem>();
  CHECK(p.n == 3);
  CHECK(p.labels == std::vector<std::string>{"A", "B", "R"});
  CHECK(p.h == nor_problem().h);
  CHECK(p.j == nor_problem().j);

  nlohmann::json round = p;
  IsingProblem q = round.get<IsingProblem>();
  CHECK(q.h == p.h);
  CHECK(q.j == p.j);
  CHECK(q.labels == p.labels);

  const char* dup = R"({"n":2,"h":[0,0],"j":[{"i":0,"j":1,"v":1},{"i":1,"j":0,"v":2}]})";
  CHECK_THROWS_WITH_AS(nlohmann::json::parse(dup).get<IsingProblem>(),
                       doctest::Contains("duplicate coupling"), std::invalid_argument);

  const char* self = R"({"n":2,"h":[0,0],"j":[{"i":1,"j":1,"v":1}]})";
  CHECK_THROWS_AS(nlohmann::json::parse(self).get<IsingProblem>(), std::invalid_argument);
}

TEST_CASE("qubit lookup by label or index") {
  IsingProblem p = nor_problem();
  p.labels = {"A", "B", "R"};
  CHECK(p.qubit_index("B") == 1);
  CHECK(p.qubit_index("2") == 2);
  CHECK_THROWS_AS(p.qubit_index("Q9"), std::invalid_argument);
}
