#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qalogic/anneal.hpp"
#include "qalogic/ising.hpp"

namespace qalogic {

enum class SpinRole { x_bit, y_bit, carry, sum };

struct CellRef {
  int col = 0, row = 0;  // (i, j): x-bit column, y-bit row
  // Global spin indices for (X, Y, Z, D, C, S); -1 where the input is a
  // boundary constant eliminated by fix_spins.
  int x = -1, y = -1, z = -1, d = -1, c = -1, s = -1;
};

/// Multiplier array assembled from shared-spin cells. Cell (i,j) enforces
/// x_i y_j + Z + D = S + 2C; within a row carries ripple upward in i
/// (D_ij = C_{i-1,j}) and sums flow diagonally into the next row
/// (Z_ij = S_{i+1,j-1}, with the top-of-row Z fed by the previous row's top
/// carry). Boundary Z/D inputs are fixed to 0 exactly, not clamped. The
/// unconsumed outputs are the product bits, so each (x, y) has exactly one
/// ground state and the ground degeneracy is 2^(x_bits + y_bits).
struct ComposedProblem {
  IsingProblem problem;
  int x_bits = 0, y_bits = 0;
  std::vector<CellRef> cells;
  std::vector<SpinRole> roles;        // per spin
  std::vector<int> product_spin;      // spin index per product bit, LSB first
  std::vector<int> x_spins, y_spins;  // LSB first

  int decode_x(const std::string& state) const;
  int decode_y(const std::string& state) const;
  std::uint64_t decode_product(const std::string& state) const;

  std::map<int, int> operand_clamp_bits(int x, int y) const;
  std::map<int, int> product_clamp_bits(std::uint64_t n) const;
  /// Largest clamp_threshold over the given spins; any alpha strictly above
  /// guarantees the clamped bits in every ground state.
  double max_clamp_threshold(const std::map<int, int>& targets) const;
};

ComposedProblem build_array(int x_bits, int y_bits);

/// Full enumeration of the clamped problem's ground set instead of sampling;
/// exact but limited by the enumeration cap.
struct ExhaustiveEngine {};
using ComposerEngine = std::variant<ExhaustiveEngine, ExactEngine, ThermalEngine>;

struct ForwardResult {
  std::uint64_t product = 0;
  double product_mass = 0.0;  // histogram mass decoding to `product`
  std::vector<std::uint64_t> tied_products;
  Histogram histogram;
};

/// Clamps the operand spins at strength alpha, anneals, and decodes the
/// product from the histogram mode. Ties are reported, not broken silently.
ForwardResult multiply_forward(const ComposedProblem& arr, int x, int y, double alpha,
                               const ComposerEngine& engine, std::uint64_t iterations,
                               Exec exec = Exec::parallel);

struct FactorQuery {
  std::uint64_t n = 0;
  int x_bits = 2, y_bits = 2;
  double alpha = 3.0;
  ComposerEngine engine = ExhaustiveEngine{};
  std::uint64_t iterations = 10000;
};

struct FactorResult {
  std::vector<std::pair<int, int>> pairs;  // decoded (x, y) with x*y = n, sorted
  std::map<std::pair<int, int>, std::uint64_t> pair_counts;
  double success = 0.0;  // histogram mass decoding to a correct factorization
  Histogram histogram;
};

/// Backward computation: clamps the product bits to n's binary expansion and
/// recovers consistent operand pairs. The exhaustive engine returns the
/// complete solution set; sampling engines return the observed set with
/// per-pair frequencies.
FactorResult factor(const FactorQuery& query, Exec exec = Exec::parallel);

/// Success probability (mass on states whose decoded pair satisfies
/// x * y = n) per clamp strength over an ascending grid.
std::vector<SweepRow> alpha_sweep_factor(const FactorQuery& query, const std::vector<double>& grid,
                                         Exec exec = Exec::parallel);

}  // namespace qalogic
