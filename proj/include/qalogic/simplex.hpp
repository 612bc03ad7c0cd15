#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <vector>

namespace qalogic::lp {

using Rational = boost::multiprecision::cpp_rational;

/// Exact conversion; every finite double is a dyadic rational.
Rational rational_from_double(double x);
double to_double(const Rational& r);

enum class Relation { eq, ge, le };

struct Constraint {
  std::vector<Rational> coeffs;  // dense over the problem's variables
  Relation rel = Relation::eq;
  Rational rhs = 0;
};

enum class LpStatus { optimal, infeasible };

struct LpResult {
  LpStatus status = LpStatus::infeasible;
  std::vector<Rational> x;
  Rational objective = 0;
  /// On infeasibility: one multiplier per added constraint (phase-1 duals).
  /// The weighted combination of the constraints is contradictory.
  std::vector<Rational> constraint_multipliers;
};

/// Dense simplex over exact rationals with box-bounded variables and
/// Bland's anti-cycling rule. Slow by LP standards but every verdict is a
/// proof: a reported infeasibility cannot be a rounding artifact.
class ExactLp {
 public:
  explicit ExactLp(int num_vars);

  void add_constraint(Constraint c);
  void add_constraint(std::vector<Rational> coeffs, Relation rel, Rational rhs);
  void set_bounds(int var, Rational lo, Rational hi);

  LpResult minimize(const std::vector<Rational>& objective) const;
  LpResult feasible() const;

  int num_vars() const { return num_vars_; }
  int num_constraints() const { return static_cast<int>(constraints_.size()); }

 private:
  int num_vars_;
  std::vector<Constraint> constraints_;
  std::vector<Rational> lo_, hi_;
};

}  // namespace qalogic::lp
