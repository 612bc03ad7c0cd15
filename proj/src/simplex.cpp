#include "qalogic/simplex.hpp"

#include <stdexcept>
#include <utility>

namespace qalogic::lp {

Rational rational_from_double(double x) {
  return Rational(x);  // exact: doubles are dyadic rationals
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

ExactLp::ExactLp(int num_vars)
    : num_vars_(num_vars),
      lo_(static_cast<std::size_t>(num_vars), Rational(-1000000)),
      hi_(static_cast<std::size_t>(num_vars), Rational(1000000)) {
  if (num_vars <= 0) throw std::invalid_argument("LP needs at least one variable");
}

void ExactLp::add_constraint(Constraint c) {
  if (static_cast<int>(c.coeffs.size()) != num_vars_)
    throw std::invalid_argument("constraint coefficient count mismatch");
  constraints_.push_back(std::move(c));
}

void ExactLp::add_constraint(std::vector<Rational> coeffs, Relation rel, Rational rhs) {
  add_constraint(Constraint{std::move(coeffs), rel, std::move(rhs)});
}

void ExactLp::set_bounds(int var, Rational lo, Rational hi) {
  if (var < 0 || var >= num_vars_) throw std::invalid_argument("variable index out of range");
  if (lo > hi) throw std::invalid_argument("empty variable bound interval");
  lo_[static_cast<std::size_t>(var)] = std::move(lo);
  hi_[static_cast<std::size_t>(var)] = std::move(hi);
}

LpResult ExactLp::feasible() const {
  return minimize(std::vector<Rational>(static_cast<std::size_t>(num_vars_), Rational(0)));
}

namespace {

using Matrix = std::vector<std::vector<Rational>>;

void pivot(Matrix& a, std::vector<int>& basis, int r, int c) {
  auto& row = a[static_cast<std::size_t>(r)];
  const Rational d = row[static_cast<std::size_t>(c)];
  for (auto& v : row) v /= d;
  const int width = static_cast<int>(row.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (static_cast<int>(i) == r) continue;
    Rational f = a[i][static_cast<std::size_t>(c)];
    if (f == 0) continue;
    auto& ri = a[i];
    for (int k = 0; k < width; ++k) {
      if (row[static_cast<std::size_t>(k)] != 0)
        ri[static_cast<std::size_t>(k)] -= f * row[static_cast<std::size_t>(k)];
    }
  }
  basis[static_cast<std::size_t>(r)] = c;
}

// Bland's rule: enter at the lowest-index improving column, leave at the
// lowest-index basic variable among minimum ratios. Guarantees termination.
// Returns false on unboundedness.
bool run_simplex(Matrix& a, std::vector<int>& basis, const std::vector<Rational>& cost,
                 int banned_from) {
  const int rows = static_cast<int>(a.size());
  const int cols = static_cast<int>(cost.size());
  for (;;) {
    int enter = -1;
    for (int j = 0; j < cols && enter < 0; ++j) {
      if (j >= banned_from) break;
      Rational z = cost[static_cast<std::size_t>(j)];
      for (int i = 0; i < rows; ++i) {
        const Rational& cb = cost[static_cast<std::size_t>(basis[static_cast<std::size_t>(i)])];
        if (cb != 0 && a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] != 0)
          z -= cb * a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      }
      if (z < 0) enter = j;
    }
    if (enter < 0) return true;

    int leave = -1;
    Rational best;
    for (int i = 0; i < rows; ++i) {
      const Rational& piv = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(enter)];
      if (piv <= 0) continue;
      Rational ratio = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(cols)] / piv;
      if (leave < 0 || ratio < best ||
          (ratio == best && basis[static_cast<std::size_t>(i)] < basis[static_cast<std::size_t>(leave)])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave < 0) return false;
    pivot(a, basis, leave, enter);
  }
}

}  // namespace

LpResult ExactLp::minimize(const std::vector<Rational>& objective) const {
  if (static_cast<int>(objective.size()) != num_vars_)
    throw std::invalid_argument("objective coefficient count mismatch");

  // Shift to y = x - lo >= 0; upper bounds become explicit rows y_k <= range_k.
  struct Row {
    std::vector<Rational> a;
    Relation rel;
    Rational rhs;
    int sign = 1;  // -1 if negated during rhs normalization (user rows only)
    bool user = false;
  };
  std::vector<Row> rows;
  rows.reserve(constraints_.size() + static_cast<std::size_t>(num_vars_));
  for (const auto& c : constraints_) {
    Row r;
    r.a = c.coeffs;
    r.rel = c.rel;
    r.rhs = c.rhs;
    r.user = true;
    for (int k = 0; k < num_vars_; ++k)
      r.rhs -= c.coeffs[static_cast<std::size_t>(k)] * lo_[static_cast<std::size_t>(k)];
    rows.push_back(std::move(r));
  }
  for (int k = 0; k < num_vars_; ++k) {
    Row r;
    r.a.assign(static_cast<std::size_t>(num_vars_), Rational(0));
    r.a[static_cast<std::size_t>(k)] = 1;
    r.rel = Relation::le;
    r.rhs = hi_[static_cast<std::size_t>(k)] - lo_[static_cast<std::size_t>(k)];
    rows.push_back(std::move(r));
  }
  for (auto& r : rows) {
    if (r.rhs < 0) {
      for (auto& v : r.a) v = -v;
      r.rhs = -r.rhs;
      r.sign = -1;
      if (r.rel == Relation::le)
        r.rel = Relation::ge;
      else if (r.rel == Relation::ge)
        r.rel = Relation::le;
    }
  }

  const int m = static_cast<int>(rows.size());
  int n_ineq = 0;
  for (const auto& r : rows)
    if (r.rel != Relation::eq) ++n_ineq;
  int n_art = 0;
  for (const auto& r : rows)
    if (r.rel != Relation::le) ++n_art;

  const int slack_begin = num_vars_;
  const int art_begin = slack_begin + n_ineq;
  const int cols = art_begin + n_art;

  Matrix a(static_cast<std::size_t>(m),
           std::vector<Rational>(static_cast<std::size_t>(cols + 1), Rational(0)));
  std::vector<int> basis(static_cast<std::size_t>(m), -1);
  std::vector<int> start_col(static_cast<std::size_t>(m), -1);  // initial basic unit column
  {
    int s = slack_begin, t = art_begin;
    for (int i = 0; i < m; ++i) {
      auto& row = a[static_cast<std::size_t>(i)];
      for (int k = 0; k < num_vars_; ++k) row[static_cast<std::size_t>(k)] = rows[static_cast<std::size_t>(i)].a[static_cast<std::size_t>(k)];
      row[static_cast<std::size_t>(cols)] = rows[static_cast<std::size_t>(i)].rhs;
      switch (rows[static_cast<std::size_t>(i)].rel) {
        case Relation::le:
          row[static_cast<std::size_t>(s)] = 1;
          basis[static_cast<std::size_t>(i)] = s;
          start_col[static_cast<std::size_t>(i)] = s;
          ++s;
          break;
        case Relation::ge:
          row[static_cast<std::size_t>(s)] = -1;
          ++s;
          row[static_cast<std::size_t>(t)] = 1;
          basis[static_cast<std::size_t>(i)] = t;
          start_col[static_cast<std::size_t>(i)] = t;
          ++t;
          break;
        case Relation::eq:
          row[static_cast<std::size_t>(t)] = 1;
          basis[static_cast<std::size_t>(i)] = t;
          start_col[static_cast<std::size_t>(i)] = t;
          ++t;
          break;
      }
    }
  }

  LpResult result;

  // Phase 1: minimize the sum of artificials.
  if (n_art > 0) {
    std::vector<Rational> cost1(static_cast<std::size_t>(cols), Rational(0));
    for (int jcol = art_begin; jcol < cols; ++jcol) cost1[static_cast<std::size_t>(jcol)] = 1;
    if (!run_simplex(a, basis, cost1, cols))
      throw std::logic_error("phase-1 LP unbounded");
    Rational infeas = 0;
    for (int i = 0; i < m; ++i)
      if (basis[static_cast<std::size_t>(i)] >= art_begin)
        infeas += a[static_cast<std::size_t>(i)][static_cast<std::size_t>(cols)];
    if (infeas > 0) {
      result.status = LpStatus::infeasible;
      result.objective = infeas;
      result.constraint_multipliers.clear();
      for (int i = 0; i < m; ++i) {
        if (!rows[static_cast<std::size_t>(i)].user) continue;
        Rational pi = 0;
        for (int k = 0; k < m; ++k) {
          if (basis[static_cast<std::size_t>(k)] >= art_begin)
            pi += a[static_cast<std::size_t>(k)][static_cast<std::size_t>(start_col[static_cast<std::size_t>(i)])];
        }
        result.constraint_multipliers.push_back(Rational(rows[static_cast<std::size_t>(i)].sign) * pi);
      }
      return result;
    }
    // Drive remaining zero-level artificials out of the basis.
    for (int i = m - 1; i >= 0; --i) {
      if (basis[static_cast<std::size_t>(i)] < art_begin) continue;
      int piv_col = -1;
      for (int jcol = 0; jcol < art_begin && piv_col < 0; ++jcol)
        if (a[static_cast<std::size_t>(i)][static_cast<std::size_t>(jcol)] != 0) piv_col = jcol;
      if (piv_col >= 0) {
        pivot(a, basis, i, piv_col);
      } else {
        a.erase(a.begin() + i);  // redundant row
        basis.erase(basis.begin() + i);
      }
    }
  }

  // Phase 2 over the original objective; artificials may not re-enter.
  std::vector<Rational> cost2(static_cast<std::size_t>(cols), Rational(0));
  for (int k = 0; k < num_vars_; ++k) cost2[static_cast<std::size_t>(k)] = objective[static_cast<std::size_t>(k)];
  if (!run_simplex(a, basis, cost2, art_begin))
    throw std::logic_error("phase-2 LP unbounded despite box bounds");

  result.status = LpStatus::optimal;
  result.x.assign(static_cast<std::size_t>(num_vars_), Rational(0));
  for (std::size_t i = 0; i < basis.size(); ++i) {
    int b = basis[i];
    if (b < num_vars_)
      result.x[static_cast<std::size_t>(b)] = a[i][a[i].size() - 1];
  }
  for (int k = 0; k < num_vars_; ++k) {
    result.x[static_cast<std::size_t>(k)] += lo_[static_cast<std::size_t>(k)];
    result.objective += objective[static_cast<std::size_t>(k)] * result.x[static_cast<std::size_t>(k)];
  }
  return result;
}

}  // namespace qalogic::lp
