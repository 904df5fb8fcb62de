#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "mlab/rational.hpp"

namespace mlab::lp {

enum class Sense { Minimize, Maximize };
enum class Relation { LessEq, Equal, GreaterEq };
enum class Status { Optimal, Infeasible, Unbounded };

struct Constraint {
  std::vector<Rational> coeffs;  // dense, one per variable
  Relation relation = Relation::Equal;
  Rational rhs = 0;
};

struct VariableBounds {
  std::optional<Rational> lower;  // nullopt = unbounded on that side
  std::optional<Rational> upper;
};

struct LinearProgram {
  Sense sense = Sense::Minimize;
  std::vector<Rational> objective;
  std::vector<Constraint> constraints;
  std::vector<VariableBounds> bounds;  // one per variable; default-free

  std::size_t num_vars() const { return objective.size(); }
};

// Sparse-row convenience on top of LinearProgram.
class LpBuilder {
 public:
  explicit LpBuilder(Sense sense) { lp_.sense = sense; }

  int add_variable(Rational objective_coeff, std::optional<Rational> lower = std::nullopt,
                   std::optional<Rational> upper = std::nullopt);
  void add_constraint(const std::vector<std::pair<int, Rational>>& terms, Relation relation,
                      Rational rhs);
  const LinearProgram& program() const { return lp_; }
  LinearProgram take() { return std::move(lp_); }

 private:
  LinearProgram lp_;
};

// Outcome plus the matching certificate. Conventions, stated for the
// program's own sense (min shown; max mirrors with every inequality on y and
// d flipped):
//
//   Optimal   primal feasible; dual y by constraint with y_i >= 0 on >= rows,
//             y_i <= 0 on <= rows, free on = rows; reduced costs
//             d = c - A^T y satisfy d_j >= 0 when x_j has only a lower bound,
//             d_j <= 0 with only an upper bound, d_j = 0 when free, any sign
//             when boxed; and
//             c.x  ==  y.b + sum_{d_j>0} d_j l_j + sum_{d_j<0} d_j u_j.
//
//   Infeasible  multipliers (farkas_rows per constraint, farkas_lower /
//             farkas_upper per variable bound) with the row sign rules above,
//             farkas_lower >= 0, farkas_upper <= 0, aggregating to the
//             contradiction  0 = sum_i f_i a_i + lambda + mu  (coefficients)
//             with  f.b + lambda.l + mu.u > 0.
//
//   Unbounded  a feasible point (primal) plus a ray: a feasible direction
//             with improving objective.
struct LpOutcome {
  Status status = Status::Infeasible;

  std::vector<Rational> primal;
  Rational objective = 0;
  std::vector<Rational> dual;

  std::vector<Rational> farkas_rows;
  std::vector<Rational> farkas_lower;
  std::vector<Rational> farkas_upper;

  std::vector<Rational> ray;
};

// Exact two-phase primal simplex over rationals, Bland's rule, lexicographic
// variable order. Deterministic: identical programs yield identical outcomes.
// Throws MalformedProgram on dimension mismatches.
LpOutcome solve(const LinearProgram& lp);

// Re-checks every invariant of the outcome by substitution; true iff all hold
// exactly. Never throws; any violation (including bad dimensions) is false.
bool verify_certificate(const LinearProgram& lp, const LpOutcome& outcome);

}  // namespace mlab::lp
