#include "mlab/linprog.hpp"

#include <algorithm>

#include "mlab/errors.hpp"

namespace mlab::lp {

int LpBuilder::add_variable(Rational objective_coeff, std::optional<Rational> lower,
                            std::optional<Rational> upper) {
  lp_.objective.push_back(std::move(objective_coeff));
  lp_.bounds.push_back({std::move(lower), std::move(upper)});
  return static_cast<int>(lp_.objective.size()) - 1;
}

void LpBuilder::add_constraint(const std::vector<std::pair<int, Rational>>& terms,
                               Relation relation, Rational rhs) {
  Constraint c;
  c.coeffs.assign(lp_.num_vars(), Rational(0));
  for (const auto& [index, value] : terms) {
    if (index < 0 || index >= static_cast<int>(lp_.num_vars()))
      throw MalformedProgram("constraint references unknown variable " + std::to_string(index));
    c.coeffs[index] += value;
  }
  c.relation = relation;
  c.rhs = std::move(rhs);
  lp_.constraints.push_back(std::move(c));
}

namespace {

// x_j = shift + z[pos] - z[neg]; absent part = -1.
struct VarMap {
  int pos = -1;
  int neg = -1;
  Rational shift = 0;
  int box_row = -1;  // standard-form row index of the z[pos] <= u - l row
};

struct RowMeta {
  int origin = -1;   // original constraint index, -1 for box rows
  int box_var = -1;  // original variable when a box row
  int sign = 1;      // flip applied to reach rhs >= 0
};

// Gauss-Jordan on a square exact system; nullopt when singular.
std::optional<std::vector<Rational>> solve_square(std::vector<std::vector<Rational>> m,
                                                  std::vector<Rational> rhs) {
  const std::size_t n = rhs.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col] == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    std::swap(m[pivot], m[col]);
    std::swap(rhs[pivot], rhs[col]);
    Rational inv = m[col][col];
    for (std::size_t j = col; j < n; ++j) m[col][j] /= inv;
    rhs[col] /= inv;
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || m[row][col] == 0) continue;
      Rational factor = m[row][col];
      for (std::size_t j = col; j < n; ++j) m[row][j] -= factor * m[col][j];
      rhs[row] -= factor * rhs[col];
    }
  }
  return rhs;
}

struct StdForm {
  std::vector<VarMap> vars;
  std::vector<std::vector<Rational>> rows;  // post-flip coefficients over all columns
  std::vector<Rational> rhs;                // >= 0
  std::vector<RowMeta> meta;
  std::vector<Rational> cost;  // phase-2 cost per column (internal minimize)
  std::vector<bool> artificial;
  std::vector<int> basis;  // initial basic column per row
  std::size_t num_cols = 0;
  bool any_artificial = false;
};

StdForm build_standard_form(const LinearProgram& lp, const std::vector<Rational>& objective) {
  const std::size_t n = lp.num_vars();
  StdForm sf;
  sf.vars.resize(n);

  auto bound = [&](std::size_t j) {
    return j < lp.bounds.size() ? lp.bounds[j] : VariableBounds{};
  };

  std::size_t col = 0;
  for (std::size_t j = 0; j < n; ++j) {
    const auto& b = bound(j);
    if (b.lower && b.upper) {
      sf.vars[j].pos = static_cast<int>(col++);
      sf.vars[j].shift = *b.lower;
    } else if (b.lower) {
      sf.vars[j].pos = static_cast<int>(col++);
      sf.vars[j].shift = *b.lower;
    } else if (b.upper) {
      sf.vars[j].neg = static_cast<int>(col++);
      sf.vars[j].shift = *b.upper;
    } else {
      sf.vars[j].pos = static_cast<int>(col++);
      sf.vars[j].neg = static_cast<int>(col++);
    }
  }
  const std::size_t num_structural = col;

  // Constraint rows, then one box row per double-bounded variable.
  std::size_t num_rows = lp.constraints.size();
  for (std::size_t j = 0; j < n; ++j)
    if (bound(j).lower && bound(j).upper) ++num_rows;

  sf.rows.assign(num_rows, {});
  sf.rhs.assign(num_rows, Rational(0));
  sf.meta.assign(num_rows, {});

  std::size_t num_slacks = 0;
  for (const auto& c : lp.constraints)
    if (c.relation != Relation::Equal) ++num_slacks;
  num_slacks += num_rows - lp.constraints.size();  // box rows always carry a slack

  const std::size_t slack_base = num_structural;
  sf.num_cols = num_structural + num_slacks;  // artificials appended later

  std::size_t row = 0;
  std::size_t slack = slack_base;
  for (std::size_t i = 0; i < lp.constraints.size(); ++i, ++row) {
    const auto& c = lp.constraints[i];
    auto& coeffs = sf.rows[row];
    coeffs.assign(sf.num_cols, Rational(0));
    Rational rhs = c.rhs;
    for (std::size_t j = 0; j < n; ++j) {
      if (c.coeffs[j] == 0) continue;
      if (sf.vars[j].pos >= 0) coeffs[sf.vars[j].pos] += c.coeffs[j];
      if (sf.vars[j].neg >= 0) coeffs[sf.vars[j].neg] -= c.coeffs[j];
      rhs -= c.coeffs[j] * sf.vars[j].shift;
    }
    if (c.relation == Relation::LessEq) coeffs[slack++] = 1;
    if (c.relation == Relation::GreaterEq) coeffs[slack++] = -1;
    sf.rhs[row] = rhs;
    sf.meta[row].origin = static_cast<int>(i);
  }
  for (std::size_t j = 0; j < n; ++j) {
    const auto& b = bound(j);
    if (!(b.lower && b.upper)) continue;
    auto& coeffs = sf.rows[row];
    coeffs.assign(sf.num_cols, Rational(0));
    coeffs[sf.vars[j].pos] = 1;
    coeffs[slack++] = 1;
    sf.rhs[row] = *b.upper - *b.lower;
    sf.meta[row].box_var = static_cast<int>(j);
    sf.vars[j].box_row = static_cast<int>(row);
    ++row;
  }

  for (std::size_t r = 0; r < num_rows; ++r) {
    if (sf.rhs[r] >= 0) continue;
    sf.meta[r].sign = -1;
    sf.rhs[r] = -sf.rhs[r];
    for (auto& v : sf.rows[r]) v = -v;
  }

  // Internal cost over structural columns.
  sf.cost.assign(sf.num_cols, Rational(0));
  for (std::size_t j = 0; j < n; ++j) {
    if (sf.vars[j].pos >= 0) sf.cost[sf.vars[j].pos] += objective[j];
    if (sf.vars[j].neg >= 0) sf.cost[sf.vars[j].neg] -= objective[j];
  }

  // Crash basis: a slack with +1 coefficient serves; otherwise an artificial.
  sf.artificial.assign(sf.num_cols, false);
  sf.basis.assign(num_rows, -1);
  for (std::size_t r = 0; r < num_rows; ++r) {
    for (std::size_t cidx = num_structural; cidx < sf.num_cols; ++cidx) {
      if (sf.rows[r][cidx] == 1) {
        bool elsewhere = false;
        for (std::size_t r2 = 0; r2 < num_rows && !elsewhere; ++r2)
          if (r2 != r && sf.rows[r2][cidx] != 0) elsewhere = true;
        if (!elsewhere) {
          sf.basis[r] = static_cast<int>(cidx);
          break;
        }
      }
    }
    if (sf.basis[r] < 0) {
      for (auto& other : sf.rows) other.push_back(Rational(0));
      sf.rows[r].back() = 1;
      sf.cost.push_back(Rational(0));
      sf.artificial.push_back(true);
      sf.basis[r] = static_cast<int>(sf.num_cols);
      ++sf.num_cols;
      sf.any_artificial = true;
    }
  }
  return sf;
}

class SimplexSolver {
 public:
  explicit SimplexSolver(StdForm sf) : sf_(std::move(sf)) {
    tab_ = sf_.rows;
    rhs_ = sf_.rhs;
    basis_ = sf_.basis;
    row_ids_.resize(tab_.size());
    for (std::size_t r = 0; r < tab_.size(); ++r) row_ids_[r] = static_cast<int>(r);

    cost_row_.assign(sf_.num_cols, Rational(0));
    for (std::size_t j = 0; j < sf_.num_cols; ++j) cost_row_[j] = sf_.cost[j];
    cost_value_ = 0;

    phase1_row_.assign(sf_.num_cols, Rational(0));
    phase1_value_ = 0;
    if (sf_.any_artificial) {
      for (std::size_t j = 0; j < sf_.num_cols; ++j)
        if (sf_.artificial[j]) phase1_row_[j] = 1;
      for (std::size_t r = 0; r < tab_.size(); ++r) {
        if (!sf_.artificial[basis_[r]]) continue;
        for (std::size_t j = 0; j < sf_.num_cols; ++j) phase1_row_[j] -= tab_[r][j];
        phase1_value_ -= rhs_[r];
      }
    }
  }

  // Runs to optimality of the given cost row. Returns the entering column
  // when unbounded, -1 at optimum.
  int run(bool phase1) {
    auto& costs = phase1 ? phase1_row_ : cost_row_;
    long pivots = 0;
    for (;;) {
      if (++pivots > 200000) throw std::logic_error("simplex pivot budget exhausted");
      int enter = -1;
      for (std::size_t j = 0; j < sf_.num_cols; ++j) {
        if (sf_.artificial[j]) continue;  // artificials never (re)enter
        if (costs[j] < 0) {
          enter = static_cast<int>(j);
          break;
        }
      }
      if (enter < 0) return -1;

      int leave_row = -1;
      Rational best_ratio = 0;
      for (std::size_t r = 0; r < tab_.size(); ++r) {
        if (tab_[r][enter] <= 0) continue;
        Rational ratio = rhs_[r] / tab_[r][enter];
        if (leave_row < 0 || ratio < best_ratio ||
            (ratio == best_ratio && basis_[r] < basis_[leave_row])) {
          leave_row = static_cast<int>(r);
          best_ratio = ratio;
        }
      }
      if (leave_row < 0) return enter;
      pivot(static_cast<std::size_t>(leave_row), static_cast<std::size_t>(enter), phase1);
    }
  }

  Rational phase1_objective() const { return -phase1_value_; }

  // Replaces basic artificials after phase 1; drops redundant rows.
  void drive_out_artificials() {
    std::vector<bool> keep(tab_.size(), true);
    for (std::size_t r = 0; r < tab_.size(); ++r) {
      if (!sf_.artificial[basis_[r]]) continue;
      int target = -1;
      for (std::size_t j = 0; j < sf_.num_cols; ++j) {
        if (sf_.artificial[j]) continue;
        if (tab_[r][j] != 0) {
          target = static_cast<int>(j);
          break;
        }
      }
      if (target >= 0)
        pivot(r, static_cast<std::size_t>(target), true);
      else
        keep[r] = false;  // the original row is redundant
    }
    std::size_t w = 0;
    for (std::size_t r = 0; r < tab_.size(); ++r) {
      if (!keep[r]) continue;
      if (w != r) {
        tab_[w] = std::move(tab_[r]);
        rhs_[w] = std::move(rhs_[r]);
        basis_[w] = basis_[r];
        row_ids_[w] = row_ids_[r];
      }
      ++w;
    }
    tab_.resize(w);
    rhs_.resize(w);
    basis_.resize(w);
    row_ids_.resize(w);
  }

  std::vector<Rational> basic_point() const {
    std::vector<Rational> z(sf_.num_cols, Rational(0));
    for (std::size_t r = 0; r < tab_.size(); ++r) z[basis_[r]] = rhs_[r];
    return z;
  }

  // Improving feasible direction for the entering column at the current basis.
  std::vector<Rational> ray(int enter) const {
    std::vector<Rational> d(sf_.num_cols, Rational(0));
    d[enter] = 1;
    for (std::size_t r = 0; r < tab_.size(); ++r) d[basis_[r]] = -tab_[r][enter];
    return d;
  }

  // Dual multipliers of the surviving rows for the given per-column costs,
  // via B^T y = c_B on the unpivoted matrix.
  std::vector<Rational> dual_for(const std::vector<Rational>& column_costs) const {
    const std::size_t m = tab_.size();
    std::vector<std::vector<Rational>> mat(m, std::vector<Rational>(m, Rational(0)));
    std::vector<Rational> rhs(m, Rational(0));
    for (std::size_t k = 0; k < m; ++k) {
      for (std::size_t r = 0; r < m; ++r) mat[k][r] = sf_.rows[row_ids_[r]][basis_[k]];
      rhs[k] = column_costs[basis_[k]];
    }
    auto y = solve_square(std::move(mat), std::move(rhs));
    if (!y) throw std::logic_error("simplex basis matrix is singular");
    return *y;
  }

  const StdForm& form() const { return sf_; }
  const std::vector<int>& row_ids() const { return row_ids_; }

 private:
  void pivot(std::size_t row, std::size_t col, bool update_phase1) {
    Rational inv = tab_[row][col];
    for (auto& v : tab_[row]) v /= inv;
    rhs_[row] /= inv;
    for (std::size_t r = 0; r < tab_.size(); ++r) {
      if (r == row || tab_[r][col] == 0) continue;
      Rational factor = tab_[r][col];
      for (std::size_t j = 0; j < sf_.num_cols; ++j) tab_[r][j] -= factor * tab_[row][j];
      rhs_[r] -= factor * rhs_[row];
    }
    if (cost_row_[col] != 0) {
      Rational factor = cost_row_[col];
      for (std::size_t j = 0; j < sf_.num_cols; ++j) cost_row_[j] -= factor * tab_[row][j];
      cost_value_ -= factor * rhs_[row];
    }
    if (update_phase1 && phase1_row_[col] != 0) {
      Rational factor = phase1_row_[col];
      for (std::size_t j = 0; j < sf_.num_cols; ++j) phase1_row_[j] -= factor * tab_[row][j];
      phase1_value_ -= factor * rhs_[row];
    }
    basis_[row] = static_cast<int>(col);
  }

  StdForm sf_;
  std::vector<std::vector<Rational>> tab_;
  std::vector<Rational> rhs_;
  std::vector<int> basis_;
  std::vector<int> row_ids_;  // surviving row -> standard-form row
  std::vector<Rational> cost_row_;
  Rational cost_value_;
  std::vector<Rational> phase1_row_;
  Rational phase1_value_;
};

std::vector<Rational> map_to_original(const StdForm& sf, const std::vector<Rational>& z,
                                      bool with_shift) {
  std::vector<Rational> x(sf.vars.size(), Rational(0));
  for (std::size_t j = 0; j < sf.vars.size(); ++j) {
    if (with_shift) x[j] = sf.vars[j].shift;
    if (sf.vars[j].pos >= 0) x[j] += z[sf.vars[j].pos];
    if (sf.vars[j].neg >= 0) x[j] -= z[sf.vars[j].neg];
  }
  return x;
}

Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  Rational total = 0;
  for (std::size_t i = 0; i < a.size(); ++i) total += a[i] * b[i];
  return total;
}

void validate(const LinearProgram& lp) {
  if (lp.num_vars() == 0) throw MalformedProgram("program has no variables");
  if (!lp.bounds.empty() && lp.bounds.size() != lp.num_vars())
    throw MalformedProgram("bounds size does not match the variable count");
  for (const auto& c : lp.constraints)
    if (c.coeffs.size() != lp.num_vars())
      throw MalformedProgram("constraint width does not match the variable count");
}

}  // namespace

LpOutcome solve(const LinearProgram& lp) {
  validate(lp);
  const std::size_t n = lp.num_vars();
  const bool maximize = lp.sense == Sense::Maximize;

  LpOutcome out;

  // Crossed bounds admit a one-line certificate.
  for (std::size_t j = 0; j < lp.bounds.size(); ++j) {
    const auto& b = lp.bounds[j];
    if (b.lower && b.upper && *b.lower > *b.upper) {
      out.status = Status::Infeasible;
      out.farkas_rows.assign(lp.constraints.size(), Rational(0));
      out.farkas_lower.assign(n, Rational(0));
      out.farkas_upper.assign(n, Rational(0));
      out.farkas_lower[j] = 1;
      out.farkas_upper[j] = -1;
      return out;
    }
  }

  std::vector<Rational> objective = lp.objective;
  if (maximize)
    for (auto& c : objective) c = -c;

  SimplexSolver solver(build_standard_form(lp, objective));
  const StdForm& sf = solver.form();

  if (sf.any_artificial) {
    int enter = solver.run(true);
    if (enter >= 0) throw std::logic_error("phase 1 cannot be unbounded");
    if (solver.phase1_objective() > 0) {
      // Farkas multipliers from the phase-1 dual.
      std::vector<Rational> art_cost(sf.num_cols, Rational(0));
      for (std::size_t j = 0; j < sf.num_cols; ++j)
        if (sf.artificial[j]) art_cost[j] = 1;
      auto y = solver.dual_for(art_cost);

      out.status = Status::Infeasible;
      out.farkas_rows.assign(lp.constraints.size(), Rational(0));
      out.farkas_lower.assign(n, Rational(0));
      out.farkas_upper.assign(n, Rational(0));
      std::vector<Rational> box_dual(n, Rational(0));
      for (std::size_t r = 0; r < y.size(); ++r) {
        const RowMeta& meta = sf.meta[solver.row_ids()[r]];
        if (meta.origin >= 0)
          out.farkas_rows[meta.origin] = Rational(meta.sign) * y[r];
        else
          box_dual[meta.box_var] = y[r];  // box rows are never sign-flipped
      }
      for (std::size_t j = 0; j < n; ++j) {
        Rational aggregated = 0;
        for (std::size_t i = 0; i < lp.constraints.size(); ++i)
          aggregated += out.farkas_rows[i] * lp.constraints[i].coeffs[j];
        const auto& b = j < lp.bounds.size() ? lp.bounds[j] : VariableBounds{};
        if (b.lower && b.upper) {
          out.farkas_upper[j] = box_dual[j];
          out.farkas_lower[j] = -aggregated - box_dual[j];
        } else if (b.lower) {
          out.farkas_lower[j] = -aggregated;
        } else if (b.upper) {
          out.farkas_upper[j] = -aggregated;
        }
      }
      return out;
    }
    solver.drive_out_artificials();
  }

  int enter = solver.run(false);
  if (enter >= 0) {
    out.status = Status::Unbounded;
    out.primal = map_to_original(sf, solver.basic_point(), true);
    auto direction = map_to_original(sf, solver.ray(enter), false);
    out.ray = std::move(direction);
    return out;
  }

  out.status = Status::Optimal;
  out.primal = map_to_original(sf, solver.basic_point(), true);
  out.objective = dot(lp.objective, out.primal);

  auto y = solver.dual_for(sf.cost);
  out.dual.assign(lp.constraints.size(), Rational(0));
  for (std::size_t r = 0; r < y.size(); ++r) {
    const RowMeta& meta = sf.meta[solver.row_ids()[r]];
    if (meta.origin >= 0) out.dual[meta.origin] = Rational(meta.sign) * y[r];
  }
  if (maximize)
    for (auto& v : out.dual) v = -v;
  return out;
}

namespace {

bool row_satisfied(const Constraint& c, const Rational& lhs) {
  switch (c.relation) {
    case Relation::LessEq:
      return lhs <= c.rhs;
    case Relation::Equal:
      return lhs == c.rhs;
    case Relation::GreaterEq:
      return lhs >= c.rhs;
  }
  return false;
}

bool primal_feasible(const LinearProgram& lp, const std::vector<Rational>& x) {
  if (x.size() != lp.num_vars()) return false;
  for (const auto& c : lp.constraints)
    if (!row_satisfied(c, dot(c.coeffs, x))) return false;
  for (std::size_t j = 0; j < lp.bounds.size(); ++j) {
    const auto& b = lp.bounds[j];
    if (b.lower && x[j] < *b.lower) return false;
    if (b.upper && x[j] > *b.upper) return false;
  }
  return true;
}

}  // namespace

bool verify_certificate(const LinearProgram& lp, const LpOutcome& outcome) {
  const std::size_t n = lp.num_vars();
  if (n == 0) return false;
  if (!lp.bounds.empty() && lp.bounds.size() != n) return false;
  for (const auto& c : lp.constraints)
    if (c.coeffs.size() != n) return false;
  const bool maximize = lp.sense == Sense::Maximize;
  auto bound = [&](std::size_t j) {
    return j < lp.bounds.size() ? lp.bounds[j] : VariableBounds{};
  };

  switch (outcome.status) {
    case Status::Optimal: {
      if (!primal_feasible(lp, outcome.primal)) return false;
      if (outcome.dual.size() != lp.constraints.size()) return false;
      if (dot(lp.objective, outcome.primal) != outcome.objective) return false;

      for (std::size_t i = 0; i < lp.constraints.size(); ++i) {
        const auto& y = outcome.dual[i];
        switch (lp.constraints[i].relation) {
          case Relation::GreaterEq:
            if (maximize ? y > 0 : y < 0) return false;
            break;
          case Relation::LessEq:
            if (maximize ? y < 0 : y > 0) return false;
            break;
          case Relation::Equal:
            break;
        }
      }

      Rational dual_value = 0;
      for (std::size_t i = 0; i < lp.constraints.size(); ++i)
        dual_value += outcome.dual[i] * lp.constraints[i].rhs;
      for (std::size_t j = 0; j < n; ++j) {
        Rational d = lp.objective[j];
        for (std::size_t i = 0; i < lp.constraints.size(); ++i)
          d -= outcome.dual[i] * lp.constraints[i].coeffs[j];
        const auto& b = bound(j);
        if (!b.lower && !b.upper) {
          if (d != 0) return false;
          continue;
        }
        if (b.lower && !b.upper && (maximize ? d > 0 : d < 0)) return false;
        if (b.upper && !b.lower && (maximize ? d < 0 : d > 0)) return false;
        // The binding side follows from the sign of the reduced cost.
        bool toward_lower = maximize ? d < 0 : d > 0;
        if (d != 0) {
          if (toward_lower) {
            if (!b.lower) return false;
            dual_value += d * *b.lower;
          } else {
            if (!b.upper) return false;
            dual_value += d * *b.upper;
          }
        }
      }
      return dual_value == outcome.objective;
    }

    case Status::Infeasible: {
      if (outcome.farkas_rows.size() != lp.constraints.size()) return false;
      if (outcome.farkas_lower.size() != n || outcome.farkas_upper.size() != n) return false;
      for (std::size_t i = 0; i < lp.constraints.size(); ++i) {
        const auto& f = outcome.farkas_rows[i];
        if (lp.constraints[i].relation == Relation::GreaterEq && f < 0) return false;
        if (lp.constraints[i].relation == Relation::LessEq && f > 0) return false;
      }
      Rational value = 0;
      for (std::size_t i = 0; i < lp.constraints.size(); ++i)
        value += outcome.farkas_rows[i] * lp.constraints[i].rhs;
      for (std::size_t j = 0; j < n; ++j) {
        const auto& b = bound(j);
        const auto& lam = outcome.farkas_lower[j];
        const auto& mu = outcome.farkas_upper[j];
        if (lam < 0 || (lam != 0 && !b.lower)) return false;
        if (mu > 0 || (mu != 0 && !b.upper)) return false;
        Rational aggregated = lam + mu;
        for (std::size_t i = 0; i < lp.constraints.size(); ++i)
          aggregated += outcome.farkas_rows[i] * lp.constraints[i].coeffs[j];
        if (aggregated != 0) return false;
        if (b.lower) value += lam * *b.lower;
        if (b.upper) value += mu * *b.upper;
      }
      return value > 0;
    }

    case Status::Unbounded: {
      if (outcome.ray.size() != n) return false;
      if (!outcome.primal.empty() && !primal_feasible(lp, outcome.primal)) return false;
      for (const auto& c : lp.constraints) {
        Rational change = dot(c.coeffs, outcome.ray);
        if (c.relation == Relation::LessEq && change > 0) return false;
        if (c.relation == Relation::Equal && change != 0) return false;
        if (c.relation == Relation::GreaterEq && change < 0) return false;
      }
      for (std::size_t j = 0; j < n; ++j) {
        const auto& b = bound(j);
        if (b.lower && outcome.ray[j] < 0) return false;
        if (b.upper && outcome.ray[j] > 0) return false;
      }
      Rational drift = dot(lp.objective, outcome.ray);
      return maximize ? drift > 0 : drift < 0;
    }
  }
  return false;
}

}  // namespace mlab::lp
