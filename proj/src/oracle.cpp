#include "mlab/oracle.hpp"

#include <algorithm>

#include "mlab/errors.hpp"

namespace mlab::oracle {

namespace {

constexpr std::size_t kStateCap = 12;

struct LinearRow {
  std::vector<Rational> coeffs;
  Rational rhs;
};

// Row echelon rank of the coefficient part.
std::size_t rank_of(std::vector<LinearRow> rows, std::size_t width) {
  std::size_t r = 0;
  for (std::size_t col = 0; col < width && r < rows.size(); ++col) {
    std::size_t pivot = r;
    while (pivot < rows.size() && rows[pivot].coeffs[col] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[r]);
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      if (rows[i].coeffs[col] == 0) continue;
      Rational factor = rows[i].coeffs[col] / rows[r].coeffs[col];
      for (std::size_t j = col; j < width; ++j)
        rows[i].coeffs[j] -= factor * rows[r].coeffs[j];
      rows[i].rhs -= factor * rows[r].rhs;
    }
    ++r;
  }
  return r;
}

// Unique solution of a (possibly overdetermined) exact system, or nullopt
// when inconsistent or underdetermined.
std::optional<std::vector<Rational>> solve_unique(std::vector<LinearRow> rows,
                                                  std::size_t width) {
  std::vector<int> pivot_col_of_row;
  std::size_t r = 0;
  for (std::size_t col = 0; col < width && r < rows.size(); ++col) {
    std::size_t pivot = r;
    while (pivot < rows.size() && rows[pivot].coeffs[col] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[r]);
    Rational inv = rows[r].coeffs[col];
    for (std::size_t j = col; j < width; ++j) rows[r].coeffs[j] /= inv;
    rows[r].rhs /= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i].coeffs[col] == 0) continue;
      Rational factor = rows[i].coeffs[col];
      for (std::size_t j = col; j < width; ++j)
        rows[i].coeffs[j] -= factor * rows[r].coeffs[j];
      rows[i].rhs -= factor * rows[r].rhs;
    }
    pivot_col_of_row.push_back(static_cast<int>(col));
    ++r;
  }
  if (pivot_col_of_row.size() < width) return std::nullopt;
  for (std::size_t i = r; i < rows.size(); ++i)
    if (rows[i].rhs != 0) return std::nullopt;
  std::vector<Rational> solution(width);
  for (std::size_t i = 0; i < pivot_col_of_row.size(); ++i)
    solution[pivot_col_of_row[i]] = rows[i].rhs;
  return solution;
}

bool satisfies(const Polytope& polytope, const std::vector<Rational>& q) {
  Rational total = 0;
  for (const auto& v : q) {
    if (v < 0) return false;
    total += v;
  }
  if (total != 1) return false;
  for (const auto& row : polytope.rows) {
    Rational lhs = 0;
    for (std::size_t k = 0; k < q.size(); ++k) lhs += row.coeffs[k] * q[k];
    switch (row.relation) {
      case lp::Relation::LessEq:
        if (lhs > row.rhs) return false;
        break;
      case lp::Relation::Equal:
        if (lhs != row.rhs) return false;
        break;
      case lp::Relation::GreaterEq:
        if (lhs < row.rhs) return false;
        break;
    }
  }
  return true;
}

}  // namespace

std::vector<Measure> enumerate_vertices(const Polytope& polytope) {
  const std::size_t width = polytope.num_states;
  if (width == 0) throw ValidationError("polytope over zero states");
  if (width > kStateCap)
    throw TooLarge("vertex enumeration capped at " + std::to_string(kStateCap) + " states");
  for (const auto& row : polytope.rows)
    if (row.coeffs.size() != width)
      throw DimensionMismatch("polytope row width does not match the state count");

  std::vector<LinearRow> equalities;
  {
    LinearRow simplex{std::vector<Rational>(width, Rational(1)), Rational(1)};
    equalities.push_back(std::move(simplex));
  }
  std::vector<LinearRow> inequalities;  // as active candidates (rhs form)
  for (std::size_t k = 0; k < width; ++k) {
    LinearRow nonneg{std::vector<Rational>(width, Rational(0)), Rational(0)};
    nonneg.coeffs[k] = 1;
    inequalities.push_back(std::move(nonneg));
  }
  for (const auto& row : polytope.rows) {
    LinearRow r{row.coeffs, row.rhs};
    if (row.relation == lp::Relation::Equal)
      equalities.push_back(std::move(r));
    else
      inequalities.push_back(std::move(r));
  }

  const std::size_t base_rank = rank_of(equalities, width);
  if (base_rank > width) throw std::logic_error("rank exceeds dimension");
  const std::size_t need = width - base_rank;
  if (need > inequalities.size()) return {};

  std::vector<Measure> vertices;
  auto consider = [&](const std::vector<std::size_t>& chosen) {
    std::vector<LinearRow> system = equalities;
    for (std::size_t idx : chosen) system.push_back(inequalities[idx]);
    auto point = solve_unique(std::move(system), width);
    if (!point || !satisfies(polytope, *point)) return;
    for (const auto& seen : vertices)
      if (seen.weights == *point) return;
    vertices.push_back(Measure(std::move(*point)));
  };

  // Lexicographic enumeration of index subsets of size `need`.
  std::vector<std::size_t> chosen(need);
  for (std::size_t i = 0; i < need; ++i) chosen[i] = i;
  if (need == 0) {
    consider(chosen);
    return vertices;
  }
  for (;;) {
    consider(chosen);
    std::size_t i = need;
    while (i > 0 && chosen[i - 1] == inequalities.size() - need + (i - 1)) --i;
    if (i == 0) break;
    ++chosen[i - 1];
    for (std::size_t j = i; j < need; ++j) chosen[j] = chosen[j - 1] + 1;
  }
  return vertices;
}

Rational brute_force_extremum(const std::vector<Measure>& vertices, const RandomVariable& rv,
                              bool maximize) {
  if (vertices.empty()) throw ValidationError("extremum over an empty vertex list");
  Rational best = expectation(vertices.front(), rv);
  for (std::size_t i = 1; i < vertices.size(); ++i) {
    Rational value = expectation(vertices[i], rv);
    if (maximize ? value > best : value < best) best = value;
  }
  return best;
}

namespace {

void pin_polar_states(Polytope& polytope, const std::vector<int>& states) {
  std::vector<bool> in_support(polytope.num_states, false);
  for (int k : states) in_support[k] = true;
  for (std::size_t k = 0; k < polytope.num_states; ++k) {
    if (in_support[k]) continue;
    Polytope::Row pin{std::vector<Rational>(polytope.num_states, Rational(0)),
                      lp::Relation::Equal, Rational(0)};
    pin.coeffs[k] = 1;
    polytope.rows.push_back(std::move(pin));
  }
}

}  // namespace

Polytope measure_polytope(const EventTree& tree, const ShortSaleFlags& flags,
                          const std::optional<std::vector<int>>& support) {
  const auto states = support ? *support : all_states(tree.num_states());
  std::vector<bool> in_support(tree.num_states(), false);
  for (int k : states) in_support[k] = true;

  Polytope polytope;
  polytope.num_states = tree.num_states();
  for (int node : tree.internal_nodes()) {
    for (std::size_t m = 0; m < tree.num_assets(); ++m) {
      Polytope::Row row{std::vector<Rational>(tree.num_states(), Rational(0)),
                        flags.banned[m] ? lp::Relation::LessEq : lp::Relation::Equal,
                        Rational(0)};
      bool nonzero = false;
      for (int child : tree.node(node).children) {
        const auto& cn = tree.node(child);
        Rational change = tree.discounted_price(child, static_cast<int>(m)) -
                          tree.discounted_price(node, static_cast<int>(m));
        if (change == 0) continue;
        for (int k = cn.state_begin; k < cn.state_end; ++k) {
          if (!in_support[k]) continue;
          row.coeffs[k] = change;
          nonzero = true;
        }
      }
      if (nonzero) polytope.rows.push_back(std::move(row));
    }
  }
  pin_polar_states(polytope, states);
  return polytope;
}

Polytope measure_polytope(const SinglePeriodMarket& market, const ShortSaleFlags& flags,
                          const std::optional<std::vector<int>>& support) {
  const auto states = support ? *support : all_states(market.num_states());
  std::vector<bool> in_support(market.num_states(), false);
  for (int k : states) in_support[k] = true;

  Polytope polytope;
  polytope.num_states = market.num_states();
  for (std::size_t m = 0; m < market.num_assets(); ++m) {
    Polytope::Row row{std::vector<Rational>(market.num_states(), Rational(0)),
                      flags.banned[m] ? lp::Relation::LessEq : lp::Relation::Equal, Rational(0)};
    bool nonzero = false;
    for (std::size_t k = 0; k < market.num_states(); ++k) {
      if (!in_support[k]) continue;
      Rational change = market.price_change(static_cast<int>(k), static_cast<int>(m));
      if (change == 0) continue;
      row.coeffs[k] = change;
      nonzero = true;
    }
    if (nonzero) polytope.rows.push_back(std::move(row));
  }
  pin_polar_states(polytope, states);
  return polytope;
}

bool verify_arbitrage(const TradingStrategy& strategy, const EventTree& tree,
                      const MeasureFamily& actual, const ShortSaleFlags& flags) {
  try {
    if (strategy.initial_wealth != 0) return false;
    if (flags.banned.size() != tree.num_assets()) return false;

    const auto states = support(actual);
    if (states.empty()) return false;
    std::vector<bool> in_support(tree.num_states(), false);
    for (int k : states) in_support[k] = true;

    for (int node : tree.internal_nodes()) {
      auto it = strategy.risky_holdings.find(node);
      if (it == strategy.risky_holdings.end() || it->second.size() != tree.num_assets())
        return false;
      for (std::size_t m = 0; m < tree.num_assets(); ++m)
        if (flags.banned[m] && it->second[m] < 0) return false;
    }

    bool strict = false;
    for (std::size_t k = 0; k < tree.num_states(); ++k) {
      if (!in_support[k]) continue;
      Rational value = portfolio_value(tree, strategy, tree.leaf_of_state(static_cast<int>(k)));
      if (value < 0) return false;
      if (value > 0) strict = true;
    }
    if (!strict) return false;

    // Self-financing: the two evaluation routes must agree at every node.
    for (std::size_t id = 0; id < tree.num_nodes(); ++id) {
      Rational direct = portfolio_value(tree, strategy, static_cast<int>(id));
      Rational via_gain = strategy.initial_wealth +
                          discounted_gain_at(tree, strategy, static_cast<int>(id));
      if (direct != via_gain) return false;
    }
    return true;
  } catch (const std::exception&) {
    return false;
  }
}

bool verify_no_arbitrage(const NoArbitrageCertificate& certificate, const EventTree& tree,
                         const ShortSaleFlags& flags, const std::vector<int>& support) {
  try {
    if (certificate.epsilon <= 0) return false;
    const auto& weights = certificate.measure.weights;
    if (weights.size() != tree.num_states()) return false;
    std::vector<bool> in_support(tree.num_states(), false);
    for (int k : support) in_support[k] = true;
    for (std::size_t k = 0; k < weights.size(); ++k) {
      if (in_support[k] && weights[k] < certificate.epsilon) return false;
      if (!in_support[k] && weights[k] != 0) return false;
    }
    return satisfies_measure_conditions(certificate.measure, tree, flags);
  } catch (const std::exception&) {
    return false;
  }
}

}  // namespace mlab::oracle
