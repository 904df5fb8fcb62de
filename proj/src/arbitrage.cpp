#include "mlab/arbitrage.hpp"

#include <algorithm>

#include "mlab/errors.hpp"
#include "mlab/linprog.hpp"
#include "portfolio_lp.hpp"

namespace mlab {

namespace {

std::vector<int> effective_support(const std::optional<std::vector<int>>& given,
                                   std::size_t num_states) {
  if (!given) return all_states(num_states);
  for (int k : *given)
    if (k < 0 || k >= static_cast<int>(num_states))
      throw ValidationError("support state " + std::to_string(k) + " out of range");
  return *given;
}

}  // namespace

std::optional<ArbitrageCertificate> find_arbitrage_single(const SinglePeriodMarket& market,
                                                          const MeasureFamily& actual,
                                                          const ShortSaleFlags& flags) {
  if (actual.num_states() != market.num_states())
    throw DimensionMismatch("family and market disagree on the state count");
  if (flags.banned.size() != market.num_assets())
    throw DimensionMismatch("flags and market disagree on the asset count");
  const auto states = support(actual);
  if (states.empty()) throw EmptySupport("every state is polar");

  const std::size_t num_assets = market.num_assets();
  lp::LpBuilder builder(lp::Sense::Maximize);

  // Objective: total terminal value over support states.
  Rational bond_weight = Rational(static_cast<long>(states.size()));
  int h0 = builder.add_variable(bond_weight, Rational(-1), Rational(1));
  std::vector<int> h(num_assets);
  for (std::size_t m = 0; m < num_assets; ++m) {
    Rational weight = 0;
    for (int k : states) weight += market.discounted_terminal(k, static_cast<int>(m));
    h[m] = builder.add_variable(weight, flags.banned[m] ? std::optional<Rational>(0)
                                                        : std::optional<Rational>(-1),
                                Rational(1));
  }

  // V*(0) = 0.
  std::vector<std::pair<int, Rational>> initial{{h0, Rational(1)}};
  for (std::size_t m = 0; m < num_assets; ++m)
    initial.push_back({h[m], market.initial_prices[m]});
  builder.add_constraint(initial, lp::Relation::Equal, 0);

  // V*(1) >= 0 quasi-surely.
  for (int k : states) {
    std::vector<std::pair<int, Rational>> row{{h0, Rational(1)}};
    for (std::size_t m = 0; m < num_assets; ++m)
      row.push_back({h[m], market.discounted_terminal(k, static_cast<int>(m))});
    builder.add_constraint(row, lp::Relation::GreaterEq, 0);
  }

  auto outcome = lp::solve(builder.take());
  if (outcome.status != lp::Status::Optimal)
    throw std::logic_error("arbitrage search must stay feasible and bounded");
  if (outcome.objective <= 0) return std::nullopt;

  TradingStrategy strategy;
  strategy.initial_wealth = 0;
  std::vector<Rational> holdings(num_assets);
  for (std::size_t m = 0; m < num_assets; ++m) holdings[m] = outcome.primal[h[m]];
  strategy.risky_holdings[0] = std::move(holdings);

  for (int k : states) {
    Rational value = outcome.primal[h0];
    for (std::size_t m = 0; m < num_assets; ++m)
      value += outcome.primal[h[m]] * market.discounted_terminal(k, static_cast<int>(m));
    if (value > 0) return ArbitrageCertificate{std::move(strategy), k};
  }
  throw std::logic_error("positive optimum without a positive terminal state");
}

std::optional<NoArbitrageCertificate> find_risk_neutral_measure(
    const SinglePeriodMarket& market, const ShortSaleFlags& flags,
    const std::optional<std::vector<int>>& support) {
  if (flags.banned.size() != market.num_assets())
    throw DimensionMismatch("flags and market disagree on the asset count");
  const auto states = effective_support(support, market.num_states());
  if (states.empty()) throw EmptySupport("every state is polar");

  lp::LpBuilder builder(lp::Sense::Maximize);
  int eps = builder.add_variable(1);
  std::vector<int> q(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) q[i] = builder.add_variable(0, Rational(0));

  std::vector<std::pair<int, Rational>> total;
  for (std::size_t i = 0; i < states.size(); ++i) total.push_back({q[i], Rational(1)});
  builder.add_constraint(total, lp::Relation::Equal, 1);
  for (std::size_t i = 0; i < states.size(); ++i)
    builder.add_constraint({{q[i], Rational(1)}, {eps, Rational(-1)}}, lp::Relation::GreaterEq,
                           0);
  for (std::size_t m = 0; m < market.num_assets(); ++m) {
    std::vector<std::pair<int, Rational>> row;
    for (std::size_t i = 0; i < states.size(); ++i)
      row.push_back({q[i], market.price_change(states[i], static_cast<int>(m))});
    builder.add_constraint(row, flags.banned[m] ? lp::Relation::LessEq : lp::Relation::Equal, 0);
  }

  auto outcome = lp::solve(builder.take());
  if (outcome.status == lp::Status::Infeasible) return std::nullopt;
  if (outcome.status != lp::Status::Optimal)
    throw std::logic_error("measure search cannot be unbounded");
  if (outcome.objective <= 0) return std::nullopt;

  std::vector<Rational> weights(market.num_states(), Rational(0));
  for (std::size_t i = 0; i < states.size(); ++i) weights[states[i]] = outcome.primal[q[i]];
  return NoArbitrageCertificate{Measure(std::move(weights)), outcome.objective};
}

std::optional<ArbitrageCertificate> find_arbitrage_multi(const EventTree& tree,
                                                         const MeasureFamily& actual,
                                                         const ShortSaleFlags& flags) {
  if (actual.num_states() != tree.num_states())
    throw DimensionMismatch("family and tree disagree on the state count");
  if (flags.banned.size() != tree.num_assets())
    throw DimensionMismatch("flags and tree disagree on the asset count");
  const auto states = support(actual);
  if (states.empty()) throw EmptySupport("every state is polar");

  lp::LpBuilder builder(lp::Sense::Maximize);
  detail::HoldingColumns vars = detail::add_holding_columns(builder, tree, flags, true);
  std::vector<std::vector<std::pair<int, Rational>>> rows;
  for (int k : states) {
    auto terms = detail::gain_terms(tree, vars, tree.leaf_of_state(k));
    builder.add_constraint(terms, lp::Relation::GreaterEq, 0);
    rows.push_back(std::move(terms));
  }
  // Objective: total terminal gain over the support leaves.
  lp::LinearProgram lp = builder.take();
  for (const auto& row : rows)
    for (const auto& [col, coeff] : row) lp.objective[col] += coeff;

  auto outcome = lp::solve(lp);
  if (outcome.status != lp::Status::Optimal)
    throw std::logic_error("arbitrage search must stay feasible and bounded");
  if (outcome.objective <= 0) return std::nullopt;

  TradingStrategy strategy = detail::extract_strategy(tree, vars, outcome.primal, 0);
  for (int k : states) {
    if (discounted_gain_at(tree, strategy, tree.leaf_of_state(k)) > 0)
      return ArbitrageCertificate{std::move(strategy), k};
  }
  throw std::logic_error("positive optimum without a positive terminal state");
}

std::optional<NoArbitrageCertificate> find_martingale_measure(
    const EventTree& tree, const ShortSaleFlags& flags,
    const std::optional<std::vector<int>>& support) {
  if (flags.banned.size() != tree.num_assets())
    throw DimensionMismatch("flags and tree disagree on the asset count");
  const auto states = effective_support(support, tree.num_states());
  if (states.empty()) throw EmptySupport("every state is polar");
  std::vector<int> column_of_state(tree.num_states(), -1);

  lp::LpBuilder builder(lp::Sense::Maximize);
  int eps = builder.add_variable(1);
  for (std::size_t i = 0; i < states.size(); ++i)
    column_of_state[states[i]] = builder.add_variable(0, Rational(0));

  std::vector<std::pair<int, Rational>> total;
  for (int k : states) total.push_back({column_of_state[k], Rational(1)});
  builder.add_constraint(total, lp::Relation::Equal, 1);
  for (int k : states)
    builder.add_constraint({{column_of_state[k], Rational(1)}, {eps, Rational(-1)}},
                           lp::Relation::GreaterEq, 0);

  for (int node : tree.internal_nodes()) {
    for (std::size_t m = 0; m < tree.num_assets(); ++m) {
      std::vector<std::pair<int, Rational>> row;
      for (int child : tree.node(node).children) {
        const auto& cn = tree.node(child);
        Rational change = tree.discounted_price(child, static_cast<int>(m)) -
                          tree.discounted_price(node, static_cast<int>(m));
        if (change == 0) continue;
        for (int k = cn.state_begin; k < cn.state_end; ++k)
          if (column_of_state[k] >= 0) row.push_back({column_of_state[k], change});
      }
      if (row.empty()) continue;  // vacuous at zero-support nodes
      builder.add_constraint(row, flags.banned[m] ? lp::Relation::LessEq : lp::Relation::Equal,
                             0);
    }
  }

  auto outcome = lp::solve(builder.take());
  if (outcome.status == lp::Status::Infeasible) return std::nullopt;
  if (outcome.status != lp::Status::Optimal)
    throw std::logic_error("measure search cannot be unbounded");
  if (outcome.objective <= 0) return std::nullopt;

  std::vector<Rational> weights(tree.num_states(), Rational(0));
  for (int k : states) weights[k] = outcome.primal[column_of_state[k]];
  return NoArbitrageCertificate{Measure(std::move(weights)), outcome.objective};
}

Certificate decide_arbitrage(const EventTree& tree, const MeasureFamily& actual,
                             const ShortSaleFlags& flags) {
  auto measure = find_martingale_measure(tree, flags, support(actual));
  auto strategy = find_arbitrage_multi(tree, actual, flags);
  if (measure && !strategy) return *measure;
  if (strategy && !measure) return *strategy;
  throw std::logic_error("FTAP dichotomy violated by the searches");
}

}  // namespace mlab
