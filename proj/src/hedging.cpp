#include "mlab/hedging.hpp"

#include "mlab/arbitrage.hpp"
#include "mlab/errors.hpp"
#include "mlab/expectation.hpp"
#include "mlab/linprog.hpp"
#include "portfolio_lp.hpp"

namespace mlab {

namespace {

std::vector<int> support_states(const EventTree& tree,
                                const std::optional<MeasureFamily>& actual) {
  if (!actual) return all_states(tree.num_states());
  if (actual->num_states() != tree.num_states())
    throw DimensionMismatch("family and tree disagree on the state count");
  auto states = support(*actual);
  if (states.empty()) throw EmptySupport("every state is polar");
  return states;
}

// Minimal sum |h| among strategies meeting the hedge rows at the fixed price.
TradingStrategy tie_break_strategy(const EventTree& tree, const ShortSaleFlags& flags,
                                   const std::vector<Rational>& targets,
                                   const std::vector<int>& states, lp::Relation relation,
                                   const Rational& price) {
  lp::LpBuilder builder(lp::Sense::Minimize);
  int x = builder.add_variable(0);
  detail::HoldingColumns vars = detail::add_holding_columns(builder, tree, flags, false);
  std::vector<int> magnitude;
  for (const auto& block : vars.cols)
    for (std::size_t i = 0; i < block.size(); ++i)
      magnitude.push_back(builder.add_variable(1, Rational(0)));

  builder.add_constraint({{x, Rational(1)}}, lp::Relation::Equal, price);
  for (std::size_t i = 0; i < states.size(); ++i) {
    auto terms = detail::gain_terms(tree, vars, tree.leaf_of_state(states[i]));
    terms.push_back({x, Rational(1)});
    builder.add_constraint(terms, relation, targets[states[i]]);
  }
  std::size_t index = 0;
  for (const auto& block : vars.cols) {
    for (int col : block) {
      builder.add_constraint({{magnitude[index], Rational(1)}, {col, Rational(-1)}},
                             lp::Relation::GreaterEq, 0);
      builder.add_constraint({{magnitude[index], Rational(1)}, {col, Rational(1)}},
                             lp::Relation::GreaterEq, 0);
      ++index;
    }
  }

  auto outcome = lp::solve(builder.take());
  if (outcome.status != lp::Status::Optimal)
    throw std::logic_error("tie-break pass must stay feasible and bounded");
  return detail::extract_strategy(tree, vars, outcome.primal, price);
}

std::vector<Rational> hedge_slack(const EventTree& tree, const TradingStrategy& strategy,
                                  const std::vector<Rational>& targets) {
  std::vector<Rational> slack(tree.num_states());
  for (std::size_t k = 0; k < tree.num_states(); ++k)
    slack[k] = strategy.initial_wealth +
               discounted_gain_at(tree, strategy, tree.leaf_of_state(static_cast<int>(k))) -
               targets[k];
  return slack;
}

}  // namespace

std::optional<HedgeResult> replicate(const EventTree& tree, const Claim& claim,
                                     const std::optional<MeasureFamily>& actual) {
  const auto states = support_states(tree, actual);
  const auto targets = discounted_payoffs(tree, claim);

  lp::LpBuilder builder(lp::Sense::Minimize);
  int x = builder.add_variable(1);
  const auto no_bans = ShortSaleFlags::none(tree.num_assets());
  detail::HoldingColumns vars = detail::add_holding_columns(builder, tree, no_bans, false);
  for (int k : states) {
    auto terms = detail::gain_terms(tree, vars, tree.leaf_of_state(k));
    terms.push_back({x, Rational(1)});
    builder.add_constraint(terms, lp::Relation::Equal, targets[k]);
  }

  auto outcome = lp::solve(builder.take());
  if (outcome.status == lp::Status::Infeasible) return std::nullopt;
  if (outcome.status == lp::Status::Unbounded)
    throw UnboundedBelow("replication cost unbounded below; the market admits an arbitrage");

  HedgeResult result;
  result.price = outcome.objective;
  result.mode = HedgeMode::Replication;
  result.strategy =
      tie_break_strategy(tree, no_bans, targets, states, lp::Relation::Equal, result.price);
  result.slack = hedge_slack(tree, result.strategy, targets);
  return result;
}

Rational hedge_price(const EventTree& tree, const Claim& claim) {
  auto certificate = find_martingale_measure(tree, ShortSaleFlags::none(tree.num_assets()));
  if (!certificate)
    throw NoMeasure("no strictly positive martingale measure; the market admits an arbitrage");
  auto replication = replicate(tree, claim);
  if (!replication)
    throw NotReplicable("claim cannot be replicated; price by superhedge instead");
  Rational expected = expectation(certificate->measure, discounted_payoffs(tree, claim));
  if (expected != replication->price)
    throw std::logic_error("hedge price disagrees with the replication cost");
  return expected;
}

HedgeResult superhedge(const EventTree& tree, const Claim& claim, const ShortSaleFlags& flags,
                       const std::optional<MeasureFamily>& actual,
                       const std::optional<MeasureFamily>& pricing) {
  if (flags.banned.size() != tree.num_assets())
    throw DimensionMismatch("flags and tree disagree on the asset count");
  const auto states = support_states(tree, actual);
  const auto targets = discounted_payoffs(tree, claim);

  lp::LpBuilder builder(lp::Sense::Minimize);
  int x = builder.add_variable(1);
  detail::HoldingColumns vars = detail::add_holding_columns(builder, tree, flags, false);
  for (int k : states) {
    auto terms = detail::gain_terms(tree, vars, tree.leaf_of_state(k));
    terms.push_back({x, Rational(1)});
    builder.add_constraint(terms, lp::Relation::GreaterEq, targets[k]);
  }

  auto outcome = lp::solve(builder.take());
  if (outcome.status == lp::Status::Unbounded)
    throw UnboundedBelow("superhedging cost unbounded below; the market admits an arbitrage");
  if (outcome.status != lp::Status::Optimal)
    throw std::logic_error("superhedge program cannot be infeasible");

  HedgeResult result;
  result.price = outcome.objective;
  result.mode = HedgeMode::Superhedge;
  result.strategy =
      tie_break_strategy(tree, flags, targets, states, lp::Relation::GreaterEq, result.price);
  result.slack = hedge_slack(tree, result.strategy, targets);
  if (pricing) {
    if (pricing->num_states() != tree.num_states())
      throw DimensionMismatch("pricing family and tree disagree on the state count");
    result.pricing_family_bound = sublinear_expectation(*pricing, targets).value;
  }
  return result;
}

DualPriceResult dual_superhedge_price(const EventTree& tree, const Claim& claim,
                                      const ShortSaleFlags& flags,
                                      const std::optional<MeasureFamily>& actual) {
  if (flags.banned.size() != tree.num_assets())
    throw DimensionMismatch("flags and tree disagree on the asset count");
  const auto states = support_states(tree, actual);
  const auto targets = discounted_payoffs(tree, claim);

  lp::LpBuilder builder(lp::Sense::Maximize);
  std::vector<int> column_of_state(tree.num_states(), -1);
  for (int k : states) column_of_state[k] = builder.add_variable(targets[k], Rational(0));

  std::vector<std::pair<int, Rational>> total;
  for (int k : states) total.push_back({column_of_state[k], Rational(1)});
  builder.add_constraint(total, lp::Relation::Equal, 1);

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
      if (row.empty()) continue;
      builder.add_constraint(row, flags.banned[m] ? lp::Relation::LessEq : lp::Relation::Equal,
                             0);
    }
  }

  auto outcome = lp::solve(builder.take());
  if (outcome.status == lp::Status::Infeasible)
    throw NoMeasure("the measure polytope is empty; the market admits an arbitrage");
  if (outcome.status != lp::Status::Optimal)
    throw std::logic_error("dual price program cannot be unbounded");

  std::vector<Rational> weights(tree.num_states(), Rational(0));
  bool boundary = false;
  for (int k : states) {
    weights[k] = outcome.primal[column_of_state[k]];
    if (weights[k] == 0) boundary = true;
  }
  return DualPriceResult{outcome.objective, Measure(std::move(weights)), boundary};
}

std::vector<std::optional<Rational>> backward_superhedge(
    const EventTree& tree, const Claim& claim, const ShortSaleFlags& flags,
    const std::optional<MeasureFamily>& actual) {
  if (flags.banned.size() != tree.num_assets())
    throw DimensionMismatch("flags and tree disagree on the asset count");
  const auto states = support_states(tree, actual);
  const auto targets = discounted_payoffs(tree, claim);
  std::vector<bool> in_support(tree.num_states(), false);
  for (int k : states) in_support[k] = true;

  std::vector<std::optional<Rational>> value(tree.num_nodes());
  for (int k : states) value[tree.leaf_of_state(k)] = targets[k];

  for (int t = tree.depth() - 1; t >= 0; --t) {
    for (int node : tree.nodes_at_depth(t)) {
      std::vector<int> priced_children;
      for (int child : tree.node(node).children)
        if (value[child]) priced_children.push_back(child);
      if (priced_children.empty()) continue;  // no support state below

      lp::LpBuilder builder(lp::Sense::Minimize);
      int y = builder.add_variable(1);
      std::vector<int> h(tree.num_assets());
      for (std::size_t m = 0; m < tree.num_assets(); ++m)
        h[m] = builder.add_variable(0, flags.banned[m] ? std::optional<Rational>(0)
                                                       : std::nullopt);
      for (int child : priced_children) {
        std::vector<std::pair<int, Rational>> row{{y, Rational(1)}};
        for (std::size_t m = 0; m < tree.num_assets(); ++m) {
          Rational change = tree.discounted_price(child, static_cast<int>(m)) -
                            tree.discounted_price(node, static_cast<int>(m));
          if (change != 0) row.push_back({h[m], change});
        }
        builder.add_constraint(row, lp::Relation::GreaterEq, *value[child]);
      }
      auto outcome = lp::solve(builder.take());
      if (outcome.status == lp::Status::Unbounded)
        throw UnboundedBelow("one-step superhedge unbounded below at node '" + tree.path(node) +
                             "'");
      if (outcome.status != lp::Status::Optimal)
        throw std::logic_error("one-step superhedge cannot be infeasible");
      value[node] = outcome.objective;
    }
  }
  return value;
}

}  // namespace mlab
