#include "mlab/expectation.hpp"

#include <algorithm>

#include "mlab/errors.hpp"

namespace mlab {

Rational expectation(const Measure& measure, const RandomVariable& rv) {
  if (measure.size() != rv.size())
    throw DimensionMismatch("measure has " + std::to_string(measure.size()) +
                            " states, random variable has " + std::to_string(rv.size()));
  Rational total = 0;
  for (std::size_t k = 0; k < rv.size(); ++k) total += measure[k] * rv[k];
  return total;
}

namespace {

ExtremalExpectation extremum(const MeasureFamily& family, const RandomVariable& rv,
                             bool maximize) {
  ExtremalExpectation best{expectation(family.members.front(), rv), 0};
  for (std::size_t i = 1; i < family.members.size(); ++i) {
    Rational value = expectation(family.members[i], rv);
    if (maximize ? value > best.value : value < best.value) best = {value, i};
  }
  return best;
}

}  // namespace

ExtremalExpectation sublinear_expectation(const MeasureFamily& family, const RandomVariable& rv) {
  return extremum(family, rv, true);
}

ExtremalExpectation inf_expectation(const MeasureFamily& family, const RandomVariable& rv) {
  return extremum(family, rv, false);
}

Rational node_mass(const Measure& measure, const EventTree& tree, int node) {
  const auto& n = tree.node(node);
  Rational mass = 0;
  for (int k = n.state_begin; k < n.state_end; ++k) mass += measure[k];
  return mass;
}

Rational conditional_expectation(const Measure& measure, const EventTree& tree,
                                 const RandomVariable& rv, int node) {
  if (measure.size() != tree.num_states() || rv.size() != tree.num_states())
    throw DimensionMismatch("conditional_expectation: state counts disagree");
  Rational mass = node_mass(measure, tree, node);
  if (mass == 0)
    throw ZeroMassNode("node '" + tree.path(node) + "' carries no mass; conditional undefined");
  const auto& n = tree.node(node);
  Rational total = 0;
  for (int k = n.state_begin; k < n.state_end; ++k) total += measure[k] * rv[k];
  return total / mass;
}

namespace {

// E_Q[S*_m(u) | node] * mass(node); callers divide.
Rational conditional_price_sum(const Measure& measure, const EventTree& tree, int node,
                               int asset, int horizon) {
  const auto& n = tree.node(node);
  Rational total = 0;
  for (int d : tree.nodes_at_depth(horizon)) {
    const auto& dn = tree.node(d);
    if (dn.state_begin < n.state_begin || dn.state_end > n.state_end) continue;
    total += node_mass(measure, tree, d) * tree.discounted_price(d, asset);
  }
  return total;
}

}  // namespace

Rational conditional_price_change(const Measure& measure, const EventTree& tree, int node,
                                  int asset) {
  Rational mass = node_mass(measure, tree, node);
  if (mass == 0)
    throw ZeroMassNode("node '" + tree.path(node) + "' carries no mass; conditional undefined");
  Rational expected = conditional_price_sum(measure, tree, node, asset,
                                            tree.node(node).depth + 1) / mass;
  return expected - tree.discounted_price(node, asset);
}

bool satisfies_measure_conditions(const Measure& measure, const EventTree& tree,
                                  const ShortSaleFlags& flags) {
  if (measure.size() != tree.num_states() || flags.banned.size() != tree.num_assets())
    throw DimensionMismatch("satisfies_measure_conditions: dimensions disagree");
  for (int node : tree.internal_nodes()) {
    if (node_mass(measure, tree, node) == 0) continue;
    for (std::size_t m = 0; m < tree.num_assets(); ++m) {
      Rational change = conditional_price_change(measure, tree, node, static_cast<int>(m));
      if (flags.banned[m] ? change > 0 : change != 0) return false;
    }
  }
  // Spot check of the (0, T) condition; the tower property implies it.
  for (std::size_t m = 0; m < tree.num_assets(); ++m) {
    Rational terminal = 0;
    for (std::size_t k = 0; k < tree.num_states(); ++k)
      terminal +=
          measure[k] * tree.discounted_price(tree.leaf_of_state(static_cast<int>(k)),
                                             static_cast<int>(m));
    Rational change = terminal - tree.discounted_price(tree.root(), static_cast<int>(m));
    if (flags.banned[m] ? change > 0 : change != 0) return false;
  }
  return true;
}

bool is_martingale_measure(const Measure& measure, const EventTree& tree) {
  return satisfies_measure_conditions(measure, tree, ShortSaleFlags::none(tree.num_assets()));
}

bool is_supermartingale_measure(const Measure& measure, const EventTree& tree) {
  return satisfies_measure_conditions(measure, tree, ShortSaleFlags::all(tree.num_assets()));
}

std::vector<HorizonPair> all_horizon_pairs(int depth) {
  std::vector<HorizonPair> pairs;
  for (int t = 0; t < depth; ++t)
    for (int u = t + 1; u <= depth; ++u) pairs.push_back({t, u});
  return pairs;
}

namespace {

std::vector<HorizonPair> default_pairs(int depth) {
  std::vector<HorizonPair> pairs;
  for (int t = 0; t < depth; ++t) pairs.push_back({t, t + 1});
  if (depth > 1) pairs.push_back({0, depth});
  return pairs;
}

NonlinearCheck check_nonlinear(const MeasureFamily& family, const EventTree& tree,
                               const std::optional<std::vector<HorizonPair>>& requested,
                               bool strong) {
  if (family.num_states() != tree.num_states())
    throw DimensionMismatch("family and tree disagree on the state count");
  if (support(family).size() != tree.num_states())
    throw PreconditionFailed("some state has zero weight under every family member");

  NonlinearCheck result;
  const auto pairs = requested ? *requested : default_pairs(tree.depth());
  for (const auto& pair : pairs) {
    if (pair.from < 0 || pair.to <= pair.from || pair.to > tree.depth())
      throw ValidationError("bad horizon pair (" + std::to_string(pair.from) + "," +
                            std::to_string(pair.to) + ")");
    for (int node : tree.nodes_at_depth(pair.from)) {
      for (std::size_t m = 0; m < tree.num_assets(); ++m) {
        std::optional<Rational> bound;
        bool any_mass = false;
        for (const auto& member : family.members) {
          Rational mass = node_mass(member, tree, node);
          if (mass == 0) continue;  // members without mass are skipped per node
          any_mass = true;
          Rational value =
              conditional_price_sum(member, tree, node, static_cast<int>(m), pair.to) / mass;
          if (!bound || (strong ? value > *bound : value < *bound)) bound = value;
        }
        if (!any_mass) {
          if (std::find(result.skipped_nodes.begin(), result.skipped_nodes.end(), node) ==
              result.skipped_nodes.end())
            result.skipped_nodes.push_back(node);
          continue;
        }
        Rational price = tree.discounted_price(node, static_cast<int>(m));
        if (*bound > price) {
          result.holds = false;
          result.violation =
              NonlinearCheck::Violation{node, static_cast<int>(m), pair.to, *bound, price};
          return result;
        }
      }
    }
  }
  return result;
}

}  // namespace

NonlinearCheck check_weak(const MeasureFamily& family, const EventTree& tree,
                          const std::optional<std::vector<HorizonPair>>& pairs) {
  return check_nonlinear(family, tree, pairs, false);
}

NonlinearCheck check_strong(const MeasureFamily& family, const EventTree& tree,
                            const std::optional<std::vector<HorizonPair>>& pairs) {
  return check_nonlinear(family, tree, pairs, true);
}

NonlinearCheck check_weak(const MeasureFamily& family, const SinglePeriodMarket& market) {
  return check_weak(family, as_tree(market));
}

NonlinearCheck check_strong(const MeasureFamily& family, const SinglePeriodMarket& market) {
  return check_strong(family, as_tree(market));
}

}  // namespace mlab
