#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "mlab/linprog.hpp"
#include "mlab/market.hpp"

namespace mlab::detail {

// LP columns for the risky holdings, one block per internal node in id order.
struct HoldingColumns {
  std::vector<int> nodes;
  std::vector<std::vector<int>> cols;  // [index into nodes][asset]

  int column(int node, int asset) const {
    auto it = std::lower_bound(nodes.begin(), nodes.end(), node);
    return cols[static_cast<std::size_t>(it - nodes.begin())][asset];
  }
};

// boxed: holdings in [-1,1] ([0,1] when banned) for cone normalization;
// otherwise free (>= 0 when banned).
inline HoldingColumns add_holding_columns(lp::LpBuilder& builder, const EventTree& tree,
                                          const ShortSaleFlags& flags, bool boxed) {
  HoldingColumns vars;
  vars.nodes = tree.internal_nodes();
  vars.cols.resize(vars.nodes.size());
  for (std::size_t i = 0; i < vars.nodes.size(); ++i) {
    vars.cols[i].resize(tree.num_assets());
    for (std::size_t m = 0; m < tree.num_assets(); ++m) {
      std::optional<Rational> lower;
      std::optional<Rational> upper;
      if (flags.banned[m]) lower = Rational(0);
      if (boxed) {
        if (!lower) lower = Rational(-1);
        upper = Rational(1);
      }
      vars.cols[i][m] = builder.add_variable(0, std::move(lower), std::move(upper));
    }
  }
  return vars;
}

// Sparse terms of G*(leaf) in the holding columns: the coefficient of
// h_m(node) is dS*_m over the edge leaving `node` toward the leaf.
inline std::vector<std::pair<int, Rational>> gain_terms(const EventTree& tree,
                                                        const HoldingColumns& vars, int leaf) {
  std::vector<std::pair<int, Rational>> terms;
  int child = leaf;
  for (int node = tree.node(leaf).parent; node >= 0;
       child = node, node = tree.node(node).parent) {
    for (std::size_t m = 0; m < tree.num_assets(); ++m) {
      Rational change = tree.discounted_price(child, static_cast<int>(m)) -
                        tree.discounted_price(node, static_cast<int>(m));
      if (change != 0) terms.push_back({vars.column(node, static_cast<int>(m)), change});
    }
  }
  return terms;
}

inline TradingStrategy extract_strategy(const EventTree& tree, const HoldingColumns& vars,
                                        const std::vector<Rational>& primal, Rational wealth) {
  TradingStrategy strategy;
  strategy.initial_wealth = std::move(wealth);
  for (std::size_t i = 0; i < vars.nodes.size(); ++i) {
    std::vector<Rational> h(tree.num_assets());
    for (std::size_t m = 0; m < tree.num_assets(); ++m) h[m] = primal[vars.cols[i][m]];
    strategy.risky_holdings[vars.nodes[i]] = std::move(h);
  }
  return strategy;
}

}  // namespace mlab::detail
