#include "mlab/market.hpp"

#include <algorithm>
#include <sstream>

#include "mlab/errors.hpp"

namespace mlab {

bool ShortSaleFlags::any() const {
  return std::any_of(banned.begin(), banned.end(), [](bool b) { return b; });
}

bool ShortSaleFlags::all_banned() const {
  return !banned.empty() &&
         std::all_of(banned.begin(), banned.end(), [](bool b) { return b; });
}

Measure::Measure(std::vector<Rational> w) : weights(std::move(w)) {
  if (weights.empty()) throw ValidationError("measure must have at least one state");
  Rational total = 0;
  for (const auto& q : weights) {
    if (q < 0) throw ValidationError("measure weight " + to_string(q) + " is negative");
    total += q;
  }
  if (total != 1)
    throw ValidationError("measure weights sum to " + to_string(total) + ", expected 1");
}

MeasureFamily::MeasureFamily(std::vector<Measure> m) : members(std::move(m)) {
  if (members.empty()) throw ValidationError("measure family must be nonempty");
  for (const auto& member : members)
    if (member.size() != members.front().size())
      throw ValidationError("measure family members disagree on the state count");
}

MeasureFamily MeasureFamily::uniform(std::size_t num_states) {
  std::vector<Rational> w(num_states, Rational(1) / Rational(static_cast<long>(num_states)));
  return MeasureFamily({Measure(std::move(w))});
}

std::vector<int> support(const MeasureFamily& family) {
  std::vector<int> states;
  for (std::size_t k = 0; k < family.num_states(); ++k) {
    for (const auto& member : family.members) {
      if (member[k] > 0) {
        states.push_back(static_cast<int>(k));
        break;
      }
    }
  }
  return states;
}

std::vector<int> all_states(std::size_t num_states) {
  std::vector<int> states(num_states);
  for (std::size_t k = 0; k < num_states; ++k) states[k] = static_cast<int>(k);
  return states;
}

SinglePeriodMarket::SinglePeriodMarket(Rational r, std::vector<Rational> initial,
                                       std::vector<std::vector<Rational>> terminal,
                                       std::vector<std::string> states,
                                       std::vector<std::string> assets)
    : rate(std::move(r)),
      initial_prices(std::move(initial)),
      terminal_prices(std::move(terminal)),
      state_names(std::move(states)),
      asset_names(std::move(assets)) {
  if (rate < 0) throw ValidationError("interest rate must be >= 0");
  if (initial_prices.empty()) throw ValidationError("market needs at least one risky asset");
  if (terminal_prices.empty()) throw ValidationError("market needs at least one state");
  for (const auto& p : initial_prices)
    if (p <= 0) throw ValidationError("initial price " + to_string(p) + " must be > 0");
  for (const auto& row : terminal_prices) {
    if (row.size() != initial_prices.size())
      throw ValidationError("terminal price row has " + std::to_string(row.size()) +
                            " entries, expected " + std::to_string(initial_prices.size()));
    for (const auto& p : row)
      if (p < 0) throw ValidationError("terminal price " + to_string(p) + " is negative");
  }
  if (state_names.empty()) {
    for (std::size_t k = 0; k < terminal_prices.size(); ++k)
      state_names.push_back("w" + std::to_string(k + 1));
  } else if (state_names.size() != terminal_prices.size()) {
    throw ValidationError("state name count does not match the number of states");
  }
  if (asset_names.empty()) {
    for (std::size_t m = 0; m < initial_prices.size(); ++m)
      asset_names.push_back("asset" + std::to_string(m + 1));
  } else if (asset_names.size() != initial_prices.size()) {
    throw ValidationError("asset name count does not match the number of assets");
  }
}

Rational SinglePeriodMarket::discounted_terminal(int state, int asset) const {
  return terminal_prices[state][asset] / discount_factor();
}

Rational SinglePeriodMarket::price_change(int state, int asset) const {
  return discounted_terminal(state, asset) - initial_prices[asset];
}

Rational EventTree::discounted_price(int id, int asset) const {
  return nodes_[id].prices[asset] / bond_[id];
}

std::string EventTree::path(int id) const {
  std::vector<int> hops;
  for (int cur = id; nodes_[cur].parent >= 0; cur = nodes_[cur].parent) {
    const Node& parent = nodes_[nodes_[cur].parent];
    auto it = std::find(parent.children.begin(), parent.children.end(), cur);
    hops.push_back(static_cast<int>(it - parent.children.begin()));
  }
  std::string out;
  for (auto it = hops.rbegin(); it != hops.rend(); ++it) {
    if (!out.empty()) out += '/';
    out += std::to_string(*it);
  }
  return out;
}

int EventTree::node_at_path(const std::string& path) const {
  int cur = root();
  if (path.empty()) return cur;
  std::stringstream stream(path);
  std::string hop;
  while (std::getline(stream, hop, '/')) {
    std::size_t index;
    try {
      index = std::stoul(hop);
    } catch (const std::exception&) {
      throw ValidationError("bad node path '" + path + "'");
    }
    const Node& n = nodes_[cur];
    if (index >= n.children.size())
      throw ValidationError("node path '" + path + "' leaves the tree");
    cur = n.children[index];
  }
  return cur;
}

std::vector<std::string> EventTree::state_names() const {
  std::vector<std::string> names;
  for (std::size_t k = 0; k < leaves_.size(); ++k) {
    const Node& leaf = nodes_[leaves_[k]];
    names.push_back(leaf.name.empty() ? "w" + std::to_string(k + 1) : leaf.name);
  }
  return names;
}

TreeBuilder::TreeBuilder(std::size_t num_assets) {
  if (num_assets == 0) throw ValidationError("tree needs at least one risky asset");
  tree_.num_assets_ = num_assets;
}

int TreeBuilder::add_root(std::vector<Rational> prices, Rational rate, std::string name) {
  if (has_root_) throw ValidationError("tree already has a root");
  has_root_ = true;
  EventTree::Node node;
  node.prices = std::move(prices);
  node.rate = std::move(rate);
  node.name = std::move(name);
  tree_.nodes_.push_back(std::move(node));
  return 0;
}

int TreeBuilder::add_child(int parent, std::vector<Rational> prices, Rational rate,
                           std::string name) {
  if (parent < 0 || parent >= static_cast<int>(tree_.nodes_.size()))
    throw ValidationError("add_child: unknown parent node");
  EventTree::Node node;
  node.parent = parent;
  node.depth = tree_.nodes_[parent].depth + 1;
  node.prices = std::move(prices);
  node.rate = std::move(rate);
  node.name = std::move(name);
  int id = static_cast<int>(tree_.nodes_.size());
  tree_.nodes_.push_back(std::move(node));
  tree_.nodes_[parent].children.push_back(id);
  return id;
}

void TreeBuilder::set_asset_names(std::vector<std::string> names) {
  tree_.asset_names = std::move(names);
}

EventTree TreeBuilder::build() {
  if (!has_root_) throw ValidationError("tree has no root");
  EventTree tree = std::move(tree_);
  has_root_ = false;

  int max_depth = 0;
  for (const auto& node : tree.nodes_) max_depth = std::max(max_depth, node.depth);
  if (max_depth == 0) throw ValidationError("tree must have at least one period");
  tree.depth_ = max_depth;

  for (std::size_t id = 0; id < tree.nodes_.size(); ++id) {
    const auto& node = tree.nodes_[id];
    if (node.prices.size() != tree.num_assets_)
      throw ValidationError("node " + std::to_string(id) + " has " +
                            std::to_string(node.prices.size()) + " prices, expected " +
                            std::to_string(tree.num_assets_));
    if (node.children.empty() && node.depth != max_depth)
      throw ValidationError("leaf at depth " + std::to_string(node.depth) +
                            " but the tree has depth " + std::to_string(max_depth));
    for (const auto& p : node.prices)
      if (p < 0) throw ValidationError("negative price at node " + std::to_string(id));
    if (!node.children.empty() && node.rate < 0)
      throw ValidationError("negative rate at node " + std::to_string(id));
  }
  for (const auto& p : tree.nodes_[0].prices)
    if (p <= 0) throw ValidationError("initial price " + to_string(p) + " must be > 0");

  tree.bond_.assign(tree.nodes_.size(), Rational(1));
  tree.by_depth_.assign(max_depth + 1, {});
  for (std::size_t id = 0; id < tree.nodes_.size(); ++id) {
    const auto& node = tree.nodes_[id];
    if (node.parent >= 0)
      tree.bond_[id] = tree.bond_[node.parent] * (Rational(1) + tree.nodes_[node.parent].rate);
    tree.by_depth_[node.depth].push_back(static_cast<int>(id));
    if (!node.children.empty()) tree.internal_.push_back(static_cast<int>(id));
  }

  // Depth-first walk fixes the terminal state order and the per-node ranges.
  tree.leaves_.clear();
  std::vector<std::pair<int, bool>> stack{{0, false}};
  while (!stack.empty()) {
    auto [id, done] = stack.back();
    stack.pop_back();
    EventTree::Node& node = tree.nodes_[id];
    if (node.children.empty()) {
      node.state_begin = static_cast<int>(tree.leaves_.size());
      node.state_end = node.state_begin + 1;
      tree.leaves_.push_back(id);
      continue;
    }
    if (done) {
      node.state_begin = tree.nodes_[node.children.front()].state_begin;
      node.state_end = tree.nodes_[node.children.back()].state_end;
      continue;
    }
    stack.push_back({id, true});
    for (auto it = node.children.rbegin(); it != node.children.rend(); ++it)
      stack.push_back({*it, false});
  }

  if (tree.asset_names.empty()) {
    for (std::size_t m = 0; m < tree.num_assets_; ++m)
      tree.asset_names.push_back("asset" + std::to_string(m + 1));
  } else if (tree.asset_names.size() != tree.num_assets_) {
    throw ValidationError("asset name count does not match the number of assets");
  }
  return tree;
}

EventTree as_tree(const SinglePeriodMarket& market) {
  TreeBuilder builder(market.num_assets());
  builder.add_root(market.initial_prices, market.rate);
  for (std::size_t k = 0; k < market.num_states(); ++k)
    builder.add_child(0, market.terminal_prices[k], 0, market.state_names[k]);
  builder.set_asset_names(market.asset_names);
  return builder.build();
}

std::vector<Rational> discounted_payoffs(const EventTree& tree, const Claim& claim) {
  if (claim.payoffs.size() != tree.num_states())
    throw DimensionMismatch("claim has " + std::to_string(claim.payoffs.size()) +
                            " payoffs, tree has " + std::to_string(tree.num_states()) +
                            " states");
  std::vector<Rational> discounted(claim.payoffs.size());
  for (std::size_t k = 0; k < claim.payoffs.size(); ++k)
    discounted[k] = claim.payoffs[k] / tree.bond_price(tree.leaf_of_state(static_cast<int>(k)));
  return discounted;
}

std::vector<std::vector<Rational>> discount_prices(const EventTree& tree) {
  std::vector<std::vector<Rational>> out(tree.num_nodes());
  for (std::size_t id = 0; id < tree.num_nodes(); ++id) {
    out[id].reserve(tree.num_assets());
    for (std::size_t m = 0; m < tree.num_assets(); ++m)
      out[id].push_back(tree.discounted_price(static_cast<int>(id), static_cast<int>(m)));
  }
  return out;
}

std::vector<std::vector<Rational>> discount_prices(const SinglePeriodMarket& market) {
  std::vector<std::vector<Rational>> out(market.num_states());
  for (std::size_t k = 0; k < market.num_states(); ++k) {
    out[k].reserve(market.num_assets());
    for (std::size_t m = 0; m < market.num_assets(); ++m)
      out[k].push_back(market.discounted_terminal(static_cast<int>(k), static_cast<int>(m)));
  }
  return out;
}

namespace {

const std::vector<Rational>& holdings_at(const EventTree& tree, const TradingStrategy& strategy,
                                         int node) {
  auto it = strategy.risky_holdings.find(node);
  if (it == strategy.risky_holdings.end())
    throw MissingHoldings("strategy has no holdings at node '" + tree.path(node) + "'");
  if (it->second.size() != tree.num_assets())
    throw DimensionMismatch("holdings at node '" + tree.path(node) + "' have wrong length");
  return it->second;
}

std::vector<int> path_from_root(const EventTree& tree, int node) {
  std::vector<int> path;
  for (int cur = node; cur >= 0; cur = tree.node(cur).parent) path.push_back(cur);
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace

std::map<int, Rational> bond_holdings_on_path(const EventTree& tree,
                                              const TradingStrategy& strategy, int node) {
  std::map<int, Rational> bond_legs;
  Rational value = strategy.initial_wealth;  // V* entering the current node
  const auto path = path_from_root(tree, node);
  for (std::size_t i = 0; i < path.size(); ++i) {
    int id = path[i];
    if (tree.is_leaf(id)) break;
    const auto& h = holdings_at(tree, strategy, id);
    Rational risky = 0;
    for (std::size_t m = 0; m < h.size(); ++m)
      risky += h[m] * tree.discounted_price(id, static_cast<int>(m));
    bond_legs[id] = value - risky;  // self-financing fixes the bond leg
    if (i + 1 < path.size()) {
      int next = path[i + 1];
      value = bond_legs[id];
      for (std::size_t m = 0; m < h.size(); ++m)
        value += h[m] * tree.discounted_price(next, static_cast<int>(m));
    }
  }
  return bond_legs;
}

Rational portfolio_value(const EventTree& tree, const TradingStrategy& strategy, int node) {
  if (node == tree.root()) return strategy.initial_wealth;
  int parent = tree.node(node).parent;
  auto bond_legs = bond_holdings_on_path(tree, strategy, parent);
  const auto& h = holdings_at(tree, strategy, parent);
  Rational value = bond_legs.at(parent);
  for (std::size_t m = 0; m < h.size(); ++m)
    value += h[m] * tree.discounted_price(node, static_cast<int>(m));
  return value;
}

Rational discounted_gain_at(const EventTree& tree, const TradingStrategy& strategy, int node) {
  Rational gain = 0;
  const auto path = path_from_root(tree, node);
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const auto& h = holdings_at(tree, strategy, path[i]);
    for (std::size_t m = 0; m < h.size(); ++m)
      gain += h[m] * (tree.discounted_price(path[i + 1], static_cast<int>(m)) -
                      tree.discounted_price(path[i], static_cast<int>(m)));
  }
  return gain;
}

std::vector<Rational> discounted_gain(const EventTree& tree, const TradingStrategy& strategy,
                                      int t) {
  if (t < 1 || t > tree.depth())
    throw ValidationError("discounted_gain: t must lie in [1, T]");
  std::vector<Rational> gains;
  for (int node : tree.nodes_at_depth(t))
    gains.push_back(discounted_gain_at(tree, strategy, node));
  return gains;
}

}  // namespace mlab
