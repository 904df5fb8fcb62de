#pragma once

#include <map>
#include <string>
#include <vector>

#include "mlab/rational.hpp"

namespace mlab {

// Per-asset short-sale bans. true = holdings of that risky asset must stay
// >= 0 at every node. The bond is never banned.
struct ShortSaleFlags {
  std::vector<bool> banned;

  static ShortSaleFlags none(std::size_t num_assets) { return {std::vector<bool>(num_assets, false)}; }
  static ShortSaleFlags all(std::size_t num_assets) { return {std::vector<bool>(num_assets, true)}; }
  bool any() const;
  bool all_banned() const;
};

// Probability vector over the terminal states: weights >= 0, summing to 1
// exactly. Validated on construction.
struct Measure {
  std::vector<Rational> weights;

  explicit Measure(std::vector<Rational> w);
  std::size_t size() const { return weights.size(); }
  const Rational& operator[](std::size_t k) const { return weights[k]; }
};

// Finite explicit representation of a family of probability measures.
struct MeasureFamily {
  std::vector<Measure> members;

  explicit MeasureFamily(std::vector<Measure> m);
  static MeasureFamily uniform(std::size_t num_states);
  std::size_t num_states() const { return members.front().size(); }
};

// States carrying positive weight under some member, in increasing order.
// The complement is the polar set that quasi-sure conditions ignore.
std::vector<int> support(const MeasureFamily& family);

std::vector<int> all_states(std::size_t num_states);

// One-period market: M risky assets over K terminal states plus the implicit
// bond S_0(0)=1, S_0(1)=1+r.
struct SinglePeriodMarket {
  Rational rate;                                       // r >= 0
  std::vector<Rational> initial_prices;                // length M, each > 0
  std::vector<std::vector<Rational>> terminal_prices;  // K rows of M prices, each >= 0
  std::vector<std::string> state_names;                // length K
  std::vector<std::string> asset_names;                // length M

  SinglePeriodMarket(Rational r, std::vector<Rational> initial,
                     std::vector<std::vector<Rational>> terminal,
                     std::vector<std::string> states = {},
                     std::vector<std::string> assets = {});

  std::size_t num_states() const { return terminal_prices.size(); }
  std::size_t num_assets() const { return initial_prices.size(); }
  Rational discount_factor() const { return Rational(1) + rate; }
  // S*_m(1; state) = S_m(1; state) / (1 + r)
  Rational discounted_terminal(int state, int asset) const;
  // dS*_m per state
  Rational price_change(int state, int asset) const;
};

// Finite rooted event tree of uniform depth T. Node 0 is the root and parents
// precede children in the node array. Leaves in depth-first order define the
// terminal state list; every node knows the contiguous range of states below
// it. The per-period rate lives on the parent node (so it is measurable with
// respect to the information available when the period starts) and the bond
// price at a node is the running product of (1 + rate) along its path.
class EventTree {
 public:
  struct Node {
    int parent = -1;
    std::vector<int> children;
    int depth = 0;
    Rational rate = 0;             // interest over (depth, depth+1]; unused on leaves
    std::vector<Rational> prices;  // M risky prices
    std::string name;
    int state_begin = 0;  // range of terminal state indices below this node
    int state_end = 0;
  };

  int depth() const { return depth_; }                       // T
  std::size_t num_assets() const { return num_assets_; }     // M
  std::size_t num_states() const { return leaves_.size(); }  // K
  std::size_t num_nodes() const { return nodes_.size(); }
  const Node& node(int id) const { return nodes_[id]; }
  int root() const { return 0; }
  bool is_leaf(int id) const { return nodes_[id].children.empty(); }
  const std::vector<int>& leaves() const { return leaves_; }
  const std::vector<int>& nodes_at_depth(int t) const { return by_depth_[t]; }
  const std::vector<int>& internal_nodes() const { return internal_; }
  // Terminal state index of a leaf node.
  int state_of(int leaf_id) const { return nodes_[leaf_id].state_begin; }
  int leaf_of_state(int state) const { return leaves_[state]; }
  Rational bond_price(int id) const { return bond_[id]; }  // S_0 at the node
  Rational discounted_price(int id, int asset) const;      // S*_m = S_m / S_0
  std::string path(int id) const;  // "" for the root, else child indices "0/1/..."
  int node_at_path(const std::string& path) const;

  std::vector<std::string> state_names() const;
  std::vector<std::string> asset_names;

 private:
  friend class TreeBuilder;
  EventTree() = default;

  std::vector<Node> nodes_;
  std::vector<Rational> bond_;
  std::vector<int> leaves_;
  std::vector<std::vector<int>> by_depth_;
  std::vector<int> internal_;
  int depth_ = 0;
  std::size_t num_assets_ = 0;
};

class TreeBuilder {
 public:
  explicit TreeBuilder(std::size_t num_assets);

  int add_root(std::vector<Rational> prices, Rational rate = 0, std::string name = "");
  int add_child(int parent, std::vector<Rational> prices, Rational rate = 0,
                std::string name = "");
  void set_asset_names(std::vector<std::string> names);

  // Validates: uniform leaf depth, positive root prices, nonnegative prices
  // and rates. Throws ValidationError.
  EventTree build();

 private:
  EventTree tree_;
  bool has_root_ = false;
};

// Depth-1 tree carrying the same market.
EventTree as_tree(const SinglePeriodMarket& market);

// Predictable self-financing strategy: risky holdings per internal node for
// the following period; the bond leg is derived, never stored.
struct TradingStrategy {
  Rational initial_wealth;                              // x = V*(0)
  std::map<int, std::vector<Rational>> risky_holdings;  // internal node -> h_1..h_M
};

// Terminal payoff vector over the states.
struct Claim {
  std::vector<Rational> payoffs;
};

// f* = f / S_0(T), per state (the bond price can differ across leaves when
// rates are node-dependent).
std::vector<Rational> discounted_payoffs(const EventTree& tree, const Claim& claim);

// Discounted risky prices S*_m per node (indexed [node][asset]). The implicit
// bond discounts to the constant 1.
std::vector<std::vector<Rational>> discount_prices(const EventTree& tree);
// Terminal rows only, indexed [state][asset].
std::vector<std::vector<Rational>> discount_prices(const SinglePeriodMarket& market);

// Derived bond leg h_0 at every internal node on the path from the root to
// `node` (inclusive of node itself when internal). Self-financing holds by
// construction. Throws MissingHoldings when the strategy lacks a node on the
// path.
std::map<int, Rational> bond_holdings_on_path(const EventTree& tree,
                                              const TradingStrategy& strategy, int node);

// Discounted portfolio value V*(t) at a node; V*(0) = initial wealth.
Rational portfolio_value(const EventTree& tree, const TradingStrategy& strategy, int node);

// Discounted cumulative gain G*(t) per depth-t node, in nodes_at_depth(t)
// order: sum of h_m(u) * dS*_m(u) along each path.
std::vector<Rational> discounted_gain(const EventTree& tree, const TradingStrategy& strategy,
                                      int t);

// G* at a single node.
Rational discounted_gain_at(const EventTree& tree, const TradingStrategy& strategy, int node);

}  // namespace mlab
