#pragma once

#include <random>
#include <vector>

#include "mlab/market.hpp"
#include "mlab/oracle.hpp"

// Deterministic random instances at desk scale. Everything stays exact:
// rationals are built from small random integers, never from floats.
namespace testgen {

using mlab::Claim;
using mlab::EventTree;
using mlab::Measure;
using mlab::MeasureFamily;
using mlab::Rational;
using mlab::SinglePeriodMarket;
using mlab::TradingStrategy;
using mlab::TreeBuilder;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  int uniform(int lo, int hi) {  // inclusive
    return std::uniform_int_distribution<int>(lo, hi)(engine_);
  }
  bool chance(int percent) { return uniform(1, 100) <= percent; }

  // Numerator in [lo_num, hi_num], denominator in [1, max_den].
  Rational rational(int lo_num, int hi_num, int max_den) {
    return Rational(uniform(lo_num, hi_num)) / Rational(uniform(1, max_den));
  }

  // A value in (0, 1] with small denominator.
  Rational unit_fraction(int max_den = 8) {
    int den = uniform(2, max_den);
    return Rational(uniform(1, den)) / Rational(den);
  }

 private:
  std::mt19937_64 engine_;
};

inline SinglePeriodMarket random_market(Rng& rng, int max_states = 5, int max_assets = 3) {
  const int num_states = rng.uniform(1, max_states);
  const int num_assets = rng.uniform(1, max_assets);
  Rational rate = rng.chance(50) ? Rational(0) : rng.rational(0, 3, 4);
  std::vector<Rational> initial;
  for (int m = 0; m < num_assets; ++m) initial.push_back(rng.rational(1, 20, 20));
  std::vector<std::vector<Rational>> terminal(num_states);
  for (int k = 0; k < num_states; ++k)
    for (int m = 0; m < num_assets; ++m)
      terminal[k].push_back(rng.chance(5) ? Rational(0) : rng.rational(1, 20, 20));
  return SinglePeriodMarket(rate, std::move(initial), std::move(terminal));
}

inline MeasureFamily random_family(Rng& rng, std::size_t num_states, bool full_support = true) {
  const int num_members = rng.uniform(1, 3);
  std::vector<Measure> members;
  for (int i = 0; i < num_members; ++i) {
    std::vector<Rational> raw(num_states);
    Rational total = 0;
    for (auto& w : raw) {
      w = full_support ? Rational(rng.uniform(1, 9)) : Rational(rng.uniform(0, 9));
      total += w;
    }
    if (total == 0) {
      raw[rng.uniform(0, static_cast<int>(num_states) - 1)] = 1;
      total = 1;
    }
    for (auto& w : raw) w /= total;
    members.push_back(Measure(std::move(raw)));
  }
  return MeasureFamily(std::move(members));
}

enum class TreeKind {
  Free,        // prices unconstrained (arbitrage possible)
  Martingale,  // a strictly positive one-step martingale measure exists
  DriftDown,   // a strictly positive one-step supermartingale measure exists
};

// Uniform-depth tree with depth <= max_depth, branching <= max_branch.
// Discounted prices are generated first (so the measure structure is exact by
// construction) and multiplied up by the bond along each path.
inline EventTree random_tree(Rng& rng, TreeKind kind, int max_depth = 3, int max_branch = 3,
                             int max_assets = 2, bool force_binary = false) {
  const int depth = rng.uniform(1, max_depth);
  const int num_assets = force_binary ? 1 : rng.uniform(1, max_assets);

  struct Pending {
    int id;
    std::vector<Rational> discounted;
    Rational bond;  // bond price at this node
    Rational rate;  // rate over the following period
  };

  TreeBuilder builder(num_assets);
  Pending root;
  root.discounted.resize(num_assets);
  for (int m = 0; m < num_assets; ++m) root.discounted[m] = rng.rational(1, 20, 10);
  root.bond = 1;
  root.rate = rng.chance(60) ? Rational(0) : rng.rational(0, 2, 4);
  root.id = builder.add_root(root.discounted, root.rate);

  std::vector<Pending> frontier{root};
  for (int t = 0; t < depth; ++t) {
    std::vector<Pending> next;
    for (const auto& node : frontier) {
      const int fanout = force_binary ? 2 : rng.uniform(1, max_branch);

      // One-step conditional measure, strictly positive.
      std::vector<Rational> p(fanout);
      Rational mass = 0;
      for (auto& v : p) {
        v = rng.uniform(1, 6);
        mass += v;
      }
      for (auto& v : p) v /= mass;

      std::vector<std::vector<Rational>> factors(fanout, std::vector<Rational>(num_assets));
      for (int m = 0; m < num_assets; ++m) {
        switch (kind) {
          case TreeKind::Free:
            for (int c = 0; c < fanout; ++c)
              factors[c][m] = rng.chance(5) ? Rational(0) : rng.rational(1, 8, 4);
            break;
          case TreeKind::Martingale: {
            // f_c in (0,1) for all but the last child keeps the derived last
            // factor positive: sum_c p_c f_c = 1.
            Rational used = 0;
            for (int c = 0; c + 1 < fanout; ++c) {
              factors[c][m] = force_binary ? Rational(rng.uniform(1, 3)) / 4
                                           : rng.unit_fraction();
              used += p[c] * factors[c][m];
            }
            factors[fanout - 1][m] = (Rational(1) - used) / p[fanout - 1];
            break;
          }
          case TreeKind::DriftDown:
            for (int c = 0; c < fanout; ++c) factors[c][m] = rng.unit_fraction();
            break;
        }
      }

      const Rational child_bond = node.bond * (Rational(1) + node.rate);
      for (int c = 0; c < fanout; ++c) {
        Pending child;
        child.discounted.resize(num_assets);
        std::vector<Rational> raw(num_assets);
        for (int m = 0; m < num_assets; ++m) {
          child.discounted[m] = node.discounted[m] * factors[c][m];
          raw[m] = child.discounted[m] * child_bond;
        }
        child.bond = child_bond;
        child.rate = rng.chance(60) ? Rational(0) : rng.rational(0, 2, 4);
        child.id = builder.add_child(node.id, std::move(raw), child.rate);
        next.push_back(std::move(child));
      }
    }
    frontier = std::move(next);
  }
  return builder.build();
}

// Complete market instance: binary, one asset, distinct child prices, a
// strictly positive martingale measure by construction.
inline EventTree random_complete_binary_tree(Rng& rng, int max_depth = 3) {
  return random_tree(rng, TreeKind::Martingale, max_depth, 2, 1, true);
}

inline Claim random_claim(Rng& rng, std::size_t num_states) {
  std::vector<Rational> payoffs(num_states);
  for (auto& f : payoffs) f = rng.rational(-10, 10, 4);
  return Claim{std::move(payoffs)};
}

inline std::vector<Rational> random_rv(Rng& rng, std::size_t num_states) {
  std::vector<Rational> values(num_states);
  for (auto& v : values) v = rng.rational(-9, 9, 4);
  return values;
}

inline TradingStrategy random_strategy(Rng& rng, const EventTree& tree) {
  TradingStrategy strategy;
  strategy.initial_wealth = rng.rational(-5, 5, 3);
  for (int node : tree.internal_nodes()) {
    std::vector<Rational> h(tree.num_assets());
    for (auto& v : h) v = rng.rational(-4, 4, 3);
    strategy.risky_holdings[node] = std::move(h);
  }
  return strategy;
}

// Simplex cut by a few random rows, each arranged to pass through or around
// the uniform measure so the polytope stays nonempty.
inline mlab::oracle::Polytope random_polytope(Rng& rng, std::size_t num_states) {
  mlab::oracle::Polytope polytope;
  polytope.num_states = num_states;
  const Rational uniform_weight = Rational(1) / Rational(static_cast<long>(num_states));
  const int num_rows = rng.uniform(0, 3);
  for (int i = 0; i < num_rows; ++i) {
    mlab::oracle::Polytope::Row row;
    row.coeffs.resize(num_states);
    Rational at_uniform = 0;
    for (auto& c : row.coeffs) {
      c = rng.rational(-3, 3, 3);
      at_uniform += c * uniform_weight;
    }
    int kind = rng.uniform(0, 2);
    if (kind == 0) {
      row.relation = mlab::lp::Relation::LessEq;
      row.rhs = at_uniform + (rng.chance(50) ? Rational(0) : rng.rational(0, 2, 3));
    } else if (kind == 1) {
      row.relation = mlab::lp::Relation::GreaterEq;
      row.rhs = at_uniform - (rng.chance(50) ? Rational(0) : rng.rational(0, 2, 3));
    } else {
      row.relation = mlab::lp::Relation::Equal;
      row.rhs = at_uniform;
    }
    polytope.rows.push_back(std::move(row));
  }
  return polytope;
}

// Date-measurable rescaling: prices at depth t scale by the cumulative
// product of growth[0..t), rates absorb the growth so the bond scales the
// same way. Discounted quantities are unchanged; claims must scale by the
// terminal factor.
inline EventTree rescale_dates(const EventTree& tree, const std::vector<Rational>& growth) {
  std::vector<Rational> cumulative(tree.depth() + 1, Rational(1));
  for (int t = 1; t <= tree.depth(); ++t) cumulative[t] = cumulative[t - 1] * growth[t - 1];

  TreeBuilder builder(tree.num_assets());
  std::vector<int> remap(tree.num_nodes(), -1);
  for (std::size_t id = 0; id < tree.num_nodes(); ++id) {
    const auto& node = tree.node(static_cast<int>(id));
    std::vector<Rational> prices(tree.num_assets());
    for (std::size_t m = 0; m < tree.num_assets(); ++m)
      prices[m] = node.prices[m] * cumulative[node.depth];
    Rational lifted_rate = node.children.empty()
                               ? Rational(0)
                               : (Rational(1) + node.rate) * growth[node.depth] - 1;
    remap[id] = node.parent < 0 ? builder.add_root(prices, lifted_rate)
                                : builder.add_child(remap[node.parent], prices, lifted_rate);
  }
  return builder.build();
}

inline Rational terminal_rescale_factor(const std::vector<Rational>& growth) {
  Rational factor = 1;
  for (const auto& g : growth) factor *= g;
  return factor;
}

}  // namespace testgen
