#pragma once

#include <optional>
#include <vector>

#include "mlab/arbitrage.hpp"
#include "mlab/expectation.hpp"
#include "mlab/linprog.hpp"
#include "mlab/market.hpp"

namespace mlab::oracle {

// Measure set: the probability simplex intersected with extra linear rows.
// q >= 0 and sum q = 1 are implicit.
struct Polytope {
  std::size_t num_states = 0;
  struct Row {
    std::vector<Rational> coeffs;
    lp::Relation relation;
    Rational rhs;
  };
  std::vector<Row> rows;
};

// All vertices by exhaustive active-set enumeration, exact and deduplicated,
// in lexicographic order of the defining index sets. Deliberately a different
// algorithm from the simplex so the two routes share no bugs. Throws TooLarge
// beyond 12 states.
std::vector<Measure> enumerate_vertices(const Polytope& polytope);

// Extremal expectation over an explicit vertex list; equals the LP extremum
// over the polytope whenever the vertex list is complete.
Rational brute_force_extremum(const std::vector<Measure>& vertices, const RandomVariable& rv,
                              bool maximize);

// Re-derives the measure conditions straight from the tree (= for unbanned
// assets, <= for banned) restricted to the support states; weights outside
// are forced to zero via equality rows.
Polytope measure_polytope(const EventTree& tree, const ShortSaleFlags& flags,
                          const std::optional<std::vector<int>>& support = std::nullopt);
Polytope measure_polytope(const SinglePeriodMarket& market, const ShortSaleFlags& flags,
                          const std::optional<std::vector<int>>& support = std::nullopt);

// Direct substitution check of an arbitrage certificate: zero initial cost,
// nonnegative terminal value on the support with a strict state, ban
// compliance at every internal node, and the self-financing identity
// V*(t) = V*(0) + G*(t) at every node. No LP anywhere. False on any
// violation, including missing holdings.
bool verify_arbitrage(const TradingStrategy& strategy, const EventTree& tree,
                      const MeasureFamily& actual, const ShortSaleFlags& flags);

// Substitution check of a no-arbitrage certificate: weights vanish off the
// support, stay >= epsilon > 0 on it, and satisfy the per-asset conditions.
bool verify_no_arbitrage(const NoArbitrageCertificate& certificate, const EventTree& tree,
                         const ShortSaleFlags& flags, const std::vector<int>& support);

}  // namespace mlab::oracle
