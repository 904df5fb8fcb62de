#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "mlab/market.hpp"
#include "mlab/rational.hpp"

namespace mlab {

// Zero-cost strategy with nonnegative terminal value on the support and a
// strictly positive value at positive_state.
struct ArbitrageCertificate {
  TradingStrategy strategy;
  int positive_state;
};

// Strictly positive (on the support) measure under which discounted prices
// are martingales, or supermartingales where flagged. epsilon is the exact
// minimum support weight.
struct NoArbitrageCertificate {
  Measure measure;
  Rational epsilon;
};

using Certificate = std::variant<ArbitrageCertificate, NoArbitrageCertificate>;

// LP search over box-normalized holdings: arbitrage is a cone, so a scaled
// copy of any arbitrage fits in [-1,1]^(M+1) and "optimum > 0" decides
// existence. Banned assets are restricted to [0,1]. nullopt = no arbitrage.
// Throws EmptySupport when every state is polar.
std::optional<ArbitrageCertificate> find_arbitrage_single(const SinglePeriodMarket& market,
                                                          const MeasureFamily& actual,
                                                          const ShortSaleFlags& flags);

// Maximize the minimum weight epsilon over measures satisfying
// E_Q[dS*_m] = 0 (banned assets: <= 0) on the given support states; a
// certificate exists iff the exact optimum is positive. Weights on states
// outside `support` are fixed to zero; default support is every state.
std::optional<NoArbitrageCertificate> find_risk_neutral_measure(
    const SinglePeriodMarket& market, const ShortSaleFlags& flags,
    const std::optional<std::vector<int>>& support = std::nullopt);

// Multi-period search over predictable holdings per internal node; the bond
// leg is self-financed by construction, so V*(T) = G*(T) once V*(0) = 0.
std::optional<ArbitrageCertificate> find_arbitrage_multi(const EventTree& tree,
                                                         const MeasureFamily& actual,
                                                         const ShortSaleFlags& flags);

// One-step conditional conditions per internal node in linearized form:
// sum over children of Q(child subtree) * (S*_m(child) - S*_m(node)), = 0 for
// unbanned assets, <= 0 for banned ones. The tower property covers longer
// horizons.
std::optional<NoArbitrageCertificate> find_martingale_measure(
    const EventTree& tree, const ShortSaleFlags& flags,
    const std::optional<std::vector<int>>& support = std::nullopt);

// FTAP dichotomy: runs the measure search first, falls back to the arbitrage
// search. Exactly one side exists; throws logic_error if the searches ever
// disagree (a solver bug, not an input condition).
Certificate decide_arbitrage(const EventTree& tree, const MeasureFamily& actual,
                             const ShortSaleFlags& flags);

}  // namespace mlab
