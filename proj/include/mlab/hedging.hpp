#pragma once

#include <optional>
#include <vector>

#include "mlab/market.hpp"
#include "mlab/rational.hpp"

namespace mlab {

enum class HedgeMode { Replication, Superhedge };

struct HedgeResult {
  Rational price;            // initial investment x
  TradingStrategy strategy;  // holdings; ties broken by minimal sum |h|
  HedgeMode mode;
  std::vector<Rational> slack;  // x + H.S*(T) - f* per state; 0 on support in replication
  // sup E_Q[f*] over the supplied pricing family, when one was given.
  std::optional<Rational> pricing_family_bound;
};

// Solves x + H.S*(T) = f* at every support leaf exactly; nullopt when the
// linear system has no solution (an incomplete market, a first-class outcome,
// not an error). The default actual family is full support. Throws
// UnboundedBelow if the minimal replication cost has no finite minimum (only
// possible in markets that admit arbitrage).
std::optional<HedgeResult> replicate(const EventTree& tree, const Claim& claim,
                                     const std::optional<MeasureFamily>& actual = std::nullopt);

// E_Q[f*] under a certified martingale measure; checked to equal the
// replication cost exactly. Throws NoMeasure when no strictly positive
// martingale measure exists, NotReplicable when the claim cannot be hedged.
Rational hedge_price(const EventTree& tree, const Claim& claim);

// Minimal x with x + H.S*(T) >= f* quasi-surely over self-financing H whose
// banned holdings stay >= 0 at every node. The pricing family only feeds the
// reported lower bound sup E_Q[f*].
HedgeResult superhedge(const EventTree& tree, const Claim& claim, const ShortSaleFlags& flags,
                       const std::optional<MeasureFamily>& actual = std::nullopt,
                       const std::optional<MeasureFamily>& pricing = std::nullopt);

struct DualPriceResult {
  Rational price;
  Measure measure;       // an attaining point of the closed measure polytope
  bool boundary_vertex;  // some support weight of the attaining measure is 0
};

// max E_Q[f*] over the closed polytope of measures with the one-step
// conditions (= unbanned, <= banned) and weights >= 0; equals the superhedge
// price exactly by LP duality. Throws NoMeasure when the polytope is empty.
DualPriceResult dual_superhedge_price(const EventTree& tree, const Claim& claim,
                                      const ShortSaleFlags& flags,
                                      const std::optional<MeasureFamily>& actual = std::nullopt);

// Dynamic-programming cross-check: a small one-step LP per node, leaves carry
// f*. Values only exist on nodes with support states below them; the root
// value equals the superhedge price.
std::vector<std::optional<Rational>> backward_superhedge(
    const EventTree& tree, const Claim& claim, const ShortSaleFlags& flags,
    const std::optional<MeasureFamily>& actual = std::nullopt);

}  // namespace mlab
