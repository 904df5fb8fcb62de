#pragma once

#include <optional>
#include <vector>

#include "mlab/market.hpp"
#include "mlab/rational.hpp"

namespace mlab {

// Payoff-style evaluand: one rational per terminal state.
using RandomVariable = std::vector<Rational>;

// E_P[X] = sum_k P(k) X(k), exact. Throws DimensionMismatch.
Rational expectation(const Measure& measure, const RandomVariable& rv);

struct ExtremalExpectation {
  Rational value;
  std::size_t member;  // index of an attaining family member
};

// sup (resp. inf) of E_Q[X] over the family members.
ExtremalExpectation sublinear_expectation(const MeasureFamily& family, const RandomVariable& rv);
ExtremalExpectation inf_expectation(const MeasureFamily& family, const RandomVariable& rv);

// Conditional mass under a node: sum of leaf weights below it.
Rational node_mass(const Measure& measure, const EventTree& tree, int node);

// E_Q[X | node] over the leaves below the node. Throws ZeroMassNode when the
// node carries no mass.
Rational conditional_expectation(const Measure& measure, const EventTree& tree,
                                 const RandomVariable& rv, int node);

// One-step conditional price change E_Q[S*_m(t+1) - S*_m(t) | node] at an
// internal node of positive mass.
Rational conditional_price_change(const Measure& measure, const EventTree& tree, int node,
                                  int asset);

// Per-asset martingale (=) or supermartingale (<=) conditions, one step ahead
// at every internal node of positive mass, plus the (0,T) spot check. Zero
// mass nodes are skipped.
bool satisfies_measure_conditions(const Measure& measure, const EventTree& tree,
                                  const ShortSaleFlags& flags);
bool is_martingale_measure(const Measure& measure, const EventTree& tree);
bool is_supermartingale_measure(const Measure& measure, const EventTree& tree);

struct HorizonPair {
  int from;  // t
  int to;    // u > t
};

// Every (t, u) with t < u <= T; the exhaustive variant of the default
// one-step-plus-(0,T) policy.
std::vector<HorizonPair> all_horizon_pairs(int depth);

struct NonlinearCheck {
  bool holds = true;
  std::vector<int> skipped_nodes;  // nodes where every member had zero mass
  struct Violation {
    int node;
    int asset;
    int horizon;    // u
    Rational bound;  // the extremal conditional expectation of S*_m(u)
    Rational price;  // S*_m(t) at the node
  };
  std::optional<Violation> violation;

  explicit operator bool() const { return holds; }
};

// Weak condition: for every asset and requested (t, u), at every depth-t
// node,  inf over members with positive node mass of E_Q[S*_m(u)|node]  <=
// S*_m(node). Strong uses sup. Precondition (checked): every state has
// positive weight under some member, else PreconditionFailed. Default pairs:
// one-step for every t plus (0, T); the tower property covers the rest.
NonlinearCheck check_weak(const MeasureFamily& family, const EventTree& tree,
                          const std::optional<std::vector<HorizonPair>>& pairs = std::nullopt);
NonlinearCheck check_strong(const MeasureFamily& family, const EventTree& tree,
                            const std::optional<std::vector<HorizonPair>>& pairs = std::nullopt);

// Single-period forms of Definitions 3-4: the (0,1) case on the implied tree.
NonlinearCheck check_weak(const MeasureFamily& family, const SinglePeriodMarket& market);
NonlinearCheck check_strong(const MeasureFamily& family, const SinglePeriodMarket& market);

}  // namespace mlab
