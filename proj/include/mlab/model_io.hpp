#pragma once

#include <map>
#include <optional>
#include <string>

#include "mlab/market.hpp"

namespace mlab {

// Parsed model file: exactly one of market/tree is set. Families are keyed by
// name; "actual" defaults to the uniform singleton when absent.
struct ModelDocument {
  std::optional<SinglePeriodMarket> market;
  std::optional<EventTree> tree;
  std::map<std::string, MeasureFamily> families;
  ShortSaleFlags bans;  // default: nothing banned
  std::map<std::string, Claim> claims;

  bool is_single() const { return market.has_value(); }
  std::size_t num_states() const;
  std::size_t num_assets() const;
  const std::vector<std::string>& asset_names() const;
  std::vector<std::string> state_names() const;
  // The event-tree view (depth-1 for single-period markets).
  EventTree tree_view() const;

  const MeasureFamily& family(const std::string& name) const;  // ValidationError if absent
};

// Reads and validates a UTF-8 JSON model document. Rationals must be strings
// ("1/3", "7") or integers; floating point numbers are rejected. Throws
// ParseError (with line/column) on bad JSON, ValidationError on a violated
// invariant.
ModelDocument parse_model(const std::string& path);
ModelDocument parse_model_text(const std::string& text);

}  // namespace mlab
