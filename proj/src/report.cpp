#include "mlab/report.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "mlab/arbitrage.hpp"
#include "mlab/errors.hpp"
#include "mlab/expectation.hpp"
#include "mlab/hedging.hpp"
#include "mlab/oracle.hpp"

namespace mlab {

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitNegative = 2;

// ---------------------------------------------------------------- rendering

class Table {
 public:
  void row(const std::string& key, const std::string& value) {
    rows_.push_back({key, value});
  }
  void blank() { rows_.push_back({"", ""}); }

  std::string str() const {
    std::size_t width = 0;
    for (const auto& [k, v] : rows_)
      if (!v.empty()) width = std::max(width, k.size());
    std::ostringstream out;
    for (const auto& [k, v] : rows_) {
      if (k.empty() && v.empty()) {
        out << '\n';
        continue;
      }
      if (v.empty()) {
        out << k << '\n';
        continue;
      }
      out << k << std::string(width - k.size() + 2, ' ') << v << '\n';
    }
    return out.str();
  }

 private:
  std::vector<std::pair<std::string, std::string>> rows_;
};

json rationals_json(const std::vector<Rational>& values) {
  json out = json::array();
  for (const auto& v : values) out.push_back(to_string(v));
  return out;
}

std::vector<Rational> rationals_from_json(const json& value, const std::string& context) {
  if (!value.is_array()) throw ValidationError(context + ": expected an array of rationals");
  std::vector<Rational> out;
  for (const auto& item : value) {
    if (!item.is_string()) throw ValidationError(context + ": rationals must be strings");
    out.push_back(parse_rational(item.get<std::string>()));
  }
  return out;
}

json measure_json(const Measure& measure) { return {{"weights", rationals_json(measure.weights)}}; }

void measure_rows(Table& table, const Measure& measure,
                  const std::vector<std::string>& state_names) {
  for (std::size_t k = 0; k < measure.size(); ++k)
    table.row("  " + state_names[k], to_string(measure[k]));
}

std::map<int, Rational> all_bond_legs(const EventTree& tree, const TradingStrategy& strategy) {
  std::map<int, Rational> legs;
  for (int leaf : tree.leaves()) {
    auto on_path = bond_holdings_on_path(tree, strategy, leaf);
    legs.insert(on_path.begin(), on_path.end());
  }
  return legs;
}

json strategy_json(const EventTree& tree, const TradingStrategy& strategy) {
  json holdings = json::array();
  auto legs = all_bond_legs(tree, strategy);
  for (const auto& [node, h] : strategy.risky_holdings) {
    json entry;
    entry["node"] = tree.path(node);
    entry["assets"] = rationals_json(h);
    entry["bond"] = to_string(legs.at(node));
    holdings.push_back(std::move(entry));
  }
  return {{"initial_wealth", to_string(strategy.initial_wealth)},
          {"holdings", std::move(holdings)}};
}

TradingStrategy strategy_from_json(const EventTree& tree, const json& value) {
  if (!value.is_object() || !value.contains("initial_wealth") || !value.contains("holdings"))
    throw ValidationError("certificate: malformed strategy");
  TradingStrategy strategy;
  strategy.initial_wealth = parse_rational(value["initial_wealth"].get<std::string>());
  for (const auto& entry : value["holdings"]) {
    int node = tree.node_at_path(entry["node"].get<std::string>());
    strategy.risky_holdings[node] = rationals_from_json(entry["assets"], "strategy holdings");
  }
  return strategy;
}

void strategy_rows(Table& table, const EventTree& tree, const TradingStrategy& strategy) {
  table.row("strategy", "");
  table.row("  initial wealth", to_string(strategy.initial_wealth));
  auto legs = all_bond_legs(tree, strategy);
  for (const auto& [node, h] : strategy.risky_holdings) {
    std::string where = node == tree.root() ? "root" : "node " + tree.path(node);
    std::ostringstream line;
    line << "bond " << to_string(legs.at(node));
    for (std::size_t m = 0; m < h.size(); ++m)
      line << ", " << tree.asset_names[m] << " " << to_string(h[m]);
    table.row("  " + where, line.str());
  }
}

// ------------------------------------------------------------- mode helpers

ShortSaleFlags effective_flags(const ModelDocument& model, const CommandOptions& options) {
  if (!options.banned) return model.bans;
  ShortSaleFlags flags = ShortSaleFlags::none(model.num_assets());
  const auto& names = model.asset_names();
  for (const auto& name : *options.banned) {
    if (name == "all") return ShortSaleFlags::all(model.num_assets());
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) throw ValidationError("--banned: unknown asset '" + name + "'");
    flags.banned[it - names.begin()] = true;
  }
  return flags;
}

ShortSaleFlags measure_conditions_flags(const ModelDocument& model,
                                        const CommandOptions& options,
                                        const ShortSaleFlags& flags) {
  if (!options.mode) return flags;
  if (*options.mode == "martingale") return ShortSaleFlags::none(model.num_assets());
  if (*options.mode == "supermartingale") return ShortSaleFlags::all(model.num_assets());
  throw ValidationError("--mode must be martingale or supermartingale");
}

std::string conditions_name(const ShortSaleFlags& flags) {
  if (!flags.any()) return "martingale";
  if (flags.all_banned()) return "supermartingale";
  return "mixed";
}

json banned_names_json(const ModelDocument& model, const ShortSaleFlags& flags) {
  json out = json::array();
  for (std::size_t m = 0; m < flags.banned.size(); ++m)
    if (flags.banned[m]) out.push_back(model.asset_names()[m]);
  return out;
}

const Claim& claim_or_throw(const ModelDocument& model, const CommandOptions& options) {
  if (options.claim.empty()) throw ValidationError("this command needs --claim <name>");
  auto it = model.claims.find(options.claim);
  if (it == model.claims.end())
    throw ValidationError("the model defines no claim named '" + options.claim + "'");
  return it->second;
}

const MeasureFamily& family_or_throw(const ModelDocument& model, const CommandOptions& options,
                                     const std::string& fallback) {
  const std::string name = options.family.empty() ? fallback : options.family;
  auto it = model.families.find(name);
  if (it == model.families.end())
    throw ValidationError("the model defines no family named '" + name +
                          "' (add it or pass --family)");
  return it->second;
}

// ------------------------------------------------------------ the commands

Report check_arbitrage(const ModelDocument& model, const CommandOptions& options) {
  const auto flags = effective_flags(model, options);
  const auto& actual = model.family("actual");
  const auto states = support(actual);
  const EventTree tree = model.tree_view();

  std::optional<NoArbitrageCertificate> measure;
  std::optional<ArbitrageCertificate> arbitrage;
  if (model.is_single()) {
    measure = find_risk_neutral_measure(*model.market, flags, states);
    if (!measure) arbitrage = find_arbitrage_single(*model.market, actual, flags);
  } else {
    measure = find_martingale_measure(*model.tree, flags, states);
    if (!measure) arbitrage = find_arbitrage_multi(*model.tree, actual, flags);
  }

  Report report;
  report.payload["command"] = "check-arbitrage";
  report.payload["conditions"] = conditions_name(flags);
  report.payload["banned"] = banned_names_json(model, flags);
  Table table;
  if (measure) {
    if (!oracle::verify_no_arbitrage(*measure, tree, flags, states))
      throw std::logic_error("no-arbitrage certificate failed oracle verification");
    report.verdict = "NO-ARBITRAGE";
    report.exit_code = kExitOk;
    report.payload["measure"] = measure_json(measure->measure);
    report.payload["epsilon"] = to_string(measure->epsilon);
    table.row("verdict", report.verdict);
    table.row("conditions", conditions_name(flags));
    table.row("epsilon", to_string(measure->epsilon));
    table.row("measure", "");
    measure_rows(table, measure->measure, model.state_names());
  } else {
    if (!arbitrage || !oracle::verify_arbitrage(arbitrage->strategy, tree, actual, flags))
      throw std::logic_error("arbitrage certificate failed oracle verification");
    report.verdict = "ARBITRAGE";
    report.exit_code = kExitNegative;
    report.payload["strategy"] = strategy_json(tree, arbitrage->strategy);
    report.payload["positive_state"] = model.state_names()[arbitrage->positive_state];
    std::vector<Rational> terminal;
    for (int leaf : tree.leaves())
      terminal.push_back(portfolio_value(tree, arbitrage->strategy, leaf));
    report.payload["terminal_values"] = rationals_json(terminal);
    table.row("verdict", report.verdict);
    table.row("conditions", conditions_name(flags));
    table.row("positive state", model.state_names()[arbitrage->positive_state]);
    strategy_rows(table, tree, arbitrage->strategy);
    table.row("terminal V*", "");
    for (std::size_t k = 0; k < terminal.size(); ++k)
      table.row("  " + model.state_names()[k], to_string(terminal[k]));
  }
  report.payload["verdict"] = report.verdict;
  report.payload["exit_code"] = report.exit_code;
  report.table = table.str();
  return report;
}

Report find_measure(const ModelDocument& model, const CommandOptions& options) {
  const auto flags = measure_conditions_flags(model, options, effective_flags(model, options));
  const auto states = support(model.family("actual"));

  std::optional<NoArbitrageCertificate> measure;
  if (model.is_single())
    measure = find_risk_neutral_measure(*model.market, flags, states);
  else
    measure = find_martingale_measure(*model.tree, flags, states);

  Report report;
  report.payload["command"] = "find-measure";
  report.payload["conditions"] = conditions_name(flags);
  report.payload["banned"] = banned_names_json(model, flags);
  Table table;
  table.row("conditions", conditions_name(flags));
  if (measure) {
    report.verdict = "MEASURE";
    report.exit_code = kExitOk;
    report.payload["measure"] = measure_json(measure->measure);
    report.payload["epsilon"] = to_string(measure->epsilon);
    table.row("verdict", report.verdict);
    table.row("epsilon", to_string(measure->epsilon));
    table.row("measure", "");
    measure_rows(table, measure->measure, model.state_names());
  } else {
    report.verdict = "NONE";
    report.exit_code = kExitNegative;
    table.row("verdict", report.verdict);
    table.row("note", "no strictly positive measure satisfies the conditions");
  }
  report.payload["verdict"] = report.verdict;
  report.payload["exit_code"] = report.exit_code;
  report.table = table.str();
  return report;
}

Report check_condition(const ModelDocument& model, const CommandOptions& options, bool strong) {
  const auto& family = family_or_throw(model, options, "pricing");
  const EventTree tree = model.tree_view();
  std::optional<std::vector<HorizonPair>> pairs;
  if (options.all_horizons) pairs = all_horizon_pairs(tree.depth());
  NonlinearCheck check =
      strong ? check_strong(family, tree, pairs) : check_weak(family, tree, pairs);

  Report report;
  report.payload["command"] = strong ? "check-strong" : "check-weak";
  report.payload["family"] = options.family.empty() ? "pricing" : options.family;
  report.payload["all_horizons"] = options.all_horizons;
  report.verdict = check.holds ? "OK" : "FAIL";
  report.exit_code = check.holds ? kExitOk : kExitNegative;
  report.payload["verdict"] = report.verdict;
  json skipped = json::array();
  for (int node : check.skipped_nodes) skipped.push_back(tree.path(node));
  report.payload["skipped_nodes"] = std::move(skipped);

  Table table;
  table.row("condition", strong ? "strong risk neutral" : "weak risk neutral");
  table.row("family", report.payload["family"].get<std::string>());
  table.row("verdict", report.verdict);
  if (check.violation) {
    const auto& v = *check.violation;
    report.payload["violation"] = {{"node", tree.path(v.node)},
                                   {"asset", tree.asset_names[v.asset]},
                                   {"horizon", v.horizon},
                                   {"bound", to_string(v.bound)},
                                   {"price", to_string(v.price)}};
    table.row("violated at", "node '" + tree.path(v.node) + "', asset " +
                                 tree.asset_names[v.asset] + ", horizon " +
                                 std::to_string(v.horizon));
    table.row("conditional value", to_string(v.bound));
    table.row("current price", to_string(v.price));
  }
  if (!check.skipped_nodes.empty())
    table.row("skipped nodes", std::to_string(check.skipped_nodes.size()));
  report.payload["exit_code"] = report.exit_code;
  report.table = table.str();
  return report;
}

Report eval_extremum(const ModelDocument& model, const CommandOptions& options, bool sup) {
  const auto& family = family_or_throw(model, options, "pricing");
  const auto& claim = claim_or_throw(model, options);
  const EventTree tree = model.tree_view();
  const auto targets = discounted_payoffs(tree, claim);
  ExtremalExpectation result =
      sup ? sublinear_expectation(family, targets) : inf_expectation(family, targets);

  Report report;
  report.payload["command"] = sup ? "eval-sup" : "eval-inf";
  report.payload["claim"] = options.claim;
  report.payload["family"] = options.family.empty() ? "pricing" : options.family;
  report.payload["value"] = to_string(result.value);
  report.payload["attained_by_member"] = result.member;
  report.verdict = to_string(result.value);
  report.exit_code = kExitOk;
  report.payload["verdict"] = report.verdict;
  report.payload["exit_code"] = report.exit_code;

  Table table;
  table.row(sup ? "sup E_Q[f*]" : "inf E_Q[f*]", to_string(result.value));
  table.row("claim", options.claim);
  table.row("attained by member", std::to_string(result.member));
  report.table = table.str();
  return report;
}

Report do_replicate(const ModelDocument& model, const CommandOptions& options) {
  const auto& claim = claim_or_throw(model, options);
  const EventTree tree = model.tree_view();
  auto result = replicate(tree, claim, model.family("actual"));

  Report report;
  report.payload["command"] = "replicate";
  report.payload["claim"] = options.claim;
  Table table;
  if (result) {
    report.verdict = "REPLICABLE";
    report.exit_code = kExitOk;
    report.payload["price"] = to_string(result->price);
    report.payload["strategy"] = strategy_json(tree, result->strategy);
    table.row("verdict", report.verdict);
    table.row("price", to_string(result->price));
    strategy_rows(table, tree, result->strategy);
  } else {
    report.verdict = "NOT-REPLICABLE";
    report.exit_code = kExitOk;  // a first-class outcome, not an error
    table.row("verdict", report.verdict);
    table.row("note", "the claim is not attainable; price by superhedge instead");
  }
  report.payload["verdict"] = report.verdict;
  report.payload["exit_code"] = report.exit_code;
  report.table = table.str();
  return report;
}

Report do_price(const ModelDocument& model, const CommandOptions& options) {
  const auto& claim = claim_or_throw(model, options);
  const EventTree tree = model.tree_view();
  Rational price = hedge_price(tree, claim);
  auto measure = find_martingale_measure(tree, ShortSaleFlags::none(tree.num_assets()));

  Report report;
  report.payload["command"] = "price";
  report.payload["claim"] = options.claim;
  report.payload["price"] = to_string(price);
  report.payload["measure"] = measure_json(measure->measure);
  report.verdict = to_string(price);
  report.exit_code = kExitOk;
  report.payload["verdict"] = report.verdict;
  report.payload["exit_code"] = report.exit_code;

  Table table;
  table.row("price", to_string(price));
  table.row("claim", options.claim);
  table.row("measure", "");
  measure_rows(table, measure->measure, model.state_names());
  report.table = table.str();
  return report;
}

Report do_superhedge(const ModelDocument& model, const CommandOptions& options) {
  const auto& claim = claim_or_throw(model, options);
  const auto flags = effective_flags(model, options);
  const EventTree tree = model.tree_view();
  std::optional<MeasureFamily> pricing;
  if (model.families.count("pricing")) pricing = model.family("pricing");

  Report report;
  report.payload["command"] = "superhedge";
  report.payload["claim"] = options.claim;
  report.payload["banned"] = banned_names_json(model, flags);
  Table table;
  try {
    HedgeResult result = superhedge(tree, claim, flags, model.family("actual"), pricing);
    report.verdict = "PRICE";
    report.exit_code = kExitOk;
    report.payload["price"] = to_string(result.price);
    report.payload["strategy"] = strategy_json(tree, result.strategy);
    report.payload["slack"] = rationals_json(result.slack);
    table.row("superhedge price", to_string(result.price));
    table.row("claim", options.claim);
    if (result.pricing_family_bound) {
      report.payload["pricing_family_bound"] = to_string(*result.pricing_family_bound);
      table.row("pricing family bound", to_string(*result.pricing_family_bound));
    }
    strategy_rows(table, tree, result.strategy);
    table.row("slack per state", "");
    for (std::size_t k = 0; k < result.slack.size(); ++k)
      table.row("  " + model.state_names()[k], to_string(result.slack[k]));
  } catch (const UnboundedBelow&) {
    report.verdict = "UNBOUNDED";
    report.exit_code = kExitNegative;
    table.row("verdict", report.verdict);
    table.row("note", "superhedging cost unbounded below; the market admits an arbitrage");
  }
  report.payload["verdict"] = report.verdict;
  report.payload["exit_code"] = report.exit_code;
  report.table = table.str();
  return report;
}

Report do_dual_price(const ModelDocument& model, const CommandOptions& options) {
  const auto& claim = claim_or_throw(model, options);
  const auto flags = effective_flags(model, options);
  const EventTree tree = model.tree_view();

  Report report;
  report.payload["command"] = "dual-price";
  report.payload["claim"] = options.claim;
  report.payload["banned"] = banned_names_json(model, flags);
  Table table;
  try {
    DualPriceResult result = dual_superhedge_price(tree, claim, flags, model.family("actual"));
    report.verdict = "PRICE";
    report.exit_code = kExitOk;
    report.payload["price"] = to_string(result.price);
    report.payload["measure"] = measure_json(result.measure);
    report.payload["boundary_vertex"] = result.boundary_vertex;
    table.row("dual price", to_string(result.price));
    table.row("claim", options.claim);
    table.row("measure", "");
    measure_rows(table, result.measure, model.state_names());
    if (result.boundary_vertex)
      table.row("note", "attained on the boundary: some support state has weight 0");
  } catch (const NoMeasure&) {
    report.verdict = "NO-MEASURE";
    report.exit_code = kExitNegative;
    table.row("verdict", report.verdict);
    table.row("note", "the measure polytope is empty; the market admits an arbitrage");
  }
  report.payload["verdict"] = report.verdict;
  report.payload["exit_code"] = report.exit_code;
  report.table = table.str();
  return report;
}

// ------------------------------------------------------------------ verify

Report do_verify(const ModelDocument& model, const CommandOptions& options) {
  if (options.certificate_path.empty())
    throw ValidationError("verify needs --certificate <report.json>");
  std::ifstream stream(options.certificate_path, std::ios::binary);
  if (!stream)
    throw ParseError("cannot open certificate file '" + options.certificate_path + "'");
  json payload;
  try {
    payload = json::parse(stream);
  } catch (const json::parse_error& error) {
    throw ParseError(std::string("certificate is not valid JSON: ") + error.what());
  }
  if (!payload.contains("command") || !payload.contains("verdict"))
    throw ValidationError("certificate: missing 'command' or 'verdict'");
  const std::string command = payload["command"].get<std::string>();
  const std::string verdict = payload["verdict"].get<std::string>();
  const EventTree tree = model.tree_view();
  const auto& actual = model.family("actual");
  const auto states = support(actual);

  CommandOptions inner;
  if (payload.contains("claim")) inner.claim = payload["claim"].get<std::string>();
  if (payload.contains("family")) inner.family = payload["family"].get<std::string>();
  if (payload.contains("banned")) {
    std::vector<std::string> banned;
    for (const auto& name : payload["banned"]) banned.push_back(name.get<std::string>());
    inner.banned = std::move(banned);
  }
  if (payload.contains("conditions")) {
    const std::string conditions = payload["conditions"].get<std::string>();
    if (conditions != "mixed") inner.mode = conditions;
  }
  if (payload.contains("all_horizons")) inner.all_horizons = payload["all_horizons"].get<bool>();
  const auto flags = measure_conditions_flags(model, inner, effective_flags(model, inner));

  bool verified = false;
  if (command == "check-arbitrage" || command == "find-measure") {
    if (verdict == "NO-ARBITRAGE" || verdict == "MEASURE") {
      NoArbitrageCertificate certificate{
          Measure(rationals_from_json(payload["measure"]["weights"], "certificate measure")),
          parse_rational(payload["epsilon"].get<std::string>())};
      verified = oracle::verify_no_arbitrage(certificate, tree, flags, states);
    } else if (verdict == "ARBITRAGE") {
      TradingStrategy strategy = strategy_from_json(tree, payload["strategy"]);
      verified = oracle::verify_arbitrage(strategy, tree, actual, flags);
    } else if (verdict == "NONE") {
      verified = !find_martingale_measure(tree, flags, states).has_value();
    }
  } else if (command == "check-weak" || command == "check-strong") {
    Report fresh = check_condition(model, inner, command == "check-strong");
    verified = fresh.verdict == verdict;
  } else if (command == "eval-sup" || command == "eval-inf") {
    Report fresh = eval_extremum(model, inner, command == "eval-sup");
    verified = fresh.payload["value"] == payload["value"];
  } else if (command == "replicate") {
    if (verdict == "REPLICABLE") {
      TradingStrategy strategy = strategy_from_json(tree, payload["strategy"]);
      Rational price = parse_rational(payload["price"].get<std::string>());
      const auto targets = discounted_payoffs(tree, claim_or_throw(model, inner));
      verified = strategy.initial_wealth == price;
      for (int k : states)
        verified = verified &&
                   price + discounted_gain_at(tree, strategy, tree.leaf_of_state(k)) ==
                       targets[k];
    } else {
      verified = !replicate(tree, claim_or_throw(model, inner), actual).has_value();
    }
  } else if (command == "price") {
    Rational price = parse_rational(payload["price"].get<std::string>());
    verified = hedge_price(tree, claim_or_throw(model, inner)) == price;
  } else if (command == "superhedge") {
    if (verdict == "PRICE") {
      TradingStrategy strategy = strategy_from_json(tree, payload["strategy"]);
      Rational price = parse_rational(payload["price"].get<std::string>());
      const auto targets = discounted_payoffs(tree, claim_or_throw(model, inner));
      verified = strategy.initial_wealth == price;
      for (int node : tree.internal_nodes()) {
        const auto& h = strategy.risky_holdings.at(node);
        for (std::size_t m = 0; m < h.size(); ++m)
          if (flags.banned[m] && h[m] < 0) verified = false;
      }
      for (int k : states)
        verified = verified &&
                   price + discounted_gain_at(tree, strategy, tree.leaf_of_state(k)) >=
                       targets[k];
      // Optimality via the dual route.
      verified = verified &&
                 dual_superhedge_price(tree, claim_or_throw(model, inner), flags, actual).price ==
                     price;
    } else {
      Report fresh = do_superhedge(model, inner);
      verified = fresh.verdict == verdict;
    }
  } else if (command == "dual-price") {
    if (verdict == "PRICE") {
      Rational price = parse_rational(payload["price"].get<std::string>());
      Measure measure(rationals_from_json(payload["measure"]["weights"], "certificate measure"));
      verified = expectation(measure, discounted_payoffs(tree, claim_or_throw(model, inner))) ==
                 price;
      verified = verified && satisfies_measure_conditions(measure, tree, flags);
      for (std::size_t k = 0; k < measure.size(); ++k)
        if (std::find(states.begin(), states.end(), static_cast<int>(k)) == states.end() &&
            measure[k] != 0)
          verified = false;
      verified = verified &&
                 superhedge(tree, claim_or_throw(model, inner), flags, actual).price == price;
    } else {
      Report fresh = do_dual_price(model, inner);
      verified = fresh.verdict == verdict;
    }
  } else {
    throw ValidationError("verify: unsupported certificate command '" + command + "'");
  }

  Report report;
  report.payload["command"] = "verify";
  report.payload["certificate_command"] = command;
  report.payload["certificate_verdict"] = verdict;
  report.payload["verified"] = verified;
  report.verdict = verified ? verdict : "NOT-VERIFIED";
  if (!verified) {
    report.exit_code = 1;
  } else {
    report.exit_code = payload.contains("exit_code") ? payload["exit_code"].get<int>() : kExitOk;
  }
  report.payload["verdict"] = report.verdict;
  report.payload["exit_code"] = report.exit_code;

  Table table;
  table.row("certificate", command + " / " + verdict);
  table.row("verified", verified ? "yes" : "NO");
  report.table = table.str();
  return report;
}

}  // namespace

std::vector<std::string> command_names() {
  return {"check-arbitrage", "find-measure", "check-weak", "check-strong", "eval-sup",
          "eval-inf",        "replicate",    "price",      "superhedge",   "dual-price",
          "verify"};
}

Report run(const ModelDocument& model, const std::string& command,
           const CommandOptions& options) {
  if (command == "check-arbitrage") return check_arbitrage(model, options);
  if (command == "find-measure") return find_measure(model, options);
  if (command == "check-weak") return check_condition(model, options, false);
  if (command == "check-strong") return check_condition(model, options, true);
  if (command == "eval-sup") return eval_extremum(model, options, true);
  if (command == "eval-inf") return eval_extremum(model, options, false);
  if (command == "replicate") return do_replicate(model, options);
  if (command == "price") return do_price(model, options);
  if (command == "superhedge") return do_superhedge(model, options);
  if (command == "dual-price") return do_dual_price(model, options);
  if (command == "verify") return do_verify(model, options);
  throw ValidationError("unknown command '" + command + "'");
}

}  // namespace mlab
