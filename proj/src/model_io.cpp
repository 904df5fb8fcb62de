#include "mlab/model_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "mlab/errors.hpp"

namespace mlab {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& context, const std::string& message) {
  throw ValidationError(context + ": " + message);
}

Rational get_rational(const json& value, const std::string& context) {
  if (value.is_string()) return parse_rational(value.get<std::string>());
  if (value.is_number_integer()) {
    std::ostringstream text;
    text << value.get<long long>();
    return parse_rational(text.str());
  }
  if (value.is_number_float())
    fail(context, "floating point numbers are not allowed; write rationals as \"p/q\"");
  fail(context, "expected a rational (string \"p/q\" or integer)");
}

std::vector<Rational> get_rational_vector(const json& value, const std::string& context) {
  if (!value.is_array()) fail(context, "expected an array of rationals");
  std::vector<Rational> out;
  for (std::size_t i = 0; i < value.size(); ++i)
    out.push_back(get_rational(value[i], context + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<std::string> get_string_vector(const json& value, const std::string& context) {
  if (!value.is_array()) fail(context, "expected an array of strings");
  std::vector<std::string> out;
  for (const auto& item : value) {
    if (!item.is_string()) fail(context, "expected strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

void check_keys(const json& object, const std::set<std::string>& allowed,
                const std::string& context) {
  for (const auto& [key, unused] : object.items())
    if (!allowed.count(key)) fail(context, "unknown key '" + key + "'");
}

int parse_tree_node(TreeBuilder& builder, const json& node, int parent,
                    const Rational& default_rate, const std::string& context) {
  if (!node.is_object()) fail(context, "expected a node object");
  check_keys(node, {"prices", "rate", "children", "name"}, context);
  if (!node.contains("prices")) fail(context, "node is missing 'prices'");
  auto prices = get_rational_vector(node["prices"], context + ".prices");
  Rational rate = node.contains("rate") ? get_rational(node["rate"], context + ".rate")
                                        : default_rate;
  std::string name = node.contains("name") ? node["name"].get<std::string>() : "";

  int id = parent < 0 ? builder.add_root(std::move(prices), rate, std::move(name))
                      : builder.add_child(parent, std::move(prices), rate, std::move(name));
  if (node.contains("children")) {
    const auto& children = node["children"];
    if (!children.is_array()) fail(context, "'children' must be an array");
    for (std::size_t i = 0; i < children.size(); ++i)
      parse_tree_node(builder, children[i], id, default_rate,
                      context + ".children[" + std::to_string(i) + "]");
  }
  return id;
}

ModelDocument parse_document(const json& doc) {
  if (!doc.is_object()) throw ValidationError("model: top level must be an object");
  check_keys(doc,
             {"type", "states", "assets", "rate", "rates", "prices", "root", "families", "bans",
              "claims"},
             "model");
  if (!doc.contains("type") || !doc["type"].is_string())
    throw ValidationError("model: missing 'type' (\"single\" or \"tree\")");
  const std::string type = doc["type"].get<std::string>();

  ModelDocument model;
  std::vector<std::string> asset_names;
  if (doc.contains("assets")) asset_names = get_string_vector(doc["assets"], "assets");

  if (type == "single") {
    if (!doc.contains("prices") || !doc["prices"].is_object())
      throw ValidationError("single market: missing 'prices' object");
    const auto& prices = doc["prices"];
    check_keys(prices, {"initial", "terminal"}, "prices");
    if (!prices.contains("initial") || !prices.contains("terminal"))
      throw ValidationError("prices: need both 'initial' and 'terminal'");
    auto initial = get_rational_vector(prices["initial"], "prices.initial");
    if (!prices["terminal"].is_array())
      throw ValidationError("prices.terminal: expected an array of per-state rows");
    std::vector<std::vector<Rational>> terminal;
    for (std::size_t k = 0; k < prices["terminal"].size(); ++k)
      terminal.push_back(get_rational_vector(prices["terminal"][k],
                                             "prices.terminal[" + std::to_string(k) + "]"));
    Rational rate = doc.contains("rate") ? get_rational(doc["rate"], "rate") : Rational(0);
    std::vector<std::string> state_names;
    if (doc.contains("states")) state_names = get_string_vector(doc["states"], "states");
    model.market = SinglePeriodMarket(rate, std::move(initial), std::move(terminal),
                                      std::move(state_names), asset_names);
  } else if (type == "tree") {
    if (!doc.contains("root")) throw ValidationError("tree market: missing 'root'");
    Rational default_rate = 0;
    if (doc.contains("rate")) default_rate = get_rational(doc["rate"], "rate");
    if (doc.contains("rates")) default_rate = get_rational(doc["rates"], "rates");
    if (!doc["root"].is_object() || !doc["root"].contains("prices"))
      throw ValidationError("tree market: 'root' must be a node object with prices");
    TreeBuilder builder(doc["root"]["prices"].size());
    parse_tree_node(builder, doc["root"], -1, default_rate, "root");
    if (!asset_names.empty()) builder.set_asset_names(asset_names);
    model.tree = builder.build();
  } else {
    throw ValidationError("model: type must be \"single\" or \"tree\", got \"" + type + "\"");
  }

  const std::size_t num_states = model.num_states();
  const std::size_t num_assets = model.num_assets();

  if (doc.contains("families")) {
    if (!doc["families"].is_object())
      throw ValidationError("families: expected an object of name -> member list");
    for (const auto& [name, members_json] : doc["families"].items()) {
      if (!members_json.is_array() || members_json.empty())
        fail("families." + name, "expected a nonempty array of measures");
      std::vector<Measure> members;
      for (std::size_t i = 0; i < members_json.size(); ++i) {
        const std::string context = "families." + name + "[" + std::to_string(i) + "]";
        auto weights = get_rational_vector(members_json[i], context);
        if (weights.size() != num_states)
          fail(context, "measure has " + std::to_string(weights.size()) + " weights, expected " +
                            std::to_string(num_states));
        try {
          members.push_back(Measure(std::move(weights)));
        } catch (const ValidationError& error) {
          fail(context, error.what());
        }
      }
      model.families.emplace(name, MeasureFamily(std::move(members)));
    }
  }
  if (!model.families.count("actual"))
    model.families.emplace("actual", MeasureFamily::uniform(num_states));

  model.bans = ShortSaleFlags::none(num_assets);
  if (doc.contains("bans")) {
    const auto& bans = doc["bans"];
    if (bans.is_string() && bans.get<std::string>() == "all") {
      model.bans = ShortSaleFlags::all(num_assets);
    } else if (bans.is_array()) {
      const auto& names = model.asset_names();
      for (const auto& item : bans) {
        if (!item.is_string()) fail("bans", "expected asset names or \"all\"");
        auto it = std::find(names.begin(), names.end(), item.get<std::string>());
        if (it == names.end())
          fail("bans", "unknown asset '" + item.get<std::string>() + "'");
        model.bans.banned[it - names.begin()] = true;
      }
    } else {
      fail("bans", "expected an array of asset names or \"all\"");
    }
  }

  if (doc.contains("claims")) {
    if (!doc["claims"].is_object())
      throw ValidationError("claims: expected an object of name -> payoff vector");
    for (const auto& [name, payoffs_json] : doc["claims"].items()) {
      auto payoffs = get_rational_vector(payoffs_json, "claims." + name);
      if (payoffs.size() != num_states)
        fail("claims." + name, "claim has " + std::to_string(payoffs.size()) +
                                   " payoffs, expected " + std::to_string(num_states));
      model.claims.emplace(name, Claim{std::move(payoffs)});
    }
  }
  return model;
}

}  // namespace

std::size_t ModelDocument::num_states() const {
  return market ? market->num_states() : tree->num_states();
}

std::size_t ModelDocument::num_assets() const {
  return market ? market->num_assets() : tree->num_assets();
}

const std::vector<std::string>& ModelDocument::asset_names() const {
  return market ? market->asset_names : tree->asset_names;
}

std::vector<std::string> ModelDocument::state_names() const {
  return market ? market->state_names : tree->state_names();
}

EventTree ModelDocument::tree_view() const { return market ? as_tree(*market) : *tree; }

const MeasureFamily& ModelDocument::family(const std::string& name) const {
  auto it = families.find(name);
  if (it == families.end())
    throw ValidationError("the model defines no family named '" + name + "'");
  return it->second;
}

ModelDocument parse_model_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& error) {
    // Recover line/column from the byte offset for a usable message.
    std::size_t offset = error.byte > 0 ? error.byte - 1 : 0;
    offset = std::min(offset, text.size());
    int line = 1;
    int column = 1;
    for (std::size_t i = 0; i < offset; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError("model is not valid JSON at line " + std::to_string(line) + ", column " +
                         std::to_string(column),
                     line, column);
  }
  return parse_document(doc);
}

ModelDocument parse_model(const std::string& path) {
  std::ifstream stream(path, std::ios::binary);
  if (!stream) throw ParseError("cannot open model file '" + path + "'");
  std::ostringstream buffer;
  buffer << stream.rdbuf();
  return parse_model_text(buffer.str());
}

}  // namespace mlab
