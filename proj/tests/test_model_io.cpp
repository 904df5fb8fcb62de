#include <doctest.h>

#include <string>

#include "mlab/errors.hpp"
#include "mlab/model_io.hpp"

using namespace mlab;

namespace {
const std::string kFixtures = MLAB_FIXTURE_DIR;
Rational r(int num, int den = 1) { return Rational(num) / den; }
}  // namespace

TEST_CASE("binomial fixture parses to the canonical market") {
  auto model = parse_model(kFixtures + "/binomial.json");
  REQUIRE(model.is_single());
  CHECK(model.market->rate == 0);
  CHECK(model.market->initial_prices == std::vector<Rational>{r(4)});
  CHECK(model.market->terminal_prices[0] == std::vector<Rational>{r(8)});
  CHECK(model.market->terminal_prices[1] == std::vector<Rational>{r(2)});
  CHECK(model.market->state_names == std::vector<std::string>{"up", "down"});
  CHECK(model.claims.at("call").payoffs == std::vector<Rational>{r(4), r(0)});
  CHECK(model.family("actual").members.size() == 1);
  CHECK_FALSE(model.bans.any());
  CHECK(model.tree_view().num_states() == 2);
}

TEST_CASE("tree fixture parses node rates and leaf names") {
  auto model = parse_model(kFixtures + "/rates_tree.json");
  REQUIRE(!model.is_single());
  const auto& tree = *model.tree;
  CHECK(tree.depth() == 2);
  CHECK(tree.num_states() == 4);
  CHECK(tree.bond_price(tree.leaf_of_state(0)) == 2);  // (1+0)(1+1)
  CHECK(tree.bond_price(tree.leaf_of_state(2)) == 1);
  CHECK(tree.discounted_price(tree.leaf_of_state(0), 0) == 18);

  auto named = parse_model(kFixtures + "/two_period_call.json");
  CHECK(named.state_names() == std::vector<std::string>{"uu", "ud", "du", "dd"});
}

TEST_CASE("rationals parse exactly and floats are rejected") {
  auto model = parse_model_text(R"({
    "type": "single",
    "prices": {"initial": ["1/3"], "terminal": [[1], ["2/6"]]},
    "rate": "1/4"
  })");
  CHECK(model.market->initial_prices[0] == r(1, 3));
  CHECK(model.market->terminal_prices[1][0] == r(1, 3));
  CHECK(model.market->rate == r(1, 4));

  CHECK_THROWS_AS(parse_model_text(R"({
    "type": "single",
    "prices": {"initial": [0.25], "terminal": [["1"]]}
  })"),
                  ValidationError);
}

TEST_CASE("defaults: uniform actual family, empty bans") {
  auto model = parse_model(kFixtures + "/binomial_arb.json");
  const auto& actual = model.family("actual");
  REQUIRE(actual.members.size() == 1);
  CHECK(actual.members[0].weights == std::vector<Rational>{r(1, 2), r(1, 2)});
  CHECK_FALSE(model.bans.any());
  CHECK_THROWS_AS(model.family("pricing"), ValidationError);
}

TEST_CASE("bans parse as names or the keyword all") {
  auto named = parse_model(kFixtures + "/banned_short.json");
  CHECK(named.bans.banned == std::vector<bool>{true});

  auto all = parse_model_text(R"({
    "type": "single",
    "assets": ["a", "b"],
    "prices": {"initial": ["1", "1"], "terminal": [["1", "1"]]},
    "bans": "all"
  })");
  CHECK(all.bans.all_banned());

  CHECK_THROWS_AS(parse_model_text(R"({
    "type": "single",
    "assets": ["a"],
    "prices": {"initial": ["1"], "terminal": [["1"]]},
    "bans": ["nope"]
  })"),
                  ValidationError);
}

TEST_CASE("validation errors cite the violated invariant") {
  // State-name count disagrees with the terminal rows.
  CHECK_THROWS_WITH_AS(parse_model_text(R"({
    "type": "single",
    "states": ["a", "b", "c"],
    "prices": {"initial": ["1"], "terminal": [["1"], ["2"]]}
  })"),
                       doctest::Contains("state name count"), ValidationError);

  // Claim length must match the states.
  CHECK_THROWS_WITH_AS(parse_model_text(R"({
    "type": "single",
    "prices": {"initial": ["1"], "terminal": [["1"], ["2"]]},
    "claims": {"c": ["1"]}
  })"),
                       doctest::Contains("expected 2"), ValidationError);

  // Family weights must sum to one.
  CHECK_THROWS_WITH_AS(parse_model_text(R"({
    "type": "single",
    "prices": {"initial": ["1"], "terminal": [["1"], ["2"]]},
    "families": {"actual": [["1/2", "1/3"]]}
  })"),
                       doctest::Contains("sum"), ValidationError);

  // Unknown keys are flagged rather than ignored.
  CHECK_THROWS_WITH_AS(parse_model_text(R"({
    "type": "single",
    "price": {"initial": ["1"], "terminal": [["1"]]}
  })"),
                       doctest::Contains("unknown key"), ValidationError);
}

TEST_CASE("syntax errors carry line and column") {
  try {
    parse_model_text("{\n  \"type\": \"single\",\n  oops\n}");
    FAIL("expected ParseError");
  } catch (const ParseError& error) {
    CHECK(error.line == 3);
    CHECK(error.column > 0);
  }
}
