#include <doctest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include <json.hpp>

#include "mlab/report.hpp"

using nlohmann::json;

namespace {

const std::string kBin = MLAB_BIN_PATH;
const std::string kFixtures = MLAB_FIXTURE_DIR;

struct Invocation {
  int exit_code;
  std::string output;
};

Invocation invoke(const std::string& args) {
  std::string command = kBin + " " + args + " 2>&1";
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string output;
  std::array<char, 512> buffer;
  while (std::size_t got = fread(buffer.data(), 1, buffer.size(), pipe))
    output.append(buffer.data(), got);
  int status = pclose(pipe);
  return {WEXITSTATUS(status), output};
}

json invoke_json(const std::string& args, int expected_exit) {
  auto result = invoke(args + " --format json");
  CHECK(result.exit_code == expected_exit);
  return json::parse(result.output);
}

}  // namespace

TEST_CASE("check-arbitrage on the binomial fixture certifies no-arbitrage") {
  auto result = invoke("check-arbitrage --model " + kFixtures + "/binomial.json");
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("NO-ARBITRAGE") != std::string::npos);
  CHECK(result.output.find("1/3") != std::string::npos);
  CHECK(result.output.find("2/3") != std::string::npos);

  auto payload = invoke_json("check-arbitrage --model " + kFixtures + "/binomial.json", 0);
  CHECK(payload["verdict"] == "NO-ARBITRAGE");
  CHECK(payload["epsilon"] == "1/3");
  CHECK(payload["measure"]["weights"] == json::array({"1/3", "2/3"}));
}

TEST_CASE("check-arbitrage on a rising market exits 2 with a strategy") {
  auto result = invoke("check-arbitrage --model " + kFixtures + "/binomial_arb.json");
  CHECK(result.exit_code == 2);
  CHECK(result.output.find("ARBITRAGE") != std::string::npos);

  auto payload = invoke_json("check-arbitrage --model " + kFixtures + "/binomial_arb.json", 2);
  CHECK(payload["verdict"] == "ARBITRAGE");
  CHECK(payload["strategy"]["initial_wealth"] == "0");
}

TEST_CASE("superhedge prices the banned fixture at 2") {
  auto payload = invoke_json("superhedge --model " + kFixtures +
                                 "/banned_short.json --claim payoff",
                             0);
  CHECK(payload["price"] == "2");
  CHECK(payload["strategy"]["holdings"][0]["assets"] == json::array({"0"}));
  CHECK(payload["slack"] == json::array({"0", "2"}));
}

TEST_CASE("price reproduces the call fixtures") {
  auto one_period = invoke_json("price --model " + kFixtures + "/binomial.json --claim call", 0);
  CHECK(one_period["price"] == "4/3");
  auto two_period =
      invoke_json("price --model " + kFixtures + "/two_period_call.json --claim call", 0);
  CHECK(two_period["price"] == "4/3");
}

TEST_CASE("find-measure modes and exit codes") {
  auto martingale = invoke_json("find-measure --model " + kFixtures + "/binomial.json", 0);
  CHECK(martingale["verdict"] == "MEASURE");
  CHECK(martingale["conditions"] == "martingale");

  // The banned fixture has no martingale measure but a supermartingale one.
  auto none = invoke("find-measure --model " + kFixtures +
                     "/banned_short.json --mode martingale");
  CHECK(none.exit_code == 2);
  auto super = invoke_json("find-measure --model " + kFixtures +
                               "/banned_short.json --mode supermartingale",
                           0);
  CHECK(super["verdict"] == "MEASURE");
  CHECK(super["epsilon"] == "1/2");
}

TEST_CASE("check-weak and check-strong read the pricing family") {
  auto weak = invoke("check-weak --model " + kFixtures + "/weak_strong.json");
  CHECK(weak.exit_code == 0);
  auto strong = invoke("check-strong --model " + kFixtures + "/weak_strong.json");
  CHECK(strong.exit_code == 2);
  auto certified = invoke("check-strong --model " + kFixtures +
                          "/weak_strong.json --family certified");
  CHECK(certified.exit_code == 0);
}

TEST_CASE("eval-sup and eval-inf report the extremal member") {
  auto sup = invoke_json("eval-sup --model " + kFixtures +
                             "/weak_strong.json --claim call --family pricing",
                         0);
  CHECK(sup["value"] == "18/5");  // (9/10) * 4 under the bullish member
  auto inf = invoke_json("eval-inf --model " + kFixtures +
                             "/weak_strong.json --claim call --family pricing",
                         0);
  CHECK(inf["value"] == "2/5");
}

TEST_CASE("replicate distinguishes attainable and unattainable claims") {
  auto kinked =
      invoke_json("replicate --model " + kFixtures + "/trinomial.json --claim kinked", 0);
  CHECK(kinked["verdict"] == "NOT-REPLICABLE");
  auto affine =
      invoke_json("replicate --model " + kFixtures + "/trinomial.json --claim affine", 0);
  CHECK(affine["verdict"] == "REPLICABLE");
  CHECK(affine["price"] == "2");
}

TEST_CASE("dual-price agrees with superhedge and flags boundary vertices") {
  auto dual = invoke_json("dual-price --model " + kFixtures +
                              "/banned_short.json --claim payoff",
                          0);
  CHECK(dual["price"] == "2");
  CHECK(dual["boundary_vertex"] == true);
  CHECK(dual["measure"]["weights"] == json::array({"1", "0"}));
}

TEST_CASE("--banned replaces the model bans") {
  // The falling market's only arbitrage is a short sale, so banning it flips
  // the verdict; the rising market's arbitrage is a long position and stays.
  auto open_market = invoke("check-arbitrage --model " + kFixtures + "/down_market.json");
  CHECK(open_market.exit_code == 2);
  auto banned = invoke("check-arbitrage --model " + kFixtures +
                       "/down_market.json --banned stock");
  CHECK(banned.exit_code == 0);
  auto all = invoke("check-arbitrage --model " + kFixtures + "/down_market.json --banned all");
  CHECK(all.exit_code == 0);
  auto rising = invoke("check-arbitrage --model " + kFixtures +
                       "/binomial_arb.json --banned stock");
  CHECK(rising.exit_code == 2);
}

TEST_CASE("verify round-trips JSON reports and mirrors the verdict") {
  for (const auto& [args, expected] :
       {std::pair<std::string, int>{"check-arbitrage --model " + kFixtures + "/binomial.json",
                                    0},
        {"check-arbitrage --model " + kFixtures + "/binomial_arb.json", 2},
        {"find-measure --model " + kFixtures + "/banned_short.json --mode martingale", 2},
        {"superhedge --model " + kFixtures + "/banned_short.json --claim payoff", 0},
        {"replicate --model " + kFixtures + "/trinomial.json --claim kinked", 0},
        {"price --model " + kFixtures + "/two_period_call.json --claim call", 0},
        {"dual-price --model " + kFixtures + "/banned_short.json --claim payoff", 0},
        {"check-strong --model " + kFixtures + "/weak_strong.json", 2},
        {"eval-sup --model " + kFixtures + "/weak_strong.json --claim call", 0}}) {
    auto produced = invoke(args + " --format json");
    CHECK(produced.exit_code == expected);
    std::string path = "/tmp/mlab_report.json";
    std::ofstream(path) << produced.output;

    std::string model_flag = args.substr(args.find("--model"));
    model_flag = model_flag.substr(0, model_flag.find(".json") + 5);
    auto verified = invoke("verify " + model_flag + " --certificate " + path + " --format json");
    CAPTURE(args);
    CHECK(verified.exit_code == expected);
    auto payload = json::parse(verified.output);
    CHECK(payload["verified"] == true);
    CHECK(payload["certificate_verdict"] == json::parse(produced.output)["verdict"]);
  }
}

TEST_CASE("verify honors the flags recorded in the report") {
  // A find-measure run with an explicit ban must verify against the same
  // conditions, not the model's (empty) bans.
  auto produced = invoke("find-measure --model " + kFixtures +
                         "/down_market.json --banned stock --format json");
  CHECK(produced.exit_code == 0);
  std::string path = "/tmp/mlab_banned_measure.json";
  std::ofstream(path) << produced.output;
  auto verified = invoke("verify --model " + kFixtures + "/down_market.json --certificate " +
                         path + " --format json");
  CHECK(verified.exit_code == 0);
  CHECK(json::parse(verified.output)["verified"] == true);
}

TEST_CASE("verify rejects a tampered certificate") {
  auto produced = invoke("check-arbitrage --model " + kFixtures +
                         "/binomial.json --format json");
  auto payload = json::parse(produced.output);
  payload["measure"]["weights"] = json::array({"1/2", "1/2"});  // not risk neutral
  std::string path = "/tmp/mlab_tampered.json";
  std::ofstream(path) << payload.dump();
  auto verified =
      invoke("verify --model " + kFixtures + "/binomial.json --certificate " + path);
  CHECK(verified.exit_code == 1);
  CHECK(verified.output.find("NO") != std::string::npos);
}

TEST_CASE("bad usage and bad inputs exit 1") {
  CHECK(invoke("frobnicate --model x.json").exit_code == 1);
  CHECK(invoke("check-arbitrage").exit_code == 1);  // missing --model
  CHECK(invoke("check-arbitrage --model /nonexistent.json").exit_code == 1);
  CHECK(invoke("price --model " + kFixtures + "/binomial.json --claim missing").exit_code == 1);
  CHECK(invoke("price --model " + kFixtures + "/binomial_arb.json --claim call").exit_code == 1);

  std::ofstream("/tmp/mlab_bad.json") << "{ not json";
  auto bad = invoke("check-arbitrage --model /tmp/mlab_bad.json");
  CHECK(bad.exit_code == 1);
  CHECK(bad.output.find("line") != std::string::npos);
}

TEST_CASE("mixed per-asset bans flow through reports and verify") {
  // stock unbanned (equality), gold banned (inequality): the unique
  // max-min measure is (1/4, 1/2, 1/4).
  auto measure = invoke_json("find-measure --model " + kFixtures + "/two_assets.json", 0);
  CHECK(measure["conditions"] == "mixed");
  CHECK(measure["banned"] == json::array({"gold"}));
  CHECK(measure["measure"]["weights"] == json::array({"1/4", "1/2", "1/4"}));
  CHECK(measure["epsilon"] == "1/4");

  std::string path = "/tmp/mlab_mixed.json";
  std::ofstream(path) << measure.dump();
  auto verified = invoke("verify --model " + kFixtures + "/two_assets.json --certificate " +
                         path + " --format json");
  CHECK(verified.exit_code == 0);
  CHECK(json::parse(verified.output)["verified"] == true);

  auto arbitrage = invoke("check-arbitrage --model " + kFixtures + "/two_assets.json");
  CHECK(arbitrage.exit_code == 0);
  CHECK(arbitrage.output.find("mixed") != std::string::npos);
}

TEST_CASE("polar states restrict every verdict to the support") {
  // The middle state carries no weight under the actual family, so the
  // certified measure must vanish there: on {hi, lo} the market is the
  // worked binomial.
  auto payload = invoke_json("check-arbitrage --model " + kFixtures + "/polar.json", 0);
  CHECK(payload["measure"]["weights"] == json::array({"1/3", "0", "2/3"}));
  auto price = invoke_json("superhedge --model " + kFixtures + "/polar.json --claim call", 0);
  CHECK(price["price"] == "4/3");  // the mid-state payoff is quasi-surely void
  auto dual = invoke_json("dual-price --model " + kFixtures + "/polar.json --claim call", 0);
  CHECK(dual["price"] == "4/3");
}

TEST_CASE("superhedge reports the pricing family bound when present") {
  auto payload = invoke_json("superhedge --model " + kFixtures +
                                 "/weak_strong.json --claim call",
                             0);
  REQUIRE(payload.contains("pricing_family_bound"));
  CHECK(payload["pricing_family_bound"] == "18/5");
  // This pricing family is not strong, so the bound may exceed the price.
  CHECK(payload["price"] == "4/3");
}

TEST_CASE("reports are byte-identical across runs") {
  const std::string args =
      "check-arbitrage --model " + kFixtures + "/two_period_call.json --format json";
  auto first = invoke(args);
  auto second = invoke(args);
  CHECK(first.exit_code == second.exit_code);
  CHECK(first.output == second.output);
}

TEST_CASE("the run entry point works in-process too") {
  auto model = mlab::parse_model(kFixtures + "/binomial.json");
  mlab::CommandOptions options;
  auto report = mlab::run(model, "check-arbitrage", options);
  CHECK(report.exit_code == 0);
  CHECK(report.verdict == "NO-ARBITRAGE");
  CHECK(report.payload["epsilon"] == "1/3");
  CHECK(report.table.find("1/3") != std::string::npos);
}
