#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "mlab/errors.hpp"
#include "mlab/report.hpp"

namespace {

struct Cli {
  std::string model_path;
  std::string command;
  mlab::CommandOptions options;
  std::string format = "table";
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact no-arbitrage, risk-neutral measure and hedging verdicts for finite-state "
               "markets under model uncertainty"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  Cli cli;
  std::string banned_list;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--model", cli.model_path, "model file (JSON)")->required();
    sub->add_option("--format", cli.format, "table | json")
        ->check(CLI::IsMember({"table", "json"}));
    return sub;
  };
  auto add_banned = [&](CLI::App* sub) {
    sub->add_option("--banned", banned_list,
                    "comma-separated asset names, or 'all' (replaces the model's bans)");
    return sub;
  };
  auto add_claim = [&](CLI::App* sub) {
    sub->add_option("--claim", cli.options.claim, "claim name from the model")->required();
    return sub;
  };
  auto add_family = [&](CLI::App* sub) {
    sub->add_option("--family", cli.options.family, "family name (default: pricing)");
    return sub;
  };

  add_banned(add_common(app.add_subcommand("check-arbitrage",
                                           "decide arbitrage vs. no-arbitrage with certificate")));
  {
    auto* sub = add_banned(add_common(
        app.add_subcommand("find-measure", "search for a strictly positive measure")));
    sub->add_option("--mode", cli.options.mode,
                    "martingale | supermartingale (overrides the bans)")
        ->check(CLI::IsMember({"martingale", "supermartingale"}));
  }
  {
    auto* weak = add_family(add_common(
        app.add_subcommand("check-weak", "weak risk neutral nonlinear expectation condition")));
    weak->add_flag("--all-horizons", cli.options.all_horizons,
                   "check every (t,u) pair instead of one-step plus (0,T)");
    auto* strong = add_family(add_common(app.add_subcommand(
        "check-strong", "strong risk neutral nonlinear expectation condition")));
    strong->add_flag("--all-horizons", cli.options.all_horizons,
                     "check every (t,u) pair instead of one-step plus (0,T)");
  }
  add_family(add_claim(add_common(
      app.add_subcommand("eval-sup", "sublinear expectation sup E_Q[f*] over a family"))));
  add_family(add_claim(
      add_common(app.add_subcommand("eval-inf", "inf E_Q[f*] over a family"))));
  add_claim(add_common(app.add_subcommand("replicate", "exact replication of a claim")));
  add_claim(add_common(
      app.add_subcommand("price", "no-arbitrage hedge price E_Q[f*] of a replicable claim")));
  add_banned(add_claim(add_common(
      app.add_subcommand("superhedge", "minimal superhedging cost and strategy"))));
  add_banned(add_claim(add_common(app.add_subcommand(
      "dual-price", "superhedge price via the measure-polytope dual"))));
  {
    auto* sub = add_common(app.add_subcommand("verify", "re-check a serialized JSON report"));
    sub->add_option("--certificate", cli.options.certificate_path, "report produced with --format json")
        ->required();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  cli.command = app.get_subcommands().front()->get_name();
  if (!banned_list.empty()) {
    std::vector<std::string> banned;
    std::stringstream stream(banned_list);
    std::string name;
    while (std::getline(stream, name, ','))
      if (!name.empty()) banned.push_back(name);
    cli.options.banned = std::move(banned);
  }

  try {
    mlab::ModelDocument model = mlab::parse_model(cli.model_path);
    mlab::Report report = mlab::run(model, cli.command, cli.options);
    if (cli.format == "json")
      std::cout << report.payload.dump(2) << '\n';
    else
      std::cout << report.table;
    return report.exit_code;
  } catch (const mlab::ParseError& error) {
    std::cerr << "error: " << error.what() << '\n';
    return 1;
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << '\n';
    return 1;
  }
}
