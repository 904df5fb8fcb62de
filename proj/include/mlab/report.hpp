#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mlab/model_io.hpp"

namespace mlab {

struct CommandOptions {
  std::string claim;                               // --claim
  std::optional<std::vector<std::string>> banned;  // --banned names, or the single entry "all"
  std::optional<std::string> mode;                 // martingale | supermartingale
  std::string family;                              // --family; per-command default when empty
  bool all_horizons = false;                       // exhaustive (t,u) pairs in check-weak/strong
  std::string certificate_path;                    // verify: path to a JSON report
};

// Exit codes are a stable contract: 0 = positive verdict, 2 = negative
// verdict (arbitrage exists / no measure / condition fails), 1 = error.
struct Report {
  int exit_code = 0;
  std::string verdict;
  nlohmann::json payload;  // machine-readable; rationals as strings
  std::string table;       // aligned human-readable rendering
};

// Executes one CLI command against a parsed model. Commands: check-arbitrage,
// find-measure, check-weak, check-strong, eval-sup, eval-inf, replicate,
// price, superhedge, dual-price, verify. Throws the domain errors; the CLI
// maps them to exit code 1.
Report run(const ModelDocument& model, const std::string& command,
           const CommandOptions& options);

std::vector<std::string> command_names();

}  // namespace mlab
