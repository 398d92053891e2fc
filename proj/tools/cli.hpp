#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include <json.hpp>

#include "lampwalk/errors.hpp"

namespace lampwalk::cli {

// Everything a run needs. Serialized into every output file, and accepted
// back through --config; flags given on the command line win.
struct ExperimentConfig {
  std::string command;
  std::string check;  // verify only

  std::optional<std::string> family;  // "21" or "12"
  int K = 1;
  double B = 0.0;
  int sign = 1;
  std::optional<double> q;
  std::optional<std::string> table;

  Index n_max = 10000;
  Index n = 1000;
  Index m = 2;
  Index k = 100;
  int i = 1;
  int j = 1;
  Index k_max = 200000;
  std::optional<double> tol;
  bool oracle = false;

  std::uint64_t excursions = 100000;
  std::uint64_t seed = 0;
  std::uint64_t step_cap = 100'000'000;
  Index height_cap = 1'000'000;
  unsigned workers = 1;
  std::uint64_t sequences = 100;

  std::optional<std::string> input;
  std::string column = "prob";
  Index lo = 1024;
  Index hi = 16384;
  std::optional<double> expect;
  bool law = false;

  std::optional<std::string> out;
  std::string format = "csv";

  bool operator==(const ExperimentConfig&) const = default;
};

nlohmann::json to_json(const ExperimentConfig& c);
// Unknown keys are rejected; missing keys keep their defaults.
ExperimentConfig config_from_json(const nlohmann::json& j);

// Exit codes: 0 success (all checks passed), 1 check failed or numerical
// error, 2 usage error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lampwalk::cli
