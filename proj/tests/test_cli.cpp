#include <doctest.h>

#include <sstream>

#include "cli.hpp"

using namespace lampwalk;
using namespace lampwalk::cli;

namespace {

int run_args(std::vector<const char*> args, std::string* out_text = nullptr) {
  args.insert(args.begin(), "lampwalk");
  std::ostringstream out, err;
  const int code = run(static_cast<int>(args.size()), args.data(), out, err);
  if (out_text) *out_text = out.str();
  return code;
}

}  // namespace

TEST_CASE("ExperimentConfig round-trips through JSON") {
  ExperimentConfig c;
  c.command = "simulate";
  c.family = "12";
  c.K = 3;
  c.B = -1.25;
  c.sign = -1;
  c.q = 0.6;
  c.tol = 1e-7;
  c.seed = 0xFFFFFFFFFFFFFFFFull;
  c.excursions = 123456789;
  c.out = "results";
  c.expect = -1.5;
  c.law = true;
  const auto j = to_json(c);
  CHECK(config_from_json(j) == c);
  CHECK(config_from_json(nlohmann::json::parse(j.dump())) == c);
  CHECK(config_from_json(to_json(ExperimentConfig{})) == ExperimentConfig{});
  CHECK(config_from_json(nlohmann::json::object()) == ExperimentConfig{});
  CHECK_THROWS_AS(config_from_json(nlohmann::json{{"nmax", 3}}), InvalidArgument);
  CHECK_THROWS_AS(config_from_json(nlohmann::json{{"K", "three"}}), InvalidArgument);
}

TEST_CASE("classify subcommand") {
  std::string out;
  CHECK(run_args({"classify", "--family", "21", "--K", "1", "--B", "2", "--sign", "+"}, &out) == 0);
  CHECK(out == "transient\n");
  CHECK(run_args({"classify", "--family", "12", "--K", "2", "--B", "0", "--sign", "-"}, &out) == 0);
  CHECK(out == "null-recurrent\n");
  CHECK(run_args({"classify", "--family", "21", "--K", "1", "--B", "-3", "--sign", "+"}, &out) == 0);
  CHECK(out == "positive-recurrent\n");
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run_args({"dist", "--K", "1"}) == 2);
  CHECK(run_args({"dist", "--family", "13"}) == 2);
  CHECK(run_args({"verify", "nonsense"}) == 2);
  CHECK(run_args({"classify", "--family", "21", "--sign", "x"}) == 2);
  CHECK(run_args({}) == 2);
}

TEST_CASE("dist output carries the resolved config") {
  std::string out;
  REQUIRE(run_args({"dist", "--family", "21", "--q", "0.5", "--n-max", "3", "--format", "json"}, &out) == 0);
  const auto doc = nlohmann::json::parse(out);
  CHECK(doc["format_version"] == 1);
  CHECK(doc["meta"]["q"] == 0.5);
  CHECK(doc["meta"]["n_max"] == 3);
  CHECK(doc["entries"][0]["prob"] == 0.5);
  CHECK(doc["entries"][1]["prob"] == 0.25);
}

TEST_CASE("verify exit codes follow the check") {
  CHECK(run_args({"verify", "dfr", "--K", "2", "--B", "0", "--n", "1000000"}) == 0);
  CHECK(run_args({"verify", "dfr", "--K", "1", "--B", "0", "--n", "1000000"}) == 1);
  CHECK(run_args({"verify", "hitting-ratio", "--K", "1", "--B", "0.5", "--sign", "+", "--n", "5000"}) == 0);
}
