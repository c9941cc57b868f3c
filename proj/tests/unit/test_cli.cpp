#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"

using namespace selberg::cli;

namespace {

const std::string kSpecs = SELBERG_SPEC_DIR;

struct Result {
  int code;
  std::string out, err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "selberg-signs");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("argument parsing", "[cli]") {
  const auto e = parse_args({"exponents", "--theta", "0.5", "--kappa", "0.998"});
  CHECK(e.command == Command::exponents);
  CHECK(e.theta == 0.5);
  CHECK(e.kappa == 0.998);
  CHECK(e.epsilon == 1e-3);

  const auto s = parse_args({"signs", "--spec", kSpecs + "/delta.toml", "--x", "100000"});
  CHECK(s.command == Command::signs);
  CHECK(s.X == 100000u);

  CHECK_THROWS_AS(parse_args({"window", "--x", "10", "--H", "100"}), UsageError);
  CHECK_THROWS_AS(parse_args({"frobnicate"}), UsageError);
  CHECK_THROWS_AS(parse_args({"signs", "--x", "100"}), UsageError);
  CHECK_THROWS_AS(parse_args({"signs", "--spec", "a.toml", "--x", "12abc"}), UsageError);
  CHECK_THROWS_AS(parse_args({"signs", "--spec", "a.toml", "--x", "-5"}), UsageError);
  CHECK_THROWS_AS(parse_args({"exponents"}), UsageError);
  CHECK_THROWS_AS(parse_args({"verify", "lemmas", "--spec", "a.toml"}), UsageError);
  CHECK_THROWS_AS(parse_args({}), UsageError);
}

TEST_CASE("usage errors exit with 2", "[cli]") {
  CHECK(invoke({"window", "--x", "10", "--H", "100"}).code == kExitUsage);
  CHECK(invoke({"signs", "--spec", kSpecs + "/missing.toml", "--x", "10"}).code == kExitIo);
  CHECK(invoke({"sieve", "--spec", kSpecs + "/delta.toml", "--x", "2000000"}).code == kExitUsage);
  CHECK(invoke({"--help"}).code == kExitOk);
}

TEST_CASE("sieve as CSV", "[cli]") {
  const auto r = invoke({"sieve", "--spec", kSpecs + "/zeta.toml", "--x", "1000", "--format", "csv"});
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "m,A");
  int rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    REQUIRE(line == std::to_string(rows) + ",1");
  }
  CHECK(rows == 1000);
}

TEST_CASE("identity verification", "[cli]") {
  const auto r = invoke({"verify", "identities", "--spec", kSpecs + "/zeta.toml", "--trunc", "100000"});
  REQUIRE(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["schema_version"] == 1);
  CHECK(doc["all_pass"] == true);
  CHECK(doc["checks"].size() == 19);
  CHECK(doc["checks"][0]["d"] == 1);
}

TEST_CASE("theorem check", "[cli]") {
  const auto r = invoke({"theorem-check", "--spec", kSpecs + "/delta.toml", "--x", "100000"});
  REQUIRE(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["observed_sign_changes"].get<int>() > 0);
  CHECK(doc.contains("predicted_exponent"));
  CHECK(doc["verdict"] == "pass");

  const auto z = invoke({"theorem-check", "--spec", kSpecs + "/zeta.toml", "--x", "10000"});
  CHECK(z.code == kExitVerificationFailed);
  CHECK(nlohmann::json::parse(z.out)["verdict"] == "fail");
}

TEST_CASE("reports are deterministic and written atomically", "[cli]") {
  const auto dir = std::filesystem::temp_directory_path() / "selberg_cli_test";
  std::filesystem::create_directories(dir);
  const auto path = (dir / "report.json").string();
  const std::vector<std::string> args{"window", "--spec", kSpecs + "/sato_tate.toml", "--x", "2000", "--H", "50",
                                      "--M", "4", "--sweep", "--output", path};
  REQUIRE(invoke(args).code == 0);
  std::ifstream first_in(path);
  const std::string first((std::istreambuf_iterator<char>(first_in)), {});
  REQUIRE(invoke(args).code == 0);
  std::ifstream second_in(path);
  const std::string second((std::istreambuf_iterator<char>(second_in)), {});
  CHECK(first == second);
  CHECK(first.find("\"schema_version\": 1") != std::string::npos);
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    CHECK(entry.path().filename().string().find(".tmp.") == std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST_CASE("other commands produce reports", "[cli]") {
  const auto chi = kSpecs + "/chi4.toml";
  CHECK(invoke({"exponents", "--degree", "4", "--table"}).out.find("sign-change exponent") != std::string::npos);
  const auto e = nlohmann::json::parse(invoke({"exponents", "--theta", "0.3", "--kappa", "1", "--epsilon", "0"}).out);
  CHECK(e["report"]["signchange_exponent"] == 1.0);
  CHECK(invoke({"signs", "--spec", chi, "--x", "20", "--format", "csv"}).out.rfind("position\n", 0) == 0);
  CHECK(invoke({"window", "--spec", chi, "--x", "20", "--H", "10", "--M", "2"}).code == 0);
  const auto m = nlohmann::json::parse(invoke({"moment", "--spec", chi, "--M", "100", "--T", "50"}).out);
  CHECK(m["mvt"]["ratio"].get<double>() > 0.0);
  const auto p = invoke({"profile", "--spec", chi, "--x", "1000", "--M", "10", "--T", "20", "--format", "csv"});
  CHECK(p.out.rfind("t,abs_K\n", 0) == 0);
  const auto pr = nlohmann::json::parse(
      invoke({"perron", "--spec", kSpecs + "/zeta.toml", "--x", "100", "--H", "10", "--M", "3", "--T", "1000"}).out);
  CHECK(pr["perron"]["abs_error"].get<double>() <= 0.5);
  CHECK(invoke({"sieve", "--spec", kSpecs + "/custom_example.toml", "--x", "50"}).code == 0);
}
