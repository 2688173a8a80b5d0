#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli_runner.hpp"
#include "doctest.h"
#include "mhdvac/scenario.hpp"

using namespace mhdvac;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("mhdvac_cli_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

void write(const fs::path& p, const std::string& s) { std::ofstream(p) << s; }

std::string read(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

const char* kSmall = R"({"kind":"simulate","physics":{"sigmaTension":0.1},"ring":{"preset":"trivial"},
  "grid":{"nx1":16,"nx2":8,"nx3":4},"solver":{"tEnd_time":0.2}})";

}  // namespace

TEST_CASE("config parsing rejects unknown keys and bad types") {
  CHECK_NOTHROW(ScenarioConfig::parse("{}"));
  try {
    ScenarioConfig::parse(R"({"physics":{"epsilonn":0.1}})");
    FAIL("unknown key accepted");
  } catch (const UsageError& e) {
    CHECK(std::string(e.what()).find("physics.epsilonn") != std::string::npos);
  }
  CHECK_THROWS_AS(ScenarioConfig::parse(R"({"grid":{"nx1":"many"}})"), UsageError);
  CHECK_THROWS_AS(ScenarioConfig::parse("{not json"), UsageError);
}

TEST_CASE("validation of physical parameters") {
  ScenarioConfig c = ScenarioConfig::parse(R"({"physics":{"epsilon":0.0}})");
  CHECK_THROWS_AS(c.validate(), UsageError);
  c = ScenarioConfig::parse(R"({"physics":{"sigmaTension":-1.0}})");
  CHECK_THROWS(c.validate());
  c = ScenarioConfig::parse(R"({"grid":{"nx1":4}})");
  CHECK_THROWS(c.validate());
  c = ScenarioConfig::parse(R"({"kind":"nonsense"})");
  CHECK_THROWS_AS(c.validate(), UsageError);
}

TEST_CASE("serialized config round-trips with defaults filled in") {
  const ScenarioConfig c = ScenarioConfig::parse(kSmall);
  const std::string text = c.to_json();
  CHECK(text.find("\"epsilon\"") != std::string::npos);
  CHECK(text.find("\"cfl\"") != std::string::npos);
  const ScenarioConfig d = ScenarioConfig::parse(text);
  CHECK(d.to_json() == text);
  CHECK(d.grid.nx1 == 16);
  CHECK(d.physics.sigmaTension == 0.1);
}

TEST_CASE("zero epsilon exits with a validation error") {
  const fs::path dir = scratch("eps");
  write(dir / "c.json", R"({"physics":{"epsilon":0.0}})");
  const int rc = cli::run_cli({"simulate", "--config", (dir / "c.json").string(), "--out", (dir / "o").string()});
  CHECK(rc == cli::kValidation);
  const std::string err = read(dir / "o" / "error.json");
  CHECK(err.find("epsilon must be positive") != std::string::npos);
  CHECK(cli::run_cli({"simulate", "--config", (dir / "missing.json").string()}) == cli::kValidation);
  CHECK(cli::run_cli({"simulate"}) == cli::kValidation);
  CHECK(cli::run_cli({"bogus", "--config", "x"}) == cli::kValidation);
}

TEST_CASE("verify writes reproducible artifacts") {
  const fs::path dir = scratch("verify");
  write(dir / "c.json", kSmall);
  const std::string cfg = (dir / "c.json").string();
  REQUIRE(cli::run_cli({"verify", "--config", cfg, "--out", (dir / "a").string()}) == cli::kOk);
  REQUIRE(cli::run_cli({"verify", "--config", cfg, "--out", (dir / "b").string()}) == cli::kOk);
  for (const char* f : {"run.json", "series.csv", "estimate.json", "fields.json", "fields.bin"})
    CHECK(fs::exists(dir / "a" / f));
  const std::string series = read(dir / "a" / "series.csv");
  CHECK(series.rfind("t,I,Itan1,Ivac,surfTerm,ratio54,", 0) == 0);
  CHECK(series == read(dir / "b" / "series.csv"));
  CHECK(read(dir / "a" / "fields.bin") == read(dir / "b" / "fields.bin"));
  CHECK(read(dir / "a" / "run.json").find("\"verify-54\"") != std::string::npos);
  CHECK(fs::file_size(dir / "a" / "fields.bin") == (17 * 8 * 4) * 14 * 8 + 8 * 4 * 8);
}

TEST_CASE("mode scan honours the tension override") {
  const fs::path dir = scratch("scan");
  write(dir / "c.json", R"({"kind":"mode-scan","ring":{"preset":"bigE"},"physics":{"epsilon":0.1},
    "modeScan":{"kMin_per_length":1,"kMax_per_length":8,"count":4,"n1":16}})");
  REQUIRE(cli::run_cli({"mode-scan", "--config", (dir / "c.json").string(), "--out", (dir / "o").string(), "--s",
                        "0.05"}) == cli::kOk);
  std::istringstream is(read(dir / "o" / "growth.csv"));
  std::string line;
  std::getline(is, line);
  CHECK(line == "k,growthRate,sTension");
  int rows = 0;
  while (std::getline(is, line)) {
    ++rows;
    CHECK(line.substr(line.rfind(',') + 1) == "0.050000000000000003");
  }
  CHECK(rows == 4);
}

TEST_CASE("matrix audit writes its report") {
  const fs::path dir = scratch("audit");
  write(dir / "c.json", R"({"kind":"matrix-audit","audit":{"states":50}})");
  REQUIRE(cli::run_cli({"matrix-audit", "--config", (dir / "c.json").string(), "--out", (dir / "o").string()}) ==
          cli::kOk);
  CHECK(read(dir / "o" / "audit.json").find("\"allSymmetric\": true") != std::string::npos);
  CHECK(fs::exists(dir / "o" / "boundary_spectrum.csv"));
}
