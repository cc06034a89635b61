#include <doctest.h>

#include <cstdlib>
#include <filesystem>

#include <json.hpp>

#include "model/codebook.hpp"
#include "orchestrator/config.hpp"
#include "orchestrator/orchestrator.hpp"
#include "reducer/reducer.hpp"
#include "support/tmpdir.hpp"
#include "util/csv.hpp"
#include "util/errors.hpp"
#include "util/jsonx.hpp"
#include "util/strings.hpp"

using namespace codesat;
namespace fs = std::filesystem;

#ifndef CODESAT_FIXTURES_DIR
#error "CODESAT_FIXTURES_DIR must be defined for the unit tests"
#endif
static const std::string kFixtures = CODESAT_FIXTURES_DIR;

TEST_CASE("config loads with env interpolation and path resolution") {
  testing::TmpDir tmp("cfg");
  setenv("CODESAT_TEST_MODEL", "some-model", 1);
  util::write_file(tmp.str("config.json"), R"({
    "corpus": {"manifest": "corpus/manifest.csv"},
    "gateway": {"backend": "http", "model_id": "${CODESAT_TEST_MODEL}", "temperature": 0.5},
    "sequences": ["identity", "reverse", {"name": "custom", "order": [2, 1, 3]}],
    "iterations": 3,
    "seed": 9,
    "output_dir": "runs"
  })");
  auto config = orch::load_config(tmp.str("config.json"));
  CHECK(config.gateway.model_id == "some-model");
  CHECK(config.gateway.temperature == 0.5);
  CHECK(config.iterations == 3);
  CHECK(config.sequences.size() == 3);
  CHECK(config.sequences[2].order == std::vector<int>{2, 1, 3});
  CHECK(orch::resolve_path(config, "corpus/manifest.csv") ==
        (fs::path(tmp.str()) / "corpus/manifest.csv").lexically_normal().string());

  SUBCASE("missing env var is a config error") {
    util::write_file(tmp.str("bad.json"), R"({"gateway": {"api_key_env": "${CODESAT_NO_SUCH}"}})");
    CHECK_THROWS_AS(orch::load_config(tmp.str("bad.json")), ConfigError);
  }
  SUBCASE("bad values are config errors") {
    util::write_file(tmp.str("bad2.json"), R"({"iterations": 0})");
    CHECK_THROWS_AS(orch::load_config(tmp.str("bad2.json")), ConfigError);
    util::write_file(tmp.str("bad3.json"), R"({"gateway": {"temperature": -1}})");
    CHECK_THROWS_AS(orch::load_config(tmp.str("bad3.json")), ConfigError);
    util::write_file(tmp.str("bad4.json"), R"({"sequences": []})");
    CHECK_THROWS_AS(orch::load_config(tmp.str("bad4.json")), ConfigError);
    util::write_file(tmp.str("bad5.json"), R"({"sequences": ["mystery"]})");
    CHECK_THROWS_AS(orch::load_config(tmp.str("bad5.json")), ConfigError);
  }
}

TEST_CASE("cell layout is a pure function of names") {
  CHECK(orch::cell_dir("/out", "identity", 3) == "/out/identity/3");
}

TEST_CASE("sequences json lists the built-ins") {
  auto j = nlohmann::json::parse(orch::cmd_sequences_json(12));
  REQUIRE(j.size() == 4);
  CHECK(j[2]["name"] == "constantinou-s3");
  CHECK(j[2]["order"] == nlohmann::json({6, 10, 9, 4, 12, 11, 7, 8, 1, 2, 3, 5}));
  CHECK(j[3]["order"] == nlohmann::json({4, 2, 1, 11, 10, 7, 12, 9, 6, 3, 5, 8}));
  CHECK(nlohmann::json::parse(orch::cmd_sequences_json(5)).size() == 2);
}

namespace {
orch::RunConfig e2e_config(const std::string& name, const std::string& out_dir) {
  auto config = orch::load_config(kFixtures + "/e2e/" + name);
  config.output_dir = out_dir;
  return config;
}
}  // namespace

TEST_CASE("cmd_code skips completed cells unless forced") {
  testing::TmpDir tmp("cells");
  auto config = e2e_config("config_compiled.json", tmp.str());

  auto first = orch::cmd_code(config, false);
  auto parsed = nlohmann::json::parse(first.summary_json);
  CHECK(parsed["cells"][0]["total_codes"] == 175);
  CHECK(fs::exists(tmp.path() / "identity/1/manifest.json"));
  CHECK(fs::exists(tmp.path() / "identity/1/codes/iv12.csv"));

  auto second = orch::cmd_code(config, false);
  CHECK(nlohmann::json::parse(second.summary_json)["cells"][0]["skipped"] == true);

  auto forced = orch::cmd_code(config, true);
  CHECK(nlohmann::json::parse(forced.summary_json)["cells"][0]["total_codes"] == 175);
}

TEST_CASE("cmd_reduce produces audited artifacts and a report") {
  testing::TmpDir tmp("reduce");
  auto config = e2e_config("config_compiled.json", tmp.str());
  orch::cmd_code(config, false);

  std::string cell = orch::cell_dir(tmp.str(), "identity", 1);
  auto result = orch::cmd_reduce(config, cell, false);
  auto parsed = nlohmann::json::parse(result.summary_json);
  CHECK(parsed["unique_codes"] == 70);
  CHECK(parsed["total_codes"] == 175);
  CHECK(parsed["its_display"] == "0.40");
  CHECK(fs::exists(fs::path(cell) / "unique_codebook.csv"));
  CHECK(fs::exists(fs::path(cell) / "duplicates.csv"));
  CHECK(fs::exists(fs::path(cell) / "counts.csv"));
  CHECK(fs::exists(fs::path(cell) / "report.json"));
  CHECK_FALSE(fs::exists(fs::path(cell) / "frontier.json"));  // removed on completion

  // re-run is a no-op without force
  auto again = orch::cmd_reduce(config, cell, false);
  CHECK(nlohmann::json::parse(again.summary_json)["skipped"] == true);

  // always-different stub: only exact-text repeats may be discarded, and
  // every one of them must be logged with the short-circuit rationale
  config.judge.mode = "stub:always-different";
  auto forced = orch::cmd_reduce(config, cell, true);
  auto stub_parsed = nlohmann::json::parse(forced.summary_json);
  size_t uniques = stub_parsed["unique_codes"].get<size_t>();
  auto dup_rows = util::csv_read_with_header((fs::path(cell) / "duplicates.csv").string(),
                                             model::kDuplicatesCsvHeader);
  CHECK(uniques + dup_rows.size() == 175);
  for (const auto& row : dup_rows) CHECK(row[5] == reducer::kExactMatchRationale);
}

TEST_CASE("cmd_report assembles summary, curves and audit-passing tables") {
  testing::TmpDir tmp("report");
  auto config = e2e_config("config_compiled.json", tmp.str());
  orch::cmd_code(config, false);
  orch::cmd_reduce(config, orch::cell_dir(tmp.str(), "identity", 1), false);

  auto result = orch::cmd_report(config, tmp.str());
  auto parsed = nlohmann::json::parse(result.summary_json);
  REQUIRE(parsed["runs"].size() == 1);
  CHECK(parsed["runs"][0]["its_display"] == "0.40");
  CHECK_FALSE(parsed.contains("stability"));  // single run: no CoV row
  CHECK(fs::exists(tmp.path() / "summary.json"));
  CHECK(fs::exists(tmp.path() / "curves.csv"));
  CHECK(fs::exists(tmp.path() / "curves.svg"));
  CHECK(fs::exists(tmp.path() / "regression.svg"));
}

TEST_CASE("a multi-iteration matrix yields one directory per cell and a stability summary") {
  testing::TmpDir tmp("matrix");
  auto config = e2e_config("config_compiled.json", tmp.str());
  config.iterations = 2;

  auto coded = orch::cmd_code(config, false);
  auto cells = nlohmann::json::parse(coded.summary_json)["cells"];
  REQUIRE(cells.size() == 2);
  CHECK(fs::exists(tmp.path() / "identity/1/manifest.json"));
  CHECK(fs::exists(tmp.path() / "identity/2/manifest.json"));
  // the over-limit interview (16 codes against 15 requested) is reported
  CHECK(nlohmann::json::parse(coded.summary_json).contains("warnings"));

  orch::cmd_reduce(config, orch::cell_dir(tmp.str(), "identity", 1), false);
  orch::cmd_reduce(config, orch::cell_dir(tmp.str(), "identity", 2), false);

  auto result = orch::cmd_report(config, tmp.str());
  auto parsed = nlohmann::json::parse(result.summary_json);
  REQUIRE(parsed["runs"].size() == 2);
  REQUIRE(parsed.contains("stability"));
  CHECK(parsed["stability"]["its_values"].size() == 2);
  CHECK(parsed["stability"]["range"] == 0.0);        // identical scripted runs
  CHECK(parsed["stability"]["cov_percent"] == 0.0);
  REQUIRE(parsed["fit_mse"].size() == 1);
  CHECK(parsed["fit_mse"][0]["mse"] == 0.0);
}

TEST_CASE("cmd_report audit rejects tampered artifacts") {
  testing::TmpDir tmp("audit");
  auto config = e2e_config("config_compiled.json", tmp.str());
  orch::cmd_code(config, false);
  std::string cell = orch::cell_dir(tmp.str(), "identity", 1);
  orch::cmd_reduce(config, cell, false);

  // shave a row off the unique codebook: the recomputed ITS no longer matches
  std::string path = (fs::path(cell) / "unique_codebook.csv").string();
  auto rows = util::csv_read_with_header(path, model::kCodesCsvHeader);
  rows.pop_back();
  util::csv_write(path, model::kCodesCsvHeader, rows);
  CHECK_THROWS_AS(orch::cmd_report(config, tmp.str()), InternalError);
}

TEST_CASE("unknown judge mode and missing artifacts are config/input errors") {
  testing::TmpDir tmp("err");
  auto config = e2e_config("config_compiled.json", tmp.str());
  config.judge.mode = "stub:nonsense";
  CHECK_THROWS_AS(orch::cmd_reduce(config, tmp.str("nowhere"), false), Error);

  auto config2 = e2e_config("config_compiled.json", tmp.str());
  CHECK_THROWS_AS(orch::cmd_reduce(config2, tmp.str("nowhere"), false), InputError);
  CHECK_THROWS_AS(orch::cmd_report(config2, tmp.str("empty_dir")), InputError);
}

TEST_CASE("apply_option handles the CLI overrides") {
  auto config = orch::default_config();
  orch::apply_option(config, "judge", "zero-shot");
  CHECK(config.judge.mode == "zero-shot");
  orch::apply_option(config, "seed", "42");
  CHECK(config.seed == 42);
  orch::apply_option(config, "output_dir", "rel");
  CHECK(fs::path(config.output_dir).is_absolute());
  CHECK_THROWS_AS(orch::apply_option(config, "mystery", "x"), ConfigError);
}
