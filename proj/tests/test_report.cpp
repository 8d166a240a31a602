#include <doctest.h>

#include "ldi/errors.hpp"
#include "ldi/report.hpp"
#include "ldi/synth.hpp"

TEST_CASE("impute report: schema and explain") {
  const auto full = ldi::synth::area_code_table(7, 20);
  const auto [masked, plan] = ldi::mask_cells(full, "City", 0.1, 7);
  ldi::PipelineConfig cfg;
  cfg.target = "City";
  ldi::MockBackend mock;
  const auto result = ldi::run_pipeline(masked, cfg, mock, &plan);
  const auto report = ldi::impute_report(cfg, result);
  for (const char* key : {"config", "dependency_reports", "records", "summary", "warnings"}) {
    CHECK(report.contains(key));
  }
  CHECK(report["config"]["p"] == 0.9);
  CHECK_FALSE(report["config"].contains("api_key_env"));
  const auto& rec = report["records"][0];
  for (const char* key : {"row", "attribute", "predicted", "ground_truth", "outcome", "attributes_used",
                          "examples", "prompt_stats", "prompt", "raw"}) {
    CHECK(rec.contains(key));
  }
  CHECK(report["summary"]["exact_match_accuracy"] == 1.0);

  const nlohmann::json plain = nlohmann::json::parse(report.dump());
  const std::size_t row = plain["records"][0]["row"];
  const std::string text = ldi::explain_record(plain, row);
  CHECK(text.find("Row " + std::to_string(row)) != std::string::npos);
  CHECK(text.find("Phone") != std::string::npos);
  CHECK_THROWS_AS(ldi::explain_record(plain, 100000), ldi::InvalidArgument);
}

TEST_CASE("audit log: one JSON line per record") {
  ldi::ImputationRecord rec;
  rec.row = 4;
  rec.attribute = "City";
  rec.prompt = "p\nq";
  rec.raw = " Boston ";
  rec.predicted = "Boston";
  const std::string log = ldi::audit_log({rec, rec});
  CHECK(std::count(log.begin(), log.end(), '\n') == 2);
  const auto line = nlohmann::json::parse(log.substr(0, log.find('\n')));
  CHECK(line["row"] == 4);
  CHECK(line["attr"] == "City");
  CHECK(line["normalized"] == "Boston");
  CHECK(line["retries"] == 0);
}

TEST_CASE("config json: keys apply, unknown keys and inline keys are rejected") {
  const auto cfg = ldi::apply_config_json(
      nlohmann::json::parse(R"({"target":"City","k":5,"p":0.8,"attr_mode":"all","tuple_mode":"random","seed":7})"),
      {});
  CHECK(cfg.target == "City");
  CHECK(cfg.k == 5);
  CHECK(cfg.dependency.p == 0.8);
  CHECK(cfg.attribute_mode == ldi::AttributeMode::kAll);
  CHECK(cfg.tuple_mode == ldi::TupleMode::kRandom);
  CHECK(cfg.seed == 7);
  CHECK_THROWS_AS(ldi::apply_config_json(nlohmann::json::parse(R"({"kk":1})"), {}), ldi::InvalidArgument);
  CHECK_THROWS_AS(ldi::apply_config_json(nlohmann::json::parse(R"({"api_key":"x"})"), {}), ldi::ConfigError);
  CHECK_THROWS_AS(ldi::apply_config_json(nlohmann::json::parse(R"({"k":"three"})"), {}), ldi::InvalidArgument);
}
