#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "ldi/errors.hpp"
#include "ldi/pipeline.hpp"
#include "ldi/report.hpp"
#include "ldi/synth.hpp"
#include "ldi/table.hpp"

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kData = 2, kBackend = 3 };

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ldi::ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ldi::ParseError("cannot write " + path);
  out << content;
}

// Options shared by impute and eval. Each setter runs only when its flag was
// given, so command-line values override a config file.
struct PipelineFlags {
  std::string input, config_file;
  std::vector<std::function<void(ldi::PipelineConfig&)>> overrides;

  template <typename T, typename Apply>
  void add(CLI::App* app, const std::string& name, const std::string& help, Apply apply) {
    auto value = std::make_shared<T>();
    CLI::Option* opt = app->add_option(name, *value, help);
    overrides.push_back([opt, value, apply](ldi::PipelineConfig& c) {
      if (opt->count() > 0) apply(c, *value);
    });
  }

  void attach(CLI::App* app) {
    app->add_option("--input", input, "input CSV")->required();
    app->add_option("--config", config_file, "JSON config file (flags take precedence)");
    using C = ldi::PipelineConfig;
    add<std::string>(app, "--target", "attribute to impute", [](C& c, const std::string& v) { c.target = v; });
    add<std::size_t>(app, "--k", "examples per prompt", [](C& c, std::size_t v) { c.k = v; });
    add<double>(app, "--p", "fraction of groups needing a unique pattern", [](C& c, double v) { c.dependency.p = v; });
    add<double>(app, "--q", "fraction of a group's rows a pattern must cover", [](C& c, double v) { c.dependency.q = v; });
    add<std::size_t>(app, "--m", "groups sampled in phase 1", [](C& c, std::size_t v) { c.sampling.m = v; });
    add<std::size_t>(app, "--n", "rows sampled per group", [](C& c, std::size_t v) { c.sampling.n = v; });
    add<std::string>(app, "--attr-mode", "dependent|all",
                     [](C& c, const std::string& v) { c.attribute_mode = ldi::parse_attribute_mode(v); });
    add<std::string>(app, "--tuple-mode", "diverse|random",
                     [](C& c, const std::string& v) { c.tuple_mode = ldi::parse_tuple_mode(v); });
    add<std::string>(app, "--backend", "mock|remote",
                     [](C& c, const std::string& v) { c.backend.kind = ldi::parse_backend_kind(v); });
    add<std::string>(app, "--model", "remote model name", [](C& c, const std::string& v) { c.backend.model = v; });
    add<std::string>(app, "--endpoint", "chat-completions URL",
                     [](C& c, const std::string& v) { c.backend.endpoint = v; });
    add<std::string>(app, "--api-key-env", "environment variable holding the API key",
                     [](C& c, const std::string& v) { c.backend.api_key_env = v; });
    add<double>(app, "--rate-limit", "remote requests per second (0 = unlimited)",
                [](C& c, double v) { c.backend.rate_limit = v; });
    add<int>(app, "--max-retries", "retries for transient remote errors",
             [](C& c, int v) { c.backend.max_retries = v; });
    add<std::uint64_t>(app, "--seed", "base seed", [](C& c, std::uint64_t v) { c.seed = v; });
    add<std::size_t>(app, "--concurrency", "cells processed in parallel",
                     [](C& c, std::size_t v) { c.concurrency = v; });
    add<std::string>(app, "--context", "task description placed in every prompt",
                     [](C& c, const std::string& v) { c.context = v; });
    add<bool>(app, "--prune", "drop patterns contained in longer ones (true|false)",
              [](C& c, bool v) { c.dependency.prune_contained = v; });
  }

  ldi::PipelineConfig build() const {
    ldi::PipelineConfig config;
    if (!config_file.empty()) {
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(read_file(config_file));
      } catch (const nlohmann::json::parse_error& e) {
        throw ldi::InvalidArgument("config file is not valid JSON: " + std::string(e.what()));
      }
      config = ldi::apply_config_json(j, config);
    }
    for (const auto& apply : overrides) apply(config);
    config.validate();
    return config;
  }
};

int run_impute(const PipelineFlags& flags, const std::string& out, const std::string& report,
               const std::string& audit, const std::string& truth_path) {
  const ldi::PipelineConfig config = flags.build();
  const ldi::Table table = ldi::load_csv_file(flags.input);
  std::optional<ldi::MaskPlan> truth;
  if (!truth_path.empty()) truth = ldi::MaskPlan::from_json(read_file(truth_path));

  auto backend = ldi::make_backend(config.backend);
  const ldi::PipelineResult result =
      ldi::run_pipeline(table, config, *backend, truth ? &*truth : nullptr);

  if (!out.empty()) ldi::write_csv_file(out, result.imputed);
  if (!report.empty()) write_file(report, ldi::impute_report(config, result).dump(2) + "\n");
  if (!audit.empty()) write_file(audit, ldi::audit_log(result.records));

  const auto& s = result.summary;
  for (const auto& w : result.warnings) fmt::print(stderr, "warning: {}\n", w);
  fmt::print("imputed {} cells using {} of {} attributes", s.n_imputed,
             s.data_reduction.attributes_used, s.data_reduction.attributes_all);
  if (s.n_scored > 0) {
    fmt::print("; exact match {:.3f}, ROUGE-1 F1 {:.3f} over {} scored", s.exact_match_accuracy,
               s.rouge1_f1_mean, s.n_scored);
  }
  fmt::print("\n");
  if (s.n_failed > 0) {
    fmt::print(stderr, "{} cells failed and were left missing\n", s.n_failed);
    return kBackend;
  }
  return kOk;
}

int run_eval(const PipelineFlags& flags, double rate, std::size_t repeats, const std::string& report,
             const std::string& audit) {
  const ldi::PipelineConfig config = flags.build();
  const ldi::Table table = ldi::load_csv_file(flags.input);
  auto backend = ldi::make_backend(config.backend);
  const ldi::ExperimentResult result = ldi::run_experiment(table, config, rate, repeats, *backend);

  if (!report.empty()) write_file(report, ldi::eval_report(config, rate, result).dump(2) + "\n");
  if (!audit.empty()) {
    std::string log;
    for (const auto& run : result.runs) log += ldi::audit_log(run.result.records);
    write_file(audit, log);
  }
  const auto& s = result.summary;
  fmt::print("{} repeats: exact match {:.3f} +- {:.3f}, ROUGE-1 F1 {:.3f} +- {:.3f}, "
             "character reduction {:.3f}\n",
             s.repeats, s.accuracy_mean, s.accuracy_std, s.rouge1_mean, s.rouge1_std,
             s.character_reduction_mean);
  if (s.n_failed_total > 0) {
    fmt::print(stderr, "{} cells failed across all repeats\n", s.n_failed_total);
    return kBackend;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"LLM-based missing value imputation with dependency-aware prompts"};
  app.require_subcommand(1);

  // impute
  auto* impute = app.add_subcommand("impute", "fill the missing cells of one column");
  PipelineFlags impute_flags;
  impute_flags.attach(impute);
  std::string impute_out, impute_report, impute_audit, impute_truth;
  impute->add_option("--out", impute_out, "write the imputed CSV here");
  impute->add_option("--report", impute_report, "write a JSON report here");
  impute->add_option("--audit-log", impute_audit, "write one JSON line per backend call");
  impute->add_option("--truth", impute_truth, "mask plan JSON holding the hidden values");

  // eval
  auto* eval = app.add_subcommand("eval", "mask known cells, impute them, and score");
  PipelineFlags eval_flags;
  eval_flags.attach(eval);
  double mask_rate = 0.1;
  std::size_t repeats = 5;
  std::string eval_report, eval_audit;
  eval->add_option("--mask-rate", mask_rate, "fraction of known target cells to hide")
      ->check(CLI::Range(0.0, 1.0));
  eval->add_option("--repeats", repeats, "repeats with seeds seed, seed+1, ...")
      ->check(CLI::PositiveNumber);
  eval->add_option("--report", eval_report, "write a JSON report here");
  eval->add_option("--audit-log", eval_audit, "write one JSON line per backend call");

  // explain
  auto* explain = app.add_subcommand("explain", "show how one cell was imputed");
  std::string explain_report;
  std::size_t explain_row = 0, explain_run = 0;
  explain->add_option("--report", explain_report, "report written by impute or eval")->required();
  explain->add_option("--row", explain_row, "row index")->required();
  explain->add_option("--run", explain_run, "repeat index for eval reports");

  // mask
  auto* mask = app.add_subcommand("mask", "hide a fraction of a column and save the answers");
  std::string mask_input, mask_target, mask_out, mask_plan;
  double mask_fraction = 0.1;
  std::uint64_t mask_seed = 42;
  mask->add_option("--input", mask_input, "input CSV")->required();
  mask->add_option("--target", mask_target, "column to mask")->required();
  mask->add_option("--rate", mask_fraction, "fraction of known cells to hide")->check(CLI::Range(0.0, 1.0));
  mask->add_option("--seed", mask_seed, "seed");
  mask->add_option("--out", mask_out, "masked CSV")->required();
  mask->add_option("--plan", mask_plan, "mask plan JSON (use with impute --truth)")->required();

  // generate
  auto* generate = app.add_subcommand("generate", "write a synthetic benchmark table");
  std::string gen_kind = "area-code", gen_out;
  std::uint64_t gen_seed = 42;
  std::size_t gen_rows = 100;
  generate->add_option("--kind", gen_kind, "area-code|zomato")
      ->check(CLI::IsMember({"area-code", "zomato"}));
  generate->add_option("--seed", gen_seed, "seed");
  generate->add_option("--rows-per-city", gen_rows, "rows per target value");
  generate->add_option("--out", gen_out, "output CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (*impute) return run_impute(impute_flags, impute_out, impute_report, impute_audit, impute_truth);
    if (*eval) return run_eval(eval_flags, mask_rate, repeats, eval_report, eval_audit);
    if (*explain) {
      const auto report = nlohmann::json::parse(read_file(explain_report));
      fmt::print("{}", ldi::explain_record(report, explain_row, explain_run));
      return kOk;
    }
    if (*mask) {
      const auto [masked, plan] =
          ldi::mask_cells(ldi::load_csv_file(mask_input), mask_target, mask_fraction, mask_seed);
      ldi::write_csv_file(mask_out, masked);
      write_file(mask_plan, plan.to_json() + "\n");
      fmt::print("masked {} cells of '{}'\n", plan.masked.size(), mask_target);
      return kOk;
    }
    if (*generate) {
      const ldi::Table table = gen_kind == "zomato" ? ldi::synth::zomato_like_table(gen_seed, gen_rows)
                                                    : ldi::synth::area_code_table(gen_seed, gen_rows);
      ldi::write_csv_file(gen_out, table);
      return kOk;
    }
  } catch (const ldi::ConfigError& e) {
    fmt::print(stderr, "configuration error: {}\n", e.what());
    return kUsage;
  } catch (const ldi::InvalidArgument& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kUsage;
  } catch (const ldi::TransportError& e) {
    fmt::print(stderr, "backend error: {}\n", e.what());
    return kBackend;
  } catch (const ldi::Error& e) {
    fmt::print(stderr, "data error: {}\n", e.what());
    return kData;
  } catch (const nlohmann::json::exception& e) {
    fmt::print(stderr, "data error: {}\n", e.what());
    return kData;
  }
  return kOk;
}
