#include "ldi/report.hpp"

#include <algorithm>
#include <sstream>

#include <fmt/format.h>

#include "ldi/errors.hpp"

namespace ldi {

Json to_json(const PipelineConfig& c) {
  Json j;
  j["target"] = c.target;
  j["k"] = c.k;
  j["p"] = c.dependency.p;
  j["q"] = c.dependency.q;
  j["m"] = c.sampling.m;
  j["n"] = c.sampling.n;
  j["prune"] = c.dependency.prune_contained;
  j["max_cell_chars"] = c.dependency.max_cell_chars;
  j["attr_mode"] = to_string(c.attribute_mode);
  j["tuple_mode"] = to_string(c.tuple_mode);
  j["backend"] = to_string(c.backend.kind);
  if (c.backend.kind == BackendKind::kRemoteChat) {
    j["model"] = c.backend.model;
    j["endpoint"] = c.backend.endpoint;
    j["api_key_env"] = c.backend.api_key_env;
    j["temperature"] = c.backend.temperature;
    j["max_retries"] = c.backend.max_retries;
    j["timeout_ms"] = c.backend.timeout.count();
    j["rate_limit"] = c.backend.rate_limit;
  }
  j["seed"] = c.seed;
  j["concurrency"] = c.concurrency;
  j["context"] = c.context;
  return j;
}

Json to_json(const DependencyReport& r) {
  Json j;
  j["candidate"] = r.candidate;
  j["verdict"] = r.verdict;
  j["supporting"] = r.supporting;
  j["total_groups"] = r.total_groups;
  j["required"] = r.required;
  Json w = Json::object();
  for (const auto& [group, patterns] : r.witnesses) w[group] = patterns;
  j["witnesses"] = std::move(w);
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

Json to_json(const ExampleSet& e) {
  Json j;
  j["query_row"] = e.query_row;
  Json examples = Json::array();
  for (const auto& ex : e.examples) {
    Json x;
    x["row"] = ex.row;
    if (ex.score) {
      x["score"] = ex.score->value;
      Json ratios = Json::array();
      for (const auto& a : ex.score->per_attribute) {
        ratios.push_back(Json{{"attribute", a.attribute},
                              {"lcs", a.lcs_length},
                              {"max_length", a.max_length},
                              {"ratio", a.ratio}});
      }
      x["attributes"] = std::move(ratios);
    } else {
      x["score"] = nullptr;
    }
    x["target"] = ex.target;
    examples.push_back(std::move(x));
  }
  j["examples"] = std::move(examples);
  j["diverse"] = e.diverse;
  j["mode"] = to_string(e.mode);
  j["k"] = e.k_requested;
  return j;
}

Json to_json(const PromptStats& s) {
  return Json{{"context_tokens", s.context_tokens}, {"value_tokens", s.value_tokens},
              {"examples", s.examples},             {"attributes", s.attributes},
              {"total_estimate", s.total_estimate}, {"actual_tokens", s.actual_tokens},
              {"actual_chars", s.actual_chars}};
}

Json to_json(const ImputationRecord& r) {
  Json j;
  j["row"] = r.row;
  j["attribute"] = r.attribute;
  j["predicted"] = r.predicted ? Json(*r.predicted) : Json(nullptr);
  j["ground_truth"] = r.ground_truth ? Json(*r.ground_truth) : Json(nullptr);
  j["outcome"] = to_string(r.outcome);
  j["rouge1"] = r.rouge1 ? Json(*r.rouge1) : Json(nullptr);
  j["attributes_used"] = r.attributes_used;
  j["examples"] = to_json(r.examples);
  j["prompt_stats"] = to_json(r.prompt_stats);
  j["prompt"] = r.prompt;
  j["raw"] = r.raw;
  j["retries"] = r.retries;
  j["latency_ms"] = r.latency_ms;
  if (!r.error.empty()) j["error"] = r.error;
  return j;
}

Json to_json(const EvaluationSummary& s) {
  Json j;
  j["exact_match_accuracy"] = s.exact_match_accuracy;
  j["rouge1_f1_mean"] = s.rouge1_f1_mean;
  j["n_scored"] = s.n_scored;
  j["n_failed"] = s.n_failed;
  j["n_imputed"] = s.n_imputed;
  j["data_reduction"] = Json{{"attributes_all", s.data_reduction.attributes_all},
                             {"attributes_used", s.data_reduction.attributes_used},
                             {"character_reduction", s.data_reduction.character_reduction}};
  j["attribute_fallback"] = s.attribute_fallback;
  j["sampling_fallback"] = s.sampling_fallback;
  j["seed"] = s.seed;
  return j;
}

Json to_json(const ExperimentSummary& s) {
  Json j;
  j["repeats"] = s.repeats;
  j["exact_match_accuracy"] = Json{{"mean", s.accuracy_mean}, {"std", s.accuracy_std}};
  j["rouge1_f1"] = Json{{"mean", s.rouge1_mean}, {"std", s.rouge1_std}};
  j["character_reduction_mean"] = s.character_reduction_mean;
  j["n_scored_total"] = s.n_scored_total;
  j["n_failed_total"] = s.n_failed_total;
  return j;
}

namespace {

Json run_body(const PipelineResult& result) {
  Json j;
  Json reports = Json::array();
  if (result.selection) {
    for (const auto& r : result.selection->reports) reports.push_back(to_json(r));
  }
  j["dependency_reports"] = std::move(reports);
  j["attributes_used"] = result.attributes_used;
  Json records = Json::array();
  for (const auto& r : result.records) records.push_back(to_json(r));
  j["records"] = std::move(records);
  j["summary"] = to_json(result.summary);
  j["warnings"] = result.warnings;
  return j;
}

}  // namespace

Json impute_report(const PipelineConfig& config, const PipelineResult& result) {
  Json j;
  j["config"] = to_json(config);
  Json body = run_body(result);
  for (auto& [key, value] : body.items()) j[key] = std::move(value);
  return j;
}

Json eval_report(const PipelineConfig& config, double mask_rate, const ExperimentResult& result) {
  Json j;
  j["config"] = to_json(config);
  j["mask_rate"] = mask_rate;
  j["repeats"] = result.runs.size();
  Json runs = Json::array();
  for (const auto& run : result.runs) {
    Json r;
    r["seed"] = run.seed;
    r["mask"] = Json::parse(run.mask.to_json());
    Json body = run_body(run.result);
    for (auto& [key, value] : body.items()) r[key] = std::move(value);
    runs.push_back(std::move(r));
  }
  j["runs"] = std::move(runs);
  j["summary"] = to_json(result.summary);
  return j;
}

std::string audit_log(const std::vector<ImputationRecord>& records) {
  std::string out;
  for (const auto& r : records) {
    Json j;
    j["row"] = r.row;
    j["attr"] = r.attribute;
    j["prompt"] = r.prompt;
    j["raw"] = r.raw;
    j["normalized"] = r.predicted.value_or("");
    j["latency_ms"] = r.latency_ms;
    j["retries"] = r.retries;
    if (!r.error.empty()) j["error"] = r.error;
    out += j.dump();
    out += '\n';
  }
  return out;
}

PipelineConfig apply_config_json(const nlohmann::json& j, PipelineConfig c) {
  if (!j.is_object()) throw InvalidArgument("config file must hold a JSON object");
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "target") c.target = value.get<std::string>();
      else if (key == "k") c.k = value.get<std::size_t>();
      else if (key == "p") c.dependency.p = value.get<double>();
      else if (key == "q") c.dependency.q = value.get<double>();
      else if (key == "m") c.sampling.m = value.get<std::size_t>();
      else if (key == "n") c.sampling.n = value.get<std::size_t>();
      else if (key == "prune") c.dependency.prune_contained = value.get<bool>();
      else if (key == "max_cell_chars") c.dependency.max_cell_chars = value.get<std::size_t>();
      else if (key == "attr_mode") c.attribute_mode = parse_attribute_mode(value.get<std::string>());
      else if (key == "tuple_mode") c.tuple_mode = parse_tuple_mode(value.get<std::string>());
      else if (key == "backend") c.backend.kind = parse_backend_kind(value.get<std::string>());
      else if (key == "model") c.backend.model = value.get<std::string>();
      else if (key == "endpoint") c.backend.endpoint = value.get<std::string>();
      else if (key == "api_key_env") c.backend.api_key_env = value.get<std::string>();
      else if (key == "temperature") c.backend.temperature = value.get<double>();
      else if (key == "max_retries") c.backend.max_retries = value.get<int>();
      else if (key == "timeout_ms") c.backend.timeout = std::chrono::milliseconds(value.get<long long>());
      else if (key == "rate_limit") c.backend.rate_limit = value.get<double>();
      else if (key == "seed") c.seed = value.get<std::uint64_t>();
      else if (key == "concurrency") c.concurrency = value.get<std::size_t>();
      else if (key == "context") c.context = value.get<std::string>();
      else if (key == "api_key") {
        throw ConfigError("API keys are read from the environment only; use api_key_env");
      } else {
        throw InvalidArgument("unknown config key: " + key);
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("invalid config value: ") + e.what());
  }
  return c;
}

std::string explain_record(const nlohmann::json& report, std::size_t row, std::size_t run) {
  const nlohmann::json* body = &report;
  if (report.contains("runs")) {
    const auto& runs = report.at("runs");
    if (run >= runs.size()) {
      throw InvalidArgument(fmt::format("report has {} runs; run {} does not exist", runs.size(), run));
    }
    body = &runs.at(run);
  }
  const nlohmann::json* record = nullptr;
  for (const auto& r : body->at("records")) {
    if (r.at("row").get<std::size_t>() == row) {
      record = &r;
      break;
    }
  }
  if (record == nullptr) throw InvalidArgument(fmt::format("no imputation record for row {}", row));

  const auto& rec = *record;
  auto text_or = [](const nlohmann::json& v, const char* fallback) {
    return v.is_null() ? std::string(fallback) : v.get<std::string>();
  };
  std::ostringstream out;
  out << fmt::format("Row {} / attribute '{}'\n", row, rec.at("attribute").get<std::string>());
  out << fmt::format("  predicted:    {}\n", text_or(rec.at("predicted"), "(none)"));
  out << fmt::format("  ground truth: {}\n", text_or(rec.at("ground_truth"), "(unknown)"));
  out << fmt::format("  outcome:      {}\n", rec.at("outcome").get<std::string>());
  if (rec.contains("error")) out << fmt::format("  error:        {}\n", rec.at("error").get<std::string>());

  std::vector<std::string> used = rec.at("attributes_used").get<std::vector<std::string>>();
  out << "\nAttributes used (" << used.size() << "):\n";
  for (const auto& dep : body->at("dependency_reports")) {
    const auto name = dep.at("candidate").get<std::string>();
    if (std::find(used.begin(), used.end(), name) == used.end()) continue;
    out << fmt::format("  {}: {}/{} groups carry a unique pattern", name, dep.at("supporting").size(),
                       dep.at("total_groups").get<std::size_t>());
    if (dep.contains("note")) out << " (" << dep.at("note").get<std::string>() << ")";
    out << '\n';
    for (const auto& [group, patterns] : dep.at("witnesses").items()) {
      std::string joined;
      for (const auto& p : patterns) {
        if (!joined.empty()) joined += ", ";
        joined += "'" + p.get<std::string>() + "'";
      }
      out << fmt::format("    {} <- {}\n", group, joined);
    }
  }
  if (body->at("dependency_reports").empty()) out << "  (all attributes, no dependency test)\n";

  const auto& ex = rec.at("examples");
  out << fmt::format("\nExamples ({} mode, {}):\n", ex.at("mode").get<std::string>(),
                     ex.at("diverse").get<bool>() ? "distinct targets" : "repeated targets");
  for (const auto& e : ex.at("examples")) {
    if (e.at("score").is_null()) {
      out << fmt::format("  row {:<6} target={}\n", e.at("row").get<std::size_t>(),
                         e.at("target").get<std::string>());
    } else {
      out << fmt::format("  row {:<6} score={:.3f} target={}\n", e.at("row").get<std::size_t>(),
                         e.at("score").get<double>(), e.at("target").get<std::string>());
    }
  }
  const auto& stats = rec.at("prompt_stats");
  out << fmt::format("\nPrompt: {} tokens ({} chars), estimate {:.1f}\n",
                     stats.at("actual_tokens").get<std::size_t>(),
                     stats.at("actual_chars").get<std::size_t>(),
                     stats.at("total_estimate").get<double>());
  out << rec.at("prompt").get<std::string>();
  out << "\nRaw answer: " << rec.at("raw").get<std::string>() << '\n';
  return out.str();
}

}  // namespace ldi
