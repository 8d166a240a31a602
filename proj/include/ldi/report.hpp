#pragma once

#include <cstddef>
#include <string>

#include <json.hpp>

#include "ldi/attribute_selection.hpp"
#include "ldi/pipeline.hpp"

namespace ldi {

using Json = nlohmann::ordered_json;

Json to_json(const PipelineConfig& config);
Json to_json(const DependencyReport& report);
Json to_json(const ExampleSet& examples);
Json to_json(const PromptStats& stats);
Json to_json(const ImputationRecord& record);
Json to_json(const EvaluationSummary& summary);
Json to_json(const ExperimentSummary& summary);

/// {"config", "dependency_reports", "records", "summary", "warnings"}
Json impute_report(const PipelineConfig& config, const PipelineResult& result);

/// {"config", "mask_rate", "repeats", "runs": [{seed, mask, dependency_reports,
/// records, summary, warnings}], "summary"}
Json eval_report(const PipelineConfig& config, double mask_rate, const ExperimentResult& result);

/// One JSON object per backend call: row, attr, prompt, raw, normalized,
/// latency_ms, retries (plus error for failed cells).
std::string audit_log(const std::vector<ImputationRecord>& records);

/// Applies the keys present in a JSON config object on top of base. Keys
/// mirror the CLI flags: target, k, p, q, m, n, attr_mode, tuple_mode,
/// backend, model, endpoint, api_key_env, temperature, max_retries,
/// timeout_ms, rate_limit, seed, concurrency, prune, max_cell_chars, context.
PipelineConfig apply_config_json(const nlohmann::json& json, PipelineConfig base);

/// Human-readable account of one record of an impute or eval report.
std::string explain_record(const nlohmann::json& report, std::size_t row, std::size_t run = 0);

}  // namespace ldi
