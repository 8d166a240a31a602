#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ldi/attribute_selection.hpp"
#include "ldi/backend.hpp"
#include "ldi/prompt.hpp"
#include "ldi/table.hpp"
#include "ldi/tuple_selection.hpp"

namespace ldi {

enum class AttributeMode { kDependent, kAll };

const char* to_string(AttributeMode mode) noexcept;
AttributeMode parse_attribute_mode(std::string_view text);

/// (attribute_mode = all, tuple_mode = random) is the FMW baseline.
struct PipelineConfig {
  std::string target;
  SamplingConfig sampling;  // its seed is replaced by `seed`
  DependencyConfig dependency;
  std::size_t k = 3;
  TupleMode tuple_mode = TupleMode::kDiverseSimilarity;
  AttributeMode attribute_mode = AttributeMode::kDependent;
  BackendConfig backend;
  std::uint64_t seed = 42;
  std::size_t concurrency = 4;
  std::string context;  // empty: default_context(target)

  void validate() const;
};

enum class Outcome { kExactMatch, kMismatch, kUnscored, kFailed };
const char* to_string(Outcome outcome) noexcept;

struct ImputationRecord {
  std::size_t row = 0;
  std::string attribute;
  std::optional<std::string> predicted;
  std::optional<std::string> ground_truth;
  std::vector<std::string> attributes_used;
  ExampleSet examples;
  PromptStats prompt_stats;
  std::string prompt;
  std::string raw;
  Outcome outcome = Outcome::kUnscored;
  std::optional<double> rouge1;
  std::string error;
  int retries = 0;
  double latency_ms = 0.0;
};

struct DataReduction {
  std::size_t attributes_all = 0;
  std::size_t attributes_used = 0;
  double character_reduction = 0.0;
};

struct EvaluationSummary {
  double exact_match_accuracy = 0.0;
  double rouge1_f1_mean = 0.0;
  std::size_t n_scored = 0;
  std::size_t n_failed = 0;
  std::size_t n_imputed = 0;
  DataReduction data_reduction;
  bool attribute_fallback = false;  // phase 1 selected nothing; all attributes used
  bool sampling_fallback = false;
  std::uint64_t seed = 0;
};

struct PipelineResult {
  Table imputed;
  std::vector<ImputationRecord> records;  // ascending by row
  EvaluationSummary summary;
  std::optional<AttributeSelection> selection;
  std::vector<std::string> attributes_used;
  std::vector<std::string> warnings;
};

/// Attribute selection once per run, then example selection, prompting, and
/// answer normalization for every MISSING target cell on a bounded worker
/// pool. A failed cell stays MISSING and is counted; ConfigError aborts.
PipelineResult run_pipeline(const Table& table, const PipelineConfig& config, Backend& backend,
                            const MaskPlan* truth = nullptr);

/// Recomputes accuracy, ROUGE mean, and counts from the records.
EvaluationSummary summarize(const std::vector<ImputationRecord>& records, const Table& input,
                            const std::vector<std::string>& attributes_used,
                            std::string_view target);

struct RunResult {
  std::uint64_t seed = 0;
  MaskPlan mask;
  PipelineResult result;
};

struct ExperimentSummary {
  std::size_t repeats = 0;
  double accuracy_mean = 0.0;
  double accuracy_std = 0.0;
  double rouge1_mean = 0.0;
  double rouge1_std = 0.0;
  double character_reduction_mean = 0.0;
  std::size_t n_scored_total = 0;
  std::size_t n_failed_total = 0;
};

struct ExperimentResult {
  std::vector<RunResult> runs;
  ExperimentSummary summary;
};

/// Repeat r masks with seed + r and runs the pipeline with seed + r.
/// Standard deviations are sample standard deviations (0 for one repeat).
ExperimentResult run_experiment(const Table& table, const PipelineConfig& config, double mask_rate,
                                std::size_t repeats, Backend& backend);

}  // namespace ldi
