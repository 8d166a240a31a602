#include "ldi/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>
#include <unordered_map>

#include "ldi/errors.hpp"
#include "ldi/metrics.hpp"
#include "ldi/random.hpp"
#include "ldi/unicode.hpp"

namespace ldi {

const char* to_string(AttributeMode mode) noexcept {
  return mode == AttributeMode::kAll ? "all" : "dependent";
}

AttributeMode parse_attribute_mode(std::string_view text) {
  if (text == "dependent") return AttributeMode::kDependent;
  if (text == "all") return AttributeMode::kAll;
  throw InvalidArgument("unknown attribute mode: " + std::string(text));
}

const char* to_string(Outcome outcome) noexcept {
  switch (outcome) {
    case Outcome::kExactMatch:
      return "exact-match";
    case Outcome::kMismatch:
      return "mismatch";
    case Outcome::kUnscored:
      return "unscored";
    case Outcome::kFailed:
      return "failed";
  }
  return "unknown";
}

void PipelineConfig::validate() const {
  if (target.empty()) throw InvalidArgument("a target attribute is required");
  if (k == 0) throw InvalidArgument("k must be >= 1");
  if (sampling.m == 0 || sampling.n == 0) throw InvalidArgument("m and n must be >= 1");
  if (dependency.p < 0.0 || dependency.p > 1.0) throw InvalidArgument("p must be in [0, 1]");
  if (dependency.q < 0.0 || dependency.q > 1.0) throw InvalidArgument("q must be in [0, 1]");
  if (concurrency == 0) throw InvalidArgument("concurrency must be >= 1");
}

namespace {

std::size_t char_length(const Cell& c) { return c ? utf8_length(*c) : 0; }

std::vector<std::string> non_target_attributes(const Table& table, std::string_view target) {
  std::vector<std::string> out;
  for (const auto& a : table.schema()) {
    if (a != target) out.push_back(a);
  }
  return out;
}

}  // namespace

EvaluationSummary summarize(const std::vector<ImputationRecord>& records, const Table& input,
                            const std::vector<std::string>& attributes_used,
                            std::string_view target) {
  EvaluationSummary s;
  const auto all = non_target_attributes(input, target);
  s.data_reduction.attributes_all = all.size();
  s.data_reduction.attributes_used = attributes_used.size();

  std::size_t matches = 0;
  double rouge_sum = 0.0;
  double used_chars = 0.0;
  double all_chars = 0.0;
  std::vector<std::size_t> used_cols;
  std::vector<std::size_t> all_cols;
  for (const auto& a : attributes_used) used_cols.push_back(input.index_of(a));
  for (const auto& a : all) all_cols.push_back(input.index_of(a));

  for (const auto& r : records) {
    if (r.outcome == Outcome::kFailed) {
      ++s.n_failed;
      continue;
    }
    ++s.n_imputed;
    if (r.outcome == Outcome::kUnscored) continue;
    ++s.n_scored;
    if (r.outcome == Outcome::kExactMatch) ++matches;
    rouge_sum += r.rouge1.value_or(0.0);
    for (std::size_t c : used_cols) used_chars += static_cast<double>(char_length(input.cell(r.row, c)));
    for (std::size_t c : all_cols) all_chars += static_cast<double>(char_length(input.cell(r.row, c)));
  }
  if (s.n_scored > 0) {
    s.exact_match_accuracy = static_cast<double>(matches) / static_cast<double>(s.n_scored);
    s.rouge1_f1_mean = rouge_sum / static_cast<double>(s.n_scored);
    // both means share the denominator n_scored, so the ratio of sums is the ratio of means
    if (all_chars > 0.0) s.data_reduction.character_reduction = 1.0 - used_chars / all_chars;
  }
  return s;
}

PipelineResult run_pipeline(const Table& table, const PipelineConfig& config, Backend& backend,
                            const MaskPlan* truth) {
  config.validate();
  const std::size_t target_col = table.index_of(config.target);

  PipelineResult out;
  out.imputed = table;

  std::vector<std::size_t> worklist;
  for (std::size_t r = 0; r < table.num_rows(); ++r) {
    if (!table.cell(r, target_col)) worklist.push_back(r);
  }
  if (worklist.empty()) {
    throw InvalidArgument("target '" + config.target + "' has no missing cells to impute");
  }

  // Phase 1: attribute selection, once per run.
  const auto all_attributes = non_target_attributes(table, config.target);
  bool fallback = false;
  if (config.attribute_mode == AttributeMode::kDependent) {
    SamplingConfig sampling = config.sampling;
    sampling.seed = derive_seed(config.seed, 1);
    out.selection = select_attributes(table, config.target, sampling, config.dependency);
    if (out.selection->truncated_cells > 0) {
      out.warnings.push_back(std::to_string(out.selection->truncated_cells) +
                             " sampled cells truncated to " +
                             std::to_string(config.dependency.max_cell_chars) +
                             " characters before pattern mining");
    }
    if (out.selection->sampling_fallback) {
      out.warnings.push_back("fewer than m groups with n rows; sampled every available group");
    }
    out.attributes_used = out.selection->selected;
    if (out.attributes_used.empty()) {
      fallback = true;
      out.attributes_used = all_attributes;
      out.warnings.push_back("no attribute passed the dependency test; falling back to all attributes");
    }
  } else {
    out.attributes_used = all_attributes;
  }
  if (out.attributes_used.empty() && config.tuple_mode == TupleMode::kDiverseSimilarity) {
    throw InvalidArgument("diverse-similarity selection needs at least one non-target attribute");
  }

  std::unordered_map<std::size_t, std::string> ground_truth;
  if (truth != nullptr) {
    for (const auto& m : truth->masked) ground_truth.emplace(m.row, m.value);
  }

  // Phases 2 and 3, fanned out per missing cell over shared immutable state.
  const TupleSelector selector(table, config.target, out.attributes_used);
  const std::string context = config.context.empty() ? default_context(config.target) : config.context;
  std::vector<ImputationRecord> records(worklist.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr fatal;
  std::mutex fatal_mutex;

  auto work = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= worklist.size()) return;
      {
        std::lock_guard lock(fatal_mutex);
        if (fatal) return;
      }
      ImputationRecord& rec = records[i];
      rec.row = worklist[i];
      rec.attribute = config.target;
      rec.attributes_used = out.attributes_used;
      if (auto it = ground_truth.find(rec.row); it != ground_truth.end()) rec.ground_truth = it->second;
      try {
        rec.examples = selector.select(rec.row, config.k, config.tuple_mode,
                                       derive_seed(config.seed, 1000 + rec.row));
        const PromptSpec spec =
            build_prompt_spec(table, rec.examples, out.attributes_used, config.target, context);
        rec.prompt = serialize_prompt(spec);
        rec.prompt_stats = prompt_stats(spec);
        Completion completion = backend.complete(rec.prompt);
        rec.raw = std::move(completion.text);
        rec.retries = completion.retries;
        rec.latency_ms = completion.latency_ms;
        rec.predicted = normalize_answer(rec.raw);
        if (rec.ground_truth) {
          rec.outcome = exact_match(*rec.predicted, *rec.ground_truth) ? Outcome::kExactMatch
                                                                        : Outcome::kMismatch;
          rec.rouge1 = rouge1_f1(*rec.predicted, *rec.ground_truth);
        } else {
          rec.outcome = Outcome::kUnscored;
        }
      } catch (const ConfigError&) {
        std::lock_guard lock(fatal_mutex);
        if (!fatal) fatal = std::current_exception();
        return;
      } catch (const TransportError& e) {
        rec.outcome = Outcome::kFailed;
        rec.error = e.what();
        rec.retries = e.retries();
      } catch (const Error& e) {
        rec.outcome = Outcome::kFailed;
        rec.error = e.what();
      }
    }
  };

  const std::size_t width = std::min(config.concurrency, worklist.size());
  if (width <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(width);
    for (std::size_t t = 0; t < width; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (fatal) std::rethrow_exception(fatal);

  for (const auto& rec : records) {
    if (rec.predicted) out.imputed.set_cell(rec.row, target_col, *rec.predicted);
  }
  out.records = std::move(records);
  out.summary = summarize(out.records, table, out.attributes_used, config.target);
  out.summary.attribute_fallback = fallback;
  out.summary.sampling_fallback = out.selection && out.selection->sampling_fallback;
  out.summary.seed = config.seed;
  return out;
}

ExperimentResult run_experiment(const Table& table, const PipelineConfig& config, double mask_rate,
                                std::size_t repeats, Backend& backend) {
  if (repeats == 0) throw InvalidArgument("repeats must be >= 1");
  ExperimentResult out;
  std::vector<double> accuracy;
  std::vector<double> rouge;
  double reduction_sum = 0.0;
  for (std::size_t r = 0; r < repeats; ++r) {
    const std::uint64_t seed = config.seed + r;
    auto [masked, plan] = mask_cells(table, config.target, mask_rate, seed);
    PipelineConfig run_config = config;
    run_config.seed = seed;
    RunResult run{seed, plan, run_pipeline(masked, run_config, backend, &plan)};
    accuracy.push_back(run.result.summary.exact_match_accuracy);
    rouge.push_back(run.result.summary.rouge1_f1_mean);
    reduction_sum += run.result.summary.data_reduction.character_reduction;
    out.summary.n_scored_total += run.result.summary.n_scored;
    out.summary.n_failed_total += run.result.summary.n_failed;
    out.runs.push_back(std::move(run));
  }
  auto mean_std = [](const std::vector<double>& xs) {
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    double var = 0.0;
    for (double x : xs) var += (x - mean) * (x - mean);
    const double sd = xs.size() > 1 ? std::sqrt(var / static_cast<double>(xs.size() - 1)) : 0.0;
    return std::pair{mean, sd};
  };
  out.summary.repeats = repeats;
  std::tie(out.summary.accuracy_mean, out.summary.accuracy_std) = mean_std(accuracy);
  std::tie(out.summary.rouge1_mean, out.summary.rouge1_std) = mean_std(rouge);
  out.summary.character_reduction_mean = reduction_sum / static_cast<double>(repeats);
  return out;
}

}  // namespace ldi
