#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ldi/table.hpp"

namespace ldi {

struct SamplingConfig {
  std::size_t m = 10;  // groups
  std::size_t n = 10;  // rows per group
  std::uint64_t seed = 0;
};

struct DependencyConfig {
  double p = 0.9;  // fraction of groups that must carry a unique pattern
  double q = 0.9;  // fraction of a group's rows a pattern must appear in
  bool prune_contained = true;
  std::size_t max_cell_chars = 2000;
};

struct GroupSample {
  Table table;                           // the sampled rows
  GroupIndex groups;                     // indexes into `table`
  std::vector<std::size_t> source_rows;  // table row -> original row
  bool fallback = false;                 // fewer than m groups had >= n rows
};

/// Picks min(m, #groups with >= n rows) such groups uniformly and n rows from
/// each. When fewer than m groups qualify, the remaining slots are filled with
/// smaller groups, whose rows are all taken.
GroupSample group_sample(const Table& table, std::string_view target,
                         const SamplingConfig& config);

struct GroupPatternSet {
  std::string key;
  std::map<std::string, std::size_t> patterns;  // substring -> rows containing it
  std::size_t group_size = 0;
};

/// Frequent substrings of the candidate column, per group. MISSING cells are
/// empty documents.
std::vector<GroupPatternSet> detect_group_patterns(const Table& sample, const GroupIndex& groups,
                                                   std::string_view candidate, double q);

/// Keeps, per group, only the patterns frequent in no other group.
std::vector<GroupPatternSet> filter_unique_patterns(std::span<const GroupPatternSet> sets);

/// Drops patterns contained in a longer pattern of the same set.
GroupPatternSet prune_contained(const GroupPatternSet& set);

struct DependencyReport {
  std::string candidate;
  std::vector<std::string> supporting;  // group keys with >= 1 unique pattern
  std::size_t total_groups = 0;
  std::size_t required = 0;  // ceil(p * total_groups)
  bool verdict = false;
  std::map<std::string, std::vector<std::string>> witnesses;
  std::string note;  // "constant", "unconstrained", or empty
};

DependencyReport evaluate_dependency(std::span<const GroupPatternSet> unique_sets, double p,
                                     std::string candidate = {});

struct AttributeSelection {
  std::vector<std::string> selected;       // schema order
  std::vector<DependencyReport> reports;   // every candidate, schema order
  std::size_t sampled_rows = 0;
  std::size_t sampled_groups = 0;
  bool sampling_fallback = false;
  std::size_t truncated_cells = 0;
};

/// Runs sampling, pattern detection, uniqueness filtering, optional pruning,
/// and dependency evaluation for every non-target attribute on one shared
/// sample. p == 0 or q == 0 imposes no constraint: every candidate is kept.
AttributeSelection select_attributes(const Table& table, std::string_view target,
                                     const SamplingConfig& sampling,
                                     const DependencyConfig& dependency);

/// Same as select_attributes but on an already drawn sample.
AttributeSelection select_attributes_on_sample(const GroupSample& sample, std::string_view target,
                                               const DependencyConfig& dependency);

}  // namespace ldi
