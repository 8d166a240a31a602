#include "ldi/attribute_selection.hpp"

#include <algorithm>

#include "ldi/errors.hpp"
#include "ldi/mining.hpp"
#include "ldi/random.hpp"
#include "ldi/unicode.hpp"

namespace ldi {
namespace {

void check_fraction(double value, const char* name, bool allow_zero) {
  const bool ok = allow_zero ? (value >= 0.0 && value <= 1.0) : (value > 0.0 && value <= 1.0);
  if (!ok) {
    throw InvalidArgument(std::string(name) + " must be in " + (allow_zero ? "[0, 1]" : "(0, 1]") +
                          ", got " + std::to_string(value));
  }
}

}  // namespace

GroupSample group_sample(const Table& table, std::string_view target,
                         const SamplingConfig& config) {
  if (config.m == 0 || config.n == 0) throw InvalidArgument("sampling needs m >= 1 and n >= 1");
  const GroupIndex all = group_by_target(table, target);
  if (all.groups.empty()) {
    throw InvalidArgument("target '" + std::string(target) + "' has no non-missing values");
  }

  std::vector<std::size_t> eligible;
  std::vector<std::size_t> small;
  for (std::size_t g = 0; g < all.groups.size(); ++g) {
    (all.groups[g].rows.size() >= config.n ? eligible : small).push_back(g);
  }

  Rng rng(config.seed);
  std::vector<std::size_t> chosen;
  const bool fallback = eligible.size() < config.m;
  if (!fallback) {
    for (std::size_t i : rng.sample_indices(eligible.size(), config.m)) chosen.push_back(eligible[i]);
  } else {
    chosen = eligible;
    const std::size_t extra = std::min(config.m - eligible.size(), small.size());
    for (std::size_t i : rng.sample_indices(small.size(), extra)) chosen.push_back(small[i]);
  }
  std::sort(chosen.begin(), chosen.end());

  GroupSample out;
  out.fallback = fallback;
  for (std::size_t g : chosen) {
    const auto& rows = all.groups[g].rows;
    std::vector<std::size_t> picked;
    if (rows.size() > config.n) {
      for (std::size_t i : rng.sample_indices(rows.size(), config.n)) picked.push_back(rows[i]);
      std::sort(picked.begin(), picked.end());
    } else {
      picked = rows;
    }
    out.source_rows.insert(out.source_rows.end(), picked.begin(), picked.end());
  }
  out.table = table.select_rows(out.source_rows);
  out.groups = group_by_target(out.table, target);
  return out;
}

std::vector<GroupPatternSet> detect_group_patterns(const Table& sample, const GroupIndex& groups,
                                                   std::string_view candidate, double q) {
  check_fraction(q, "q", false);
  if (candidate == groups.target) {
    throw InvalidArgument("candidate attribute must differ from the target");
  }
  const std::size_t col = sample.index_of(candidate);
  std::vector<GroupPatternSet> out;
  out.reserve(groups.groups.size());
  for (const auto& group : groups.groups) {
    std::vector<std::u32string> docs;
    docs.reserve(group.rows.size());
    for (std::size_t r : group.rows) {
      const Cell& c = sample.cell(r, col);
      docs.push_back(c ? utf8_decode(*c) : std::u32string{});
    }
    auto mined = frequent_substrings(DocumentSet(std::move(docs)), q);
    out.push_back(GroupPatternSet{group.key, std::move(mined.entries), group.rows.size()});
  }
  return out;
}

std::vector<GroupPatternSet> filter_unique_patterns(std::span<const GroupPatternSet> sets) {
  std::vector<FrequentSubstringSet> as_sets(sets.size());
  for (std::size_t i = 0; i < sets.size(); ++i) as_sets[i].entries = sets[i].patterns;
  const auto unique = group_unique_check(as_sets);
  std::vector<GroupPatternSet> out;
  out.reserve(sets.size());
  for (std::size_t i = 0; i < sets.size(); ++i) {
    GroupPatternSet kept{sets[i].key, {}, sets[i].group_size};
    for (const auto& s : unique[i]) kept.patterns.emplace(s, sets[i].patterns.at(s));
    out.push_back(std::move(kept));
  }
  return out;
}

GroupPatternSet prune_contained(const GroupPatternSet& set) {
  std::vector<const std::string*> by_length;
  by_length.reserve(set.patterns.size());
  for (const auto& [s, count] : set.patterns) by_length.push_back(&s);
  std::stable_sort(by_length.begin(), by_length.end(),
                   [](const std::string* a, const std::string* b) { return a->size() > b->size(); });

  // Containment is transitive, so checking against kept patterns only is enough.
  std::vector<const std::string*> kept;
  for (const std::string* s : by_length) {
    const bool contained = std::any_of(kept.begin(), kept.end(), [&](const std::string* longer) {
      return longer->size() > s->size() && longer->find(*s) != std::string::npos;
    });
    if (!contained) kept.push_back(s);
  }
  GroupPatternSet out{set.key, {}, set.group_size};
  for (const std::string* s : kept) out.patterns.emplace(*s, set.patterns.at(*s));
  return out;
}

DependencyReport evaluate_dependency(std::span<const GroupPatternSet> unique_sets, double p,
                                     std::string candidate) {
  check_fraction(p, "p", true);
  if (unique_sets.empty()) throw InvalidArgument("evaluate_dependency needs at least one group");
  DependencyReport report;
  report.candidate = std::move(candidate);
  report.total_groups = unique_sets.size();
  report.required = ceil_fraction(p, unique_sets.size());
  for (const auto& set : unique_sets) {
    if (set.patterns.empty()) continue;
    report.supporting.push_back(set.key);
    auto& w = report.witnesses[set.key];
    for (const auto& [s, count] : set.patterns) w.push_back(s);
  }
  report.verdict = report.supporting.size() >= report.required;
  return report;
}

AttributeSelection select_attributes_on_sample(const GroupSample& sample, std::string_view target,
                                               const DependencyConfig& dependency) {
  check_fraction(dependency.p, "p", true);
  check_fraction(dependency.q, "q", true);
  const Table& table = sample.table;
  const std::size_t target_col = table.index_of(target);
  if (table.num_cols() < 2) throw InvalidArgument("attribute selection needs >= 2 attributes");

  AttributeSelection out;
  out.sampled_rows = table.num_rows();
  out.sampled_groups = sample.groups.groups.size();
  out.sampling_fallback = sample.fallback;

  Table capped = table;
  out.truncated_cells = cap_cell_length(capped, dependency.max_cell_chars);

  const bool unconstrained = dependency.p == 0.0 || dependency.q == 0.0;
  for (std::size_t col = 0; col < capped.num_cols(); ++col) {
    if (col == target_col) continue;
    const std::string& candidate = capped.schema()[col];
    DependencyReport report;
    if (unconstrained) {
      report.candidate = candidate;
      report.total_groups = sample.groups.groups.size();
      report.verdict = true;
      report.note = "unconstrained";
    } else {
      const auto& column = capped.column(col);
      const bool constant =
          std::all_of(column.begin(), column.end(), [&](const Cell& c) { return c == column.front(); });
      if (constant) {
        report.candidate = candidate;
        report.total_groups = sample.groups.groups.size();
        report.required = ceil_fraction(dependency.p, report.total_groups);
        report.verdict = false;
        report.note = "constant";
      } else {
        auto raw = detect_group_patterns(capped, sample.groups, candidate, dependency.q);
        auto unique = filter_unique_patterns(raw);
        if (dependency.prune_contained) {
          for (auto& set : unique) set = prune_contained(set);
        }
        report = evaluate_dependency(unique, dependency.p, candidate);
      }
    }
    if (report.verdict) out.selected.push_back(candidate);
    out.reports.push_back(std::move(report));
  }
  return out;
}

AttributeSelection select_attributes(const Table& table, std::string_view target,
                                     const SamplingConfig& sampling,
                                     const DependencyConfig& dependency) {
  if (table.num_cols() < 2) throw InvalidArgument("attribute selection needs >= 2 attributes");
  return select_attributes_on_sample(group_sample(table, target, sampling), target, dependency);
}

}  // namespace ldi
