#include "ldi/prompt.hpp"

#include <sstream>

#include "ldi/errors.hpp"

namespace ldi {
namespace {

std::string one_line(std::string_view value) {
  std::string out;
  out.reserve(value.size());
  for (std::size_t i = 0; i < value.size(); ++i) {
    const char ch = value[i];
    if (ch == '\r' || ch == '\n') {
      if (ch == '\r' && i + 1 < value.size() && value[i + 1] == '\n') ++i;
      out.push_back(' ');
    } else {
      out.push_back(ch);
    }
  }
  return out;
}

void append_pairs(std::string& out, const std::vector<std::string>& names,
                  const std::vector<std::string>& values) {
  if (names.empty()) return;
  out += "  ";
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out += ", ";
    out += one_line(names[i]);
    out += ": ";
    out += one_line(values[i]);
  }
  out += '\n';
}

std::string examples_block(const PromptSpec& spec) {
  std::string out;
  for (std::size_t i = 0; i < spec.examples.size(); ++i) {
    out += "  Example " + std::to_string(i + 1) + ":\n";
    append_pairs(out, spec.attributes, spec.examples[i].values);
    out += "  " + one_line(spec.target) + ": " + one_line(spec.examples[i].target_value) + ",\n";
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<ParsedPrompt::Pair> parse_pairs(std::string_view line) {
  std::vector<ParsedPrompt::Pair> pairs;
  std::size_t pos = 0;
  while (pos <= line.size()) {
    std::size_t comma = line.find(", ", pos);
    std::string_view piece =
        line.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    const std::size_t colon = piece.find(": ");
    if (colon != std::string_view::npos || pairs.empty()) {
      ParsedPrompt::Pair p;
      if (colon == std::string_view::npos) {
        p.attribute = std::string(piece);
      } else {
        p.attribute = std::string(piece.substr(0, colon));
        p.value = std::string(piece.substr(colon + 2));
      }
      pairs.push_back(std::move(p));
    } else {
      pairs.back().value += ", ";
      pairs.back().value += piece;
    }
    if (comma == std::string_view::npos) break;
    pos = comma + 2;
  }
  return pairs;
}

}  // namespace

std::string default_context(std::string_view target) {
  return "You are a data imputation assistant. Each record is given as attribute: value pairs. "
         "Use the examples to infer the missing value of the attribute '" +
         std::string(target) + "' in the query record. Answer with the value only.";
}

PromptSpec build_prompt_spec(const Table& table, const ExampleSet& examples,
                             std::span<const std::string> attributes, std::string_view target,
                             std::string context) {
  PromptSpec spec;
  spec.context = std::move(context);
  spec.attributes.assign(attributes.begin(), attributes.end());
  spec.target = std::string(target);
  const std::size_t target_col = table.index_of(target);
  std::vector<std::size_t> cols;
  for (const auto& a : attributes) cols.push_back(table.index_of(a));

  auto values_of = [&](std::size_t row) {
    std::vector<std::string> values;
    for (std::size_t c : cols) values.push_back(table.cell(row, c).value_or(""));
    return values;
  };
  for (const auto& e : examples.examples) {
    const Cell& t = table.cell(e.row, target_col);
    if (!t) throw InvalidArgument("example row " + std::to_string(e.row) + " has no target value");
    spec.examples.push_back(PromptExample{values_of(e.row), *t});
  }
  spec.query = values_of(examples.query_row);
  return spec;
}

std::string serialize_prompt(const PromptSpec& spec) {
  for (const auto& e : spec.examples) {
    if (e.values.size() != spec.attributes.size()) {
      throw InvalidArgument("example does not match the attribute list");
    }
  }
  if (spec.query.size() != spec.attributes.size()) {
    throw InvalidArgument("query does not match the attribute list");
  }
  std::string out = "[Context]\n  " + one_line(spec.context) + "\n";
  if (!spec.examples.empty()) {
    out += "[Examples]\n";
    out += examples_block(spec);
  }
  out += "[Query]\n";
  append_pairs(out, spec.attributes, spec.query);
  out += "  " + one_line(spec.target) + ": ?\n";
  return out;
}

std::size_t count_whitespace_tokens(std::string_view text) {
  std::size_t n = 0;
  bool in_token = false;
  for (char ch : text) {
    const bool space = ch == ' ' || ch == '\n' || ch == '\t' || ch == '\r' || ch == '\f' || ch == '\v';
    if (!space && !in_token) ++n;
    in_token = !space;
  }
  return n;
}

PromptStats prompt_stats(const PromptSpec& spec) {
  const std::string full = serialize_prompt(spec);
  PromptStats stats;
  stats.examples = spec.examples.size();
  stats.attributes = spec.attributes.size();
  stats.actual_tokens = count_whitespace_tokens(full);
  stats.actual_chars = full.size();
  const std::size_t example_tokens =
      spec.examples.empty() ? 0 : count_whitespace_tokens(examples_block(spec));
  const std::size_t header_tokens = spec.examples.empty() ? 0 : 1;  // "[Examples]"
  stats.context_tokens = stats.actual_tokens - example_tokens - header_tokens;
  const std::size_t cells = stats.examples * stats.attributes;
  stats.value_tokens = cells == 0 ? 0.0 : static_cast<double>(example_tokens) / static_cast<double>(cells);
  stats.total_estimate = static_cast<double>(stats.context_tokens) +
                         static_cast<double>(cells) * stats.value_tokens;
  return stats;
}

ParsedPrompt parse_prompt(std::string_view prompt) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < prompt.size()) {
    std::size_t nl = prompt.find('\n', pos);
    if (nl == std::string_view::npos) nl = prompt.size();
    lines.push_back(prompt.substr(pos, nl - pos));
    pos = nl + 1;
  }

  std::size_t examples_at = lines.size();
  std::size_t query_at = lines.size();
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (trim(lines[i]) == "[Examples]") examples_at = i;
    if (trim(lines[i]) == "[Query]") query_at = i;
  }
  if (query_at == lines.size()) throw ParseError("prompt has no [Query] section");

  auto split_target = [](std::string_view line, std::string& name, std::string& value) {
    line = trim(line);
    const std::size_t colon = line.find(": ");
    if (colon == std::string_view::npos) throw ParseError("malformed target line in prompt");
    name = std::string(line.substr(0, colon));
    value = std::string(line.substr(colon + 2));
  };

  ParsedPrompt parsed;
  // Query: optional attribute line, then "Target: ?".
  std::vector<std::string_view> query_lines;
  for (std::size_t i = query_at + 1; i < lines.size(); ++i) {
    if (!trim(lines[i]).empty()) query_lines.push_back(lines[i]);
  }
  if (query_lines.empty()) throw ParseError("prompt query is empty");
  std::string unanswered;
  split_target(query_lines.back(), parsed.target, unanswered);
  if (query_lines.size() > 1) parsed.query = parse_pairs(trim(query_lines.front()));

  if (examples_at < query_at) {
    std::vector<std::vector<std::string_view>> blocks;
    for (std::size_t i = examples_at + 1; i < query_at; ++i) {
      const auto line = trim(lines[i]);
      if (line.rfind("Example ", 0) == 0 && !line.empty() && line.back() == ':') {
        blocks.emplace_back();
      } else if (!blocks.empty() && !line.empty()) {
        blocks.back().push_back(line);
      }
    }
    for (const auto& block : blocks) {
      if (block.empty()) throw ParseError("example without a target line");
      ParsedPrompt::ParsedExample ex;
      std::string name;
      std::string_view target_line = block.back();
      if (!target_line.empty() && target_line.back() == ',') target_line.remove_suffix(1);
      split_target(target_line, name, ex.target_value);
      if (block.size() > 1) ex.pairs = parse_pairs(block.front());
      parsed.examples.push_back(std::move(ex));
    }
  }
  return parsed;
}

}  // namespace ldi
