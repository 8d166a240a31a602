#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ldi/table.hpp"
#include "ldi/tuple_selection.hpp"

namespace ldi {

struct PromptExample {
  std::vector<std::string> values;  // aligned with PromptSpec::attributes
  std::string target_value;
};

/// Context, examples, and a query serialized as key-value pairs. The target
/// attribute is always emitted last, on its own line.
struct PromptSpec {
  std::string context;
  std::vector<std::string> attributes;  // non-target attributes, in order
  std::string target;
  std::vector<PromptExample> examples;
  std::vector<std::string> query;
};

std::string default_context(std::string_view target);

/// Builds the spec for one query row. MISSING values serialize as "".
PromptSpec build_prompt_spec(const Table& table, const ExampleSet& examples,
                             std::span<const std::string> attributes, std::string_view target,
                             std::string context);

/// Deterministic serialization:
///
///   [Context]
///     <context>
///   [Examples]
///     Example 1:
///     A: a1, B: b1
///     Target: t1,
///   [Query]
///     A: ax, B: bx
///     Target: ?
///
/// Newlines inside values become single spaces. With no examples the
/// [Examples] block is omitted.
std::string serialize_prompt(const PromptSpec& spec);

std::size_t count_whitespace_tokens(std::string_view text);

/// Token accounting for total ~= context + k * a_s * tau. Here "context" is
/// every token outside the examples block, and tau is the examples block's
/// token count spread over its k * a_s values.
struct PromptStats {
  std::size_t context_tokens = 0;  // lambda
  double value_tokens = 0.0;       // tau
  std::size_t examples = 0;        // k
  std::size_t attributes = 0;      // a_s
  double total_estimate = 0.0;
  std::size_t actual_tokens = 0;
  std::size_t actual_chars = 0;
};

PromptStats prompt_stats(const PromptSpec& spec);

/// Inverse of serialize_prompt, used by the mock backend. Values that
/// themselves contain ", Name: " sequences cannot be split back reliably.
struct ParsedPrompt {
  struct Pair {
    std::string attribute;
    std::string value;
  };
  struct ParsedExample {
    std::vector<Pair> pairs;
    std::string target_value;
  };
  std::string target;
  std::vector<ParsedExample> examples;
  std::vector<Pair> query;
};

ParsedPrompt parse_prompt(std::string_view prompt);

}  // namespace ldi
