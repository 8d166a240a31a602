#pragma once

#include <string_view>

namespace ldi {

/// Case-sensitive equality after normalize_answer on both sides.
bool exact_match(std::string_view predicted, std::string_view truth);

/// Clipped unigram-overlap F1 over whitespace tokens, ASCII case-folded.
/// 1 when both sides are empty, 0 when exactly one is.
double rouge1_f1(std::string_view predicted, std::string_view truth);

}  // namespace ldi
