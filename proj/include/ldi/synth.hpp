#pragma once

#include <cstdint>

#include "ldi/table.hpp"

namespace ldi::synth {

/// City (target) plus Phone, whose area code fixes the city and is written as
/// "+1AAA-LLLL", "AAA/LLLL" or "AAA-LLLL", and seven unrelated columns, two of
/// them 500-character gibberish. Values of different cities never share a
/// substring of three or more characters in Phone. 10 cities x rows_per_city.
Table area_code_table(std::uint64_t seed, std::size_t rows_per_city = 100);

/// Restaurant-listing shaped table: City (target) plus 16 attributes of which
/// only Phone (as above) and Address (naming a city-specific locality in about
/// 95% of rows) depend on the city. The rest are categorical, numeric, or
/// encoded-blob columns drawn independently of the city.
Table zomato_like_table(std::uint64_t seed, std::size_t rows_per_city = 100);

}  // namespace ldi::synth
