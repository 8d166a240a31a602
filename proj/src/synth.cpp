#include "ldi/synth.hpp"

#include <array>
#include <cctype>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "ldi/random.hpp"

namespace ldi::synth {

namespace {

constexpr std::array<const char*, 10> kCities = {
    "Las Vegas", "Los Angeles", "Miami",   "Toronto",  "Albany",
    "Boston",    "Santo Domingo", "Jacksonville", "Oxford", "Berlin"};

// first digits pairwise distinct, last digits pairwise distinct, and no code
// occurs inside another city's "+1AAA-" prefix
constexpr std::array<const char*, 10> kAreaCodes = {"702", "213", "305", "416", "518",
                                                    "617", "809", "904", "181", "030"};

constexpr std::string_view kAlnumUpper = "ABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789";
constexpr std::string_view kBase64 =
    "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
constexpr std::string_view kAlnum =
    "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789";

std::string random_string(Rng& rng, std::string_view alphabet, std::size_t length) {
  std::string out(length, ' ');
  for (auto& c : out) c = alphabet[rng.below(alphabet.size())];
  return out;
}

template <std::size_t N>
const char* pick(Rng& rng, const std::array<const char*, N>& values) {
  return values[rng.below(N)];
}

// Hands out 3-grams to cities; a value may only use grams it owns or that
// nobody owns yet.
class GramRegistry {
 public:
  bool admissible(const std::string& value, std::size_t owner) const {
    for (std::size_t i = 0; i + 3 <= value.size(); ++i) {
      auto it = owner_.find(value.substr(i, 3));
      if (it != owner_.end() && it->second != owner) return false;
    }
    return true;
  }
  void claim(const std::string& value, std::size_t owner) {
    for (std::size_t i = 0; i + 3 <= value.size(); ++i) owner_.emplace(value.substr(i, 3), owner);
  }

 private:
  std::unordered_map<std::string, std::size_t> owner_;
};

std::string format_phone(std::size_t style, const std::string& area, const std::string& local) {
  switch (style) {
    case 0: return "+1" + area + "-" + local;
    case 1: return area + "/" + local;
    default: return area + "-" + local;
  }
}

std::string draw_phone(Rng& rng, GramRegistry& grams, std::size_t city) {
  for (int attempt = 0; attempt < 10000; ++attempt) {
    std::string phone =
        format_phone(rng.below(3), kAreaCodes[city], random_string(rng, kAlnumUpper, 4));
    if (grams.admissible(phone, city)) {
      grams.claim(phone, city);
      return phone;
    }
  }
  throw std::logic_error("phone generator ran out of admissible values");
}

void claim_prefixes(GramRegistry& grams) {
  for (std::size_t c = 0; c < kCities.size(); ++c) {
    for (std::size_t style = 0; style < 3; ++style) {
      grams.claim(format_phone(style, kAreaCodes[c], ""), c);
    }
  }
}

}  // namespace

Table area_code_table(std::uint64_t seed, std::size_t rows_per_city) {
  Rng rng(seed);
  GramRegistry grams;
  claim_prefixes(grams);

  constexpr std::array<const char*, 8> cuisines = {"Thai",    "Italian", "Mexican", "Diner",
                                                   "Seafood", "Vegan",   "Burgers", "Sushi"};
  constexpr std::array<const char*, 4> prices = {"$", "$$", "$$$", "$$$$"};

  std::vector<std::vector<Cell>> rows;
  rows.reserve(kCities.size() * rows_per_city);
  for (std::size_t r = 0; r < kCities.size() * rows_per_city; ++r) {
    const std::size_t city = r % kCities.size();
    const std::string phone = draw_phone(rng, grams, city);

    rows.push_back({
        std::string(kCities[city]),
        phone,
        "Place " + random_string(rng, kAlnumUpper, 6),
        std::string(pick(rng, cuisines)),
        std::string(pick(rng, prices)),
        std::to_string(1 + rng.below(4)) + "." + std::to_string(rng.below(10)),
        std::to_string(rng.below(5000)),
        random_string(rng, kAlnum, 500),
        random_string(rng, kAlnum, 500),
    });
  }
  return Table::from_rows({"City", "Phone", "Name", "Cuisine", "Price", "Rating", "Votes", "Review",
                           "Notes"},
                          std::move(rows));
}

Table zomato_like_table(std::uint64_t seed, std::size_t rows_per_city) {
  Rng rng(seed);
  GramRegistry grams;
  claim_prefixes(grams);
  constexpr std::array<const char*, 10> localities = {
      "Summerlin",  "Westwood",  "Wynwood",   "Yorkville", "Pine Hills",
      "Back Bay",   "Gazcue",    "Riverside", "Jericho",   "Kreuzberg"};
  constexpr std::array<const char*, 8> streets = {"Main St",   "Oak Ave",    "Elm St",  "High Rd",
                                                  "Market St", "Church Ln", "Lake Dr", "Park Ave"};
  constexpr std::array<const char*, 12> name_words = {
      "Golden", "Spoon", "House", "Garden", "Kitchen", "Corner",
      "Royal",  "Table", "Grill", "Bistro", "Family",  "Street"};
  constexpr std::array<const char*, 12> cuisines = {
      "North Indian", "Chinese", "Italian",  "Mexican", "Cafe",    "Fast Food",
      "Desserts",     "Seafood", "Japanese", "Thai",    "Bakery", "Continental"};
  constexpr std::array<const char*, 5> rating_text = {"Poor", "Average", "Good", "Very Good",
                                                      "Excellent"};
  constexpr std::array<const char*, 5> rating_color = {"Red", "Orange", "Yellow", "Green",
                                                       "Dark Green"};
  constexpr std::array<const char*, 2> yes_no = {"Yes", "No"};
  constexpr std::string_view kSlug = "abcdefghijklmnopqrstuvwxyz0123456789";

  std::vector<std::string> schema = {
      "City",          "Phone",        "Address",           "Restaurant Name", "Url",
      "Cuisines",      "Average Cost", "Currency",          "Has Table booking",
      "Has Online delivery", "Is delivering now", "Price range", "Aggregate rating",
      "Rating color",  "Rating text",  "Votes",             "Photo"};

  std::vector<std::vector<Cell>> rows;
  rows.reserve(kCities.size() * rows_per_city);
  for (std::size_t r = 0; r < kCities.size() * rows_per_city; ++r) {
    const std::size_t city = r % kCities.size();
    const std::string phone = draw_phone(rng, grams, city);
    const std::size_t locality = rng.below(20) == 0 ? rng.below(localities.size()) : city;
    const std::string address =
        std::to_string(1 + rng.below(999)) + " " + pick(rng, streets) + ", " + localities[locality];

    const std::string name = std::string(pick(rng, name_words)) + " " + pick(rng, name_words);
    std::string slug;
    for (char c : name) slug += c == ' ' ? '-' : static_cast<char>(std::tolower(c));
    std::string cuisine = pick(rng, cuisines);
    for (std::size_t extra = rng.below(3); extra > 0; --extra) cuisine += std::string(", ") + pick(rng, cuisines);
    const std::size_t stars = rng.below(5);

    rows.push_back({
        std::string(kCities[city]),
        phone,
        address,
        name,
        "https://www.example.com/" + slug + "-" + random_string(rng, kSlug, 6),
        cuisine,
        std::to_string(10 * (1 + rng.below(300))),
        std::string("Dollar($)"),
        std::string(pick(rng, yes_no)),
        std::string(pick(rng, yes_no)),
        std::string(pick(rng, yes_no)),
        std::to_string(1 + rng.below(4)),
        std::to_string(1 + stars) + "." + std::to_string(rng.below(10)),
        std::string(rating_color[stars]),
        std::string(rating_text[stars]),
        std::to_string(rng.below(3000)),
        random_string(rng, kBase64, 400),
    });
  }
  return Table::from_rows(std::move(schema), std::move(rows));
}

}  // namespace ldi::synth
