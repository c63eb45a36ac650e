#include <algorithm>
#include <array>
#include <cctype>
#include <stdexcept>
#include <string>
#include <utility>

#include "coronavis/corpus.hpp"

namespace coronavis {

namespace {

struct StateEntry {
  std::string_view code;
  std::string_view name;
};

constexpr std::array<StateEntry, StateCode::kCount> kStates{{
    {"AL", "Alabama"},        {"AK", "Alaska"},         {"AZ", "Arizona"},
    {"AR", "Arkansas"},       {"CA", "California"},     {"CO", "Colorado"},
    {"CT", "Connecticut"},    {"DE", "Delaware"},       {"DC", "District of Columbia"},
    {"FL", "Florida"},        {"GA", "Georgia"},        {"HI", "Hawaii"},
    {"ID", "Idaho"},          {"IL", "Illinois"},       {"IN", "Indiana"},
    {"IA", "Iowa"},           {"KS", "Kansas"},         {"KY", "Kentucky"},
    {"LA", "Louisiana"},      {"ME", "Maine"},          {"MD", "Maryland"},
    {"MA", "Massachusetts"},  {"MI", "Michigan"},       {"MN", "Minnesota"},
    {"MS", "Mississippi"},    {"MO", "Missouri"},       {"MT", "Montana"},
    {"NE", "Nebraska"},       {"NV", "Nevada"},         {"NH", "New Hampshire"},
    {"NJ", "New Jersey"},     {"NM", "New Mexico"},     {"NY", "New York"},
    {"NC", "North Carolina"}, {"ND", "North Dakota"},   {"OH", "Ohio"},
    {"OK", "Oklahoma"},       {"OR", "Oregon"},         {"PA", "Pennsylvania"},
    {"RI", "Rhode Island"},   {"SC", "South Carolina"}, {"SD", "South Dakota"},
    {"TN", "Tennessee"},      {"TX", "Texas"},          {"UT", "Utah"},
    {"VT", "Vermont"},        {"VA", "Virginia"},       {"WA", "Washington"},
    {"WV", "West Virginia"},  {"WI", "Wisconsin"},      {"WY", "Wyoming"},
}};

std::string lower_trim(std::string_view s) {
  auto first = s.find_first_not_of(" \t\r\n.");
  if (first == std::string_view::npos) return {};
  auto last = s.find_last_not_of(" \t\r\n.");
  std::string out(s.substr(first, last - first + 1));
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string_view trim(std::string_view s) {
  auto first = s.find_first_not_of(" \t\r\n.");
  if (first == std::string_view::npos) return {};
  auto last = s.find_last_not_of(" \t\r\n.");
  return s.substr(first, last - first + 1);
}

std::optional<std::size_t> by_name(std::string_view lowered) {
  static const auto names = [] {
    std::array<std::string, StateCode::kCount> out;
    for (std::size_t i = 0; i < kStates.size(); ++i) out[i] = lower_trim(kStates[i].name);
    return out;
  }();
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == lowered) return i;
  if (lowered == "washington dc" || lowered == "washington d.c" || lowered == "d.c")
    return 8;
  return std::nullopt;
}

// Bare abbreviations must be upper case; "in", "me", "or" are too common as
// words to accept in lower case.
std::optional<std::size_t> by_abbreviation(std::string_view s) {
  if (s.size() != 2) return std::nullopt;
  for (std::size_t i = 0; i < kStates.size(); ++i)
    if (kStates[i].code == s) return i;
  return std::nullopt;
}

std::optional<std::size_t> resolve_component(std::string_view part) {
  auto t = trim(part);
  if (t.empty()) return std::nullopt;
  if (auto i = by_abbreviation(t)) return i;
  return by_name(lower_trim(t));
}

bool is_country_suffix(std::string_view part) {
  auto l = lower_trim(part);
  return l == "usa" || l == "us" || l == "u.s" || l == "u.s.a" || l == "united states" ||
         l == "united states of america" || l == "america";
}

}  // namespace

struct StateTable {
  template <std::size_t... I>
  static constexpr std::array<StateCode, sizeof...(I)> make_all(std::index_sequence<I...>) {
    return {StateCode(static_cast<std::uint8_t>(I))...};
  }
};

namespace {
constexpr auto kAllCodes = StateTable::make_all(std::make_index_sequence<StateCode::kCount>{});
}  // namespace

std::optional<StateCode> StateCode::parse(std::string_view code) {
  if (auto i = by_abbreviation(code)) return StateCode(static_cast<std::uint8_t>(*i));
  return std::nullopt;
}

StateCode StateCode::from_index(std::size_t index) {
  if (index >= kCount) throw std::out_of_range("state index out of range");
  return StateCode(static_cast<std::uint8_t>(index));
}

std::span<const StateCode> StateCode::all() { return kAllCodes; }

std::string_view StateCode::code() const { return kStates[index_].code; }
std::string_view StateCode::name() const { return kStates[index_].name; }

std::optional<StateCode> resolve_location(std::string_view location) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    auto comma = location.find(',', start);
    parts.push_back(location.substr(start, comma == std::string_view::npos ? comma : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  while (parts.size() > 1 && is_country_suffix(parts.back())) parts.pop_back();
  if (parts.empty()) return std::nullopt;

  std::optional<std::size_t> hit;
  if (parts.size() == 1) {
    hit = resolve_component(parts.front());
  } else {
    // "City, ST" / "City, State": only the trailing component decides.
    hit = resolve_component(parts.back());
  }
  if (!hit) return std::nullopt;
  return StateCode::from_index(*hit);
}

}  // namespace coronavis
