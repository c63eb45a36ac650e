#include <istream>

#include <json.hpp>

#include "coronavis/corpus.hpp"

namespace coronavis {

namespace {

using nlohmann::json;

const json* find_path(const json& obj, std::initializer_list<std::string_view> path) {
  const json* cur = &obj;
  for (auto key : path) {
    if (!cur->is_object()) return nullptr;
    auto it = cur->find(key);
    if (it == cur->end() || it->is_null()) return nullptr;
    cur = &*it;
  }
  return cur;
}

std::optional<std::string> string_at(const json& obj, std::initializer_list<std::string_view> path) {
  auto v = find_path(obj, path);
  if (v && v->is_string()) return v->get<std::string>();
  return std::nullopt;
}

std::string full_text(const json& obj) {
  for (auto path : {std::initializer_list<std::string_view>{"extended_tweet", "full_text"},
                    std::initializer_list<std::string_view>{"full_text"},
                    std::initializer_list<std::string_view>{"text"}}) {
    if (auto s = string_at(obj, path)) return *s;
  }
  return {};
}

std::optional<std::string> tweet_id(const json& obj) {
  if (auto s = string_at(obj, {"id_str"})) return s;
  auto v = find_path(obj, {"id"});
  if (v && v->is_number_unsigned()) return std::to_string(v->get<std::uint64_t>());
  if (v && v->is_number_integer()) return std::to_string(v->get<std::int64_t>());
  if (v && v->is_string()) return v->get<std::string>();
  return std::nullopt;
}

std::optional<StateCode> tweet_state(const json& obj) {
  // Place tags are more precise than the free-form profile location.
  if (auto place = string_at(obj, {"place", "full_name"}))
    if (auto s = resolve_location(*place)) return s;
  if (auto loc = string_at(obj, {"user", "location"}))
    if (auto s = resolve_location(*loc)) return s;
  if (auto loc = string_at(obj, {"location"}))
    if (auto s = resolve_location(*loc)) return s;
  return std::nullopt;
}

}  // namespace

IngestResult ingest_raw(std::istream& in, std::string_view salt) {
  IngestResult result;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    ++result.stats.lines;
    json obj = json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (obj.is_discarded() || !obj.is_object()) {
      ++result.stats.malformed;
      continue;
    }
    auto id = tweet_id(obj);
    auto created = string_at(obj, {"created_at"});
    auto handle = string_at(obj, {"user", "screen_name"});
    if (!handle) handle = string_at(obj, {"user", "id_str"});
    auto timestamp = created ? parse_timestamp(*created) : std::nullopt;
    if (!id || id->empty() || !timestamp || !handle || handle->empty()) {
      ++result.stats.malformed;
      continue;
    }
    auto raw = full_text(obj);
    if (!keyword_match(raw)) {
      ++result.stats.no_keyword;
      continue;
    }
    auto state = tweet_state(obj);
    if (!state) {
      ++result.stats.no_location;
      continue;
    }
    auto verified = find_path(obj, {"user", "verified"});
    TweetRecord rec;
    rec.tweet_id = std::move(*id);
    rec.created_at = *timestamp;
    rec.loc = *state;
    rec.text = normalize_text(raw);
    rec.user_id = anonymize_user(*handle, salt);
    rec.verified = verified && verified->is_boolean() && verified->get<bool>();
    result.records.push_back(std::move(rec));
    ++result.stats.kept;
  }
  return result;
}

}  // namespace coronavis
