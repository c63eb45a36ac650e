#include <openssl/evp.h>
#include <openssl/hmac.h>

#include <array>
#include <unordered_set>

#include "coronavis/corpus.hpp"

namespace coronavis {

namespace {

char ascii_lower(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

bool is_word_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
}

bool starts_with_ci(std::string_view s, std::size_t pos, std::string_view prefix) {
  if (pos + prefix.size() > s.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i)
    if (ascii_lower(s[pos + i]) != prefix[i]) return false;
  return true;
}

// Length of a URL starting at `pos`, or 0.
std::size_t url_length(std::string_view s, std::size_t pos) {
  if (!(starts_with_ci(s, pos, "http://") || starts_with_ci(s, pos, "https://") ||
        starts_with_ci(s, pos, "www.")))
    return 0;
  std::size_t end = pos;
  while (end < s.size() && !is_space(s[end])) ++end;
  return end - pos;
}

bool keep(char c) { return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '\'' || c == '#'; }

}  // namespace

bool keyword_match(std::string_view raw_text) {
  std::string lowered(raw_text);
  for (auto& c : lowered) c = ascii_lower(c);
  return lowered.find("covid") != std::string::npos || lowered.find("corona") != std::string::npos;
}

std::string normalize_text(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  bool pending_space = false;
  std::size_t i = 0;
  while (i < raw.size()) {
    if (auto n = url_length(raw, i)) {
      i += n;
      continue;
    }
    char c = raw[i];
    if (c == '@' && i + 1 < raw.size() && is_word_char(raw[i + 1])) {
      ++i;
      while (i < raw.size() && is_word_char(raw[i])) ++i;
      continue;
    }
    ++i;
    if (is_space(c)) {
      pending_space = !out.empty();
      continue;
    }
    c = ascii_lower(c);
    if (!keep(c)) continue;
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(c);
  }
  return out;
}

std::string anonymize_user(std::string_view raw_handle, std::string_view salt) {
  if (raw_handle.empty()) throw CorpusError(CorpusError::Kind::invalid_handle, 0, "empty user handle");
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  HMAC(EVP_sha256(), salt.data(), static_cast<int>(salt.size()),
       reinterpret_cast<const unsigned char*>(raw_handle.data()), raw_handle.size(), digest.data(),
       &len);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(16);
  for (unsigned int b = 0; b < 8; ++b) {
    out.push_back(kHex[digest[b] >> 4]);
    out.push_back(kHex[digest[b] & 0xF]);
  }
  return out;
}

std::vector<TweetRecord> dedup(std::span<const TweetRecord> records) {
  std::unordered_set<std::string_view> seen;
  seen.reserve(records.size());
  std::vector<TweetRecord> out;
  out.reserve(records.size());
  for (const auto& r : records)
    if (seen.insert(r.tweet_id).second) out.push_back(r);
  return out;
}

}  // namespace coronavis
