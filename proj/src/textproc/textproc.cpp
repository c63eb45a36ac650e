#include <fstream>

#include "coronavis/textproc.hpp"

namespace coronavis {

namespace {

bool is_alnum(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9'); }

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

}  // namespace

TokenList tokenize(std::string_view text) {
  TokenList tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    std::size_t start = i;
    while (i < text.size() && !is_space(text[i])) ++i;
    std::size_t end = i;
    while (start < end && !is_alnum(text[start])) ++start;
    while (end > start && !is_alnum(text[end - 1])) --end;
    if (end - start >= 2) tokens.emplace_back(text.substr(start, end - start));
  }
  return tokens;
}

StopwordPolicy::StopwordPolicy(WordSet standard, WordSet domain, WordSet extra)
    : standard_(std::move(standard)), domain_(std::move(domain)), extra_(std::move(extra)) {
  domain_.insert({"covid", "corona", "rt"});
}

StopwordPolicy::WordSet StopwordPolicy::load_words(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open word list " + path.string());
  WordSet words;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && is_space(line.back())) line.pop_back();
    auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    words.insert(line.substr(first));
  }
  return words;
}

StopwordPolicy StopwordPolicy::from_files(const std::filesystem::path& standard,
                                          const std::filesystem::path& domain) {
  return StopwordPolicy(load_words(standard), load_words(domain));
}

bool StopwordPolicy::contains(std::string_view word) const {
  std::string key(word);
  return standard_.count(key) || domain_.count(key) || extra_.count(key);
}

TokenList remove_stopwords(const TokenList& tokens, const StopwordPolicy& policy) {
  TokenList out;
  out.reserve(tokens.size());
  for (const auto& t : tokens)
    if (!policy.contains(t)) out.push_back(t);
  return out;
}

TokenList content_tokens(std::string_view text, const StopwordPolicy& policy) {
  TokenList tokens = tokenize(text);
  std::erase_if(tokens, [&](const std::string& t) { return policy.contains(t); });
  return tokens;
}

std::vector<NGram> ngrams(const TokenList& tokens, std::size_t n) {
  if (n == 0) throw InvalidArity("n-gram arity must be positive");
  std::vector<NGram> out;
  if (tokens.size() < n) return out;
  out.reserve(tokens.size() - n + 1);
  for (std::size_t i = 0; i + n <= tokens.size(); ++i)
    out.emplace_back(tokens.begin() + static_cast<std::ptrdiff_t>(i),
                     tokens.begin() + static_cast<std::ptrdiff_t>(i + n));
  return out;
}

}  // namespace coronavis
