#pragma once

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace coronavis {

using TokenList = std::vector<std::string>;

/// Whitespace split, edge punctuation stripped, tokens shorter than 2 dropped.
/// Inner punctuation survives, so "covid-19" stays whole.
TokenList tokenize(std::string_view text);

class StopwordPolicy {
 public:
  using WordSet = std::unordered_set<std::string>;

  /// `covid`, `corona` and `rt` are always part of the domain set.
  StopwordPolicy(WordSet standard = {}, WordSet domain = {}, WordSet extra = {});

  /// One word per line; blank lines and `#` comments ignored.
  static WordSet load_words(const std::filesystem::path& path);
  static StopwordPolicy from_files(const std::filesystem::path& standard,
                                   const std::filesystem::path& domain);

  bool contains(std::string_view word) const;

  const WordSet& standard() const { return standard_; }
  const WordSet& domain() const { return domain_; }
  const WordSet& extra() const { return extra_; }
  void add_extra(std::string word) { extra_.insert(std::move(word)); }

 private:
  WordSet standard_;
  WordSet domain_;
  WordSet extra_;
};

TokenList remove_stopwords(const TokenList& tokens, const StopwordPolicy& policy);

/// tokenize + remove_stopwords
TokenList content_tokens(std::string_view text, const StopwordPolicy& policy);

class InvalidArity : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using NGram = std::vector<std::string>;

std::vector<NGram> ngrams(const TokenList& tokens, std::size_t n);

template <typename Key>
using RankedCounts = std::vector<std::pair<Key, std::size_t>>;

/// Count-descending, key-ascending order, truncated to k.
template <typename Key, typename Map>
RankedCounts<Key> rank_counts(const Map& counts, std::size_t k);

}  // namespace coronavis

#include "coronavis/detail/rank_counts.hpp"
