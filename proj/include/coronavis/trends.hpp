#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "coronavis/corpus.hpp"
#include "coronavis/sentiment.hpp"
#include "coronavis/textproc.hpp"

namespace coronavis {

struct DailyCount {
  Date date;
  std::size_t count = 0;
  bool operator==(const DailyCount&) const = default;
};

struct TopicTrendSeries {
  std::string topic;
  Scope scope;
  std::size_t total = 0;
  std::vector<DailyCount> points;
};

/// Curated watch-list of words and phrases: lowercase, non-empty, unique.
class FeaturedTopicList {
 public:
  FeaturedTopicList() = default;
  explicit FeaturedTopicList(std::vector<std::string> topics);

  static FeaturedTopicList load(const std::filesystem::path& path);

  const std::vector<std::string>& topics() const { return topics_; }
  std::size_t size() const { return topics_.size(); }
  bool empty() const { return topics_.empty(); }

 private:
  std::vector<std::string> topics_;
};

// Every series below spans the full corpus date range (not just the scope's),
// so per-state and nationwide series line up day for day.

std::vector<DailyCount> tweet_frequency(std::span<const TweetRecord> records, const Scope& scope);

RankedCounts<std::string> top_words(std::span<const TweetRecord> records, const Scope& scope, std::size_t k,
                                    const StopwordPolicy& policy);

using Bigram = std::pair<std::string, std::string>;

/// Pairs are formed inside each tweet's filtered token list only.
RankedCounts<Bigram> top_bigrams(std::span<const TweetRecord> records, const Scope& scope, std::size_t k,
                                 const StopwordPolicy& policy);

/// Per-day number of in-scope tweets whose filtered tokens contain `topic`
/// as a contiguous subsequence (the topic is tokenized and filtered the same
/// way).
TopicTrendSeries topic_trend(std::span<const TweetRecord> records, const Scope& scope, const std::string& topic,
                             const StopwordPolicy& policy);

/// Top-k words by number of in-scope tweets containing them over the whole
/// corpus span, each with its daily series.
std::vector<TopicTrendSeries> frequent_topic_trends(std::span<const TweetRecord> records, const Scope& scope,
                                                    std::size_t k, const StopwordPolicy& policy);

std::vector<TopicTrendSeries> featured_topic_trends(std::span<const TweetRecord> records, const Scope& scope,
                                                    const FeaturedTopicList& featured, std::size_t k,
                                                    const StopwordPolicy& policy);

}  // namespace coronavis
