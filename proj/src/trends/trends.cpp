#include <algorithm>
#include <fstream>
#include <map>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "coronavis/trends.hpp"

namespace coronavis {

namespace {

std::vector<DailyCount> empty_series(const DateRange& range) {
  std::vector<DailyCount> out;
  if (range.empty()) return out;
  out.reserve(static_cast<std::size_t>(range.days()));
  for (Date d = range.from; d <= range.to; d += std::chrono::days{1}) out.push_back({d, 0});
  return out;
}

std::size_t slot(const DateRange& range, Timestamp t) {
  return static_cast<std::size_t>((day_of(t) - range.from).count());
}

bool contains_phrase(const TokenList& tokens, const TokenList& phrase) {
  if (phrase.empty() || phrase.size() > tokens.size()) return false;
  return std::search(tokens.begin(), tokens.end(), phrase.begin(), phrase.end()) != tokens.end();
}

std::string lower_trim(const std::string& s) {
  auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  auto last = s.find_last_not_of(" \t\r\n");
  std::string out = s.substr(first, last - first + 1);
  for (auto& c : out)
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  return out;
}

}  // namespace

FeaturedTopicList::FeaturedTopicList(std::vector<std::string> topics) {
  std::unordered_set<std::string> seen;
  for (auto& t : topics) {
    auto clean = lower_trim(t);
    if (clean.empty()) throw std::invalid_argument("featured topic entries must be non-empty");
    if (!seen.insert(clean).second) throw std::invalid_argument("duplicate featured topic: " + clean);
    topics_.push_back(std::move(clean));
  }
}

FeaturedTopicList FeaturedTopicList::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open featured topics " + path.string());
  std::vector<std::string> topics;
  std::string line;
  while (std::getline(in, line)) {
    auto clean = lower_trim(line);
    if (clean.empty() || clean.front() == '#') continue;
    topics.push_back(std::move(clean));
  }
  return FeaturedTopicList(std::move(topics));
}

std::vector<DailyCount> tweet_frequency(std::span<const TweetRecord> records, const Scope& scope) {
  const DateRange range = corpus_range(records);
  auto series = empty_series(range);
  for (const auto& r : records)
    if (scope.contains(r.loc)) ++series[slot(range, r.created_at)].count;
  return series;
}

RankedCounts<std::string> top_words(std::span<const TweetRecord> records, const Scope& scope, std::size_t k,
                                    const StopwordPolicy& policy) {
  std::unordered_map<std::string, std::size_t> counts;
  for (const auto& r : records) {
    if (!scope.contains(r.loc)) continue;
    for (auto& w : content_tokens(r.text, policy)) ++counts[std::move(w)];
  }
  return rank_counts<std::string>(counts, k);
}

RankedCounts<Bigram> top_bigrams(std::span<const TweetRecord> records, const Scope& scope, std::size_t k,
                                 const StopwordPolicy& policy) {
  std::map<Bigram, std::size_t> counts;
  for (const auto& r : records) {
    if (!scope.contains(r.loc)) continue;
    for (auto& gram : ngrams(content_tokens(r.text, policy), 2))
      ++counts[{std::move(gram[0]), std::move(gram[1])}];
  }
  return rank_counts<Bigram>(counts, k);
}

TopicTrendSeries topic_trend(std::span<const TweetRecord> records, const Scope& scope, const std::string& topic,
                             const StopwordPolicy& policy) {
  const DateRange range = corpus_range(records);
  TopicTrendSeries series{topic, scope, 0, empty_series(range)};
  const TokenList phrase = content_tokens(topic, policy);
  for (const auto& r : records) {
    if (!scope.contains(r.loc)) continue;
    if (contains_phrase(content_tokens(r.text, policy), phrase)) {
      ++series.points[slot(range, r.created_at)].count;
      ++series.total;
    }
  }
  return series;
}

std::vector<TopicTrendSeries> frequent_topic_trends(std::span<const TweetRecord> records, const Scope& scope,
                                                    std::size_t k, const StopwordPolicy& policy) {
  const DateRange range = corpus_range(records);
  std::vector<TokenList> tokens(records.size());
  std::unordered_map<std::string, std::size_t> tweet_counts;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (!scope.contains(records[i].loc)) continue;
    tokens[i] = content_tokens(records[i].text, policy);
    std::sort(tokens[i].begin(), tokens[i].end());
    tokens[i].erase(std::unique(tokens[i].begin(), tokens[i].end()), tokens[i].end());
    for (const auto& w : tokens[i]) ++tweet_counts[w];
  }
  auto ranked = rank_counts<std::string>(tweet_counts, k);

  std::unordered_map<std::string, std::size_t> index;
  std::vector<TopicTrendSeries> out;
  out.reserve(ranked.size());
  for (auto& [word, total] : ranked) {
    index.emplace(word, out.size());
    out.push_back({word, scope, total, empty_series(range)});
  }
  for (std::size_t i = 0; i < records.size(); ++i) {
    for (const auto& w : tokens[i]) {
      auto it = index.find(w);
      if (it != index.end()) ++out[it->second].points[slot(range, records[i].created_at)].count;
    }
  }
  return out;
}

std::vector<TopicTrendSeries> featured_topic_trends(std::span<const TweetRecord> records, const Scope& scope,
                                                    const FeaturedTopicList& featured, std::size_t k,
                                                    const StopwordPolicy& policy) {
  const DateRange range = corpus_range(records);
  std::vector<TokenList> phrases;
  std::vector<TopicTrendSeries> all;
  for (const auto& topic : featured.topics()) {
    phrases.push_back(content_tokens(topic, policy));
    all.push_back({topic, scope, 0, empty_series(range)});
  }
  for (const auto& r : records) {
    if (!scope.contains(r.loc)) continue;
    const TokenList tokens = content_tokens(r.text, policy);
    for (std::size_t t = 0; t < phrases.size(); ++t) {
      if (contains_phrase(tokens, phrases[t])) {
        ++all[t].points[slot(range, r.created_at)].count;
        ++all[t].total;
      }
    }
  }
  std::sort(all.begin(), all.end(), [](const TopicTrendSeries& a, const TopicTrendSeries& b) {
    return a.total != b.total ? a.total > b.total : a.topic < b.topic;
  });
  if (all.size() > k) all.resize(k);
  return all;
}

}  // namespace coronavis
