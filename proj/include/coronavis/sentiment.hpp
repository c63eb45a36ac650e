#pragma once

// Lexicon polarity (valence-intensity rules), subjectivity, three-way labels
// and the temporal, state and cohort aggregations built on them.

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "coronavis/corpus.hpp"
#include "coronavis/textproc.hpp"

namespace coronavis {

struct PolarityScore {
  double compound = 0.0;
  double pos = 0.0;
  double neg = 0.0;
  double neu = 1.0;

  bool operator==(const PolarityScore&) const = default;
};

enum class SentimentLabel { negative, neutral, positive };

std::string_view to_string(SentimentLabel label);

/// term -> real, loaded from `term<TAB>value` lines (extra columns ignored).
class TermLexicon {
 public:
  TermLexicon() = default;
  explicit TermLexicon(std::unordered_map<std::string, double> entries) : entries_(std::move(entries)) {}

  static TermLexicon load(const std::filesystem::path& path);

  std::optional<double> find(std::string_view term) const;
  bool contains(std::string_view term) const { return find(term).has_value(); }
  std::size_t size() const { return entries_.size(); }

 private:
  std::unordered_map<std::string, double> entries_;
};

using ValenceLexicon = TermLexicon;
using SubjectivityLexicon = TermLexicon;

/// Valence-intensity scoring: per-token valence, boosters (+/-0.293), a
/// three-token negation window (x -0.74), "but"/"least"/idiom rules and
/// compound = s / sqrt(s^2 + 15).
PolarityScore score_polarity(std::string_view text, const ValenceLexicon& lexicon);

/// neutral is the open band (-0.05, 0.05).
SentimentLabel classify(const PolarityScore& score);
SentimentLabel classify(double compound);

/// Mean subjectivity over lexicon hits among tokens, 0 when none hit.
double score_subjectivity(std::string_view text, const SubjectivityLexicon& lexicon);

struct ScoredTweet {
  TweetRecord record;
  PolarityScore polarity;
  double subjectivity = 0.0;
  SentimentLabel label = SentimentLabel::neutral;

  bool operator==(const ScoredTweet&) const = default;
};

std::vector<ScoredTweet> score_records(std::span<const TweetRecord> records, const ValenceLexicon& valence,
                                       const SubjectivityLexicon& subjectivity);

/// A single state or the whole country.
struct Scope {
  std::optional<StateCode> state;

  static Scope nationwide() { return {}; }
  static Scope of(StateCode s) { return {s}; }
  bool contains(StateCode s) const { return !state || *state == s; }
  /// State code, or "US" for nationwide.
  std::string label() const;
  bool operator==(const Scope&) const = default;
};

struct Timeframe {
  enum class Kind { today, yesterday, all, custom };
  Kind kind = Kind::all;
  Date from{};
  Date to{};

  static Timeframe today() { return {Kind::today}; }
  static Timeframe yesterday() { return {Kind::yesterday}; }
  static Timeframe all_time() { return {Kind::all}; }
  static Timeframe custom(Date from, Date to) { return {Kind::custom, from, to}; }
};

/// `all` spans the corpus date range; `today`/`yesterday` resolve against the
/// injected clock date.
DateRange resolve(const Timeframe& frame, Date clock, DateRange corpus_range);

/// min..max day over all records; empty range for an empty corpus.
template <typename Records>
DateRange corpus_range(const Records& records);

struct DailySentimentPoint {
  Date date;
  std::optional<double> mean_compound;  // nullopt on days without tweets
  std::optional<double> mean_subjectivity;
  std::size_t count = 0;
};

struct DailySentimentSeries {
  Scope scope;
  std::vector<DailySentimentPoint> points;
};

DailySentimentSeries aggregate_series(std::span<const ScoredTweet> tweets, const Scope& scope,
                                      const Timeframe& frame, Date clock);

struct Histogram {
  double lo = -1.0;
  double hi = 1.0;
  std::vector<std::size_t> counts;
};

/// Uniform bins over [-1, 1]; 1.0 lands in the last bin.
Histogram sentiment_histogram(std::span<const ScoredTweet> tweets, std::size_t bins);
std::size_t histogram_bin(double compound, std::size_t bins);

enum class Cohort { all, verified, nonverified };

std::string_view to_string(Cohort cohort);
std::optional<Cohort> parse_cohort(std::string_view text);
bool in_cohort(const TweetRecord& r, Cohort cohort);

/// negative, neutral, positive
using LabelCounts = std::array<std::size_t, 3>;
LabelCounts label_counts(std::span<const ScoredTweet> tweets, Cohort cohort);

struct CohortStats {
  Cohort cohort = Cohort::all;
  std::size_t tweet_count = 0;
  std::size_t user_count = 0;
  std::size_t max_tweets_single_user = 0;
  /// negative, neutral, positive shares; all zero for an empty cohort.
  std::array<double, 3> label_share{};
};

struct PowerUser {
  std::string user_id;
  bool verified = false;
  std::size_t tweet_count = 0;
};

struct CohortReport {
  CohortStats verified;
  CohortStats nonverified;
  std::vector<PowerUser> power_users;  // tweet count desc, id asc
};

/// Power users tweeted more than `min_tweets` times. Each user belongs to the
/// cohort given by the verified flag on their latest tweet; cohort stats cover
/// the power users' tweets only.
CohortReport cohort_stats(std::span<const ScoredTweet> tweets, std::size_t min_tweets);

struct WordClouds {
  RankedCounts<std::string> positive;
  RankedCounts<std::string> negative;
};

WordClouds polarity_wordclouds(std::span<const ScoredTweet> tweets, Cohort cohort, std::size_t k,
                               const StopwordPolicy& policy);

}  // namespace coronavis

#include "coronavis/detail/corpus_range.hpp"
