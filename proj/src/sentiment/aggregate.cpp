#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

#include "coronavis/sentiment.hpp"

namespace coronavis {

namespace {

// Sums in ascending order so means do not depend on record order.
double ordered_sum(std::vector<double>& values) {
  std::sort(values.begin(), values.end());
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum;
}

std::size_t label_slot(SentimentLabel label) { return static_cast<std::size_t>(label); }

}  // namespace

std::vector<ScoredTweet> score_records(std::span<const TweetRecord> records, const ValenceLexicon& valence,
                                       const SubjectivityLexicon& subjectivity) {
  std::vector<ScoredTweet> out;
  out.reserve(records.size());
  for (const auto& r : records) {
    ScoredTweet t{r, score_polarity(r.text, valence), score_subjectivity(r.text, subjectivity)};
    t.label = classify(t.polarity);
    out.push_back(std::move(t));
  }
  return out;
}

std::string Scope::label() const { return state ? std::string(state->code()) : std::string("US"); }

DateRange resolve(const Timeframe& frame, Date clock, DateRange corpus_range) {
  using std::chrono::days;
  switch (frame.kind) {
    case Timeframe::Kind::today: return {clock, clock};
    case Timeframe::Kind::yesterday: return {clock - days{1}, clock - days{1}};
    case Timeframe::Kind::all: return corpus_range;
    case Timeframe::Kind::custom: return {frame.from, frame.to};
  }
  return corpus_range;
}

DailySentimentSeries aggregate_series(std::span<const ScoredTweet> tweets, const Scope& scope,
                                      const Timeframe& frame, Date clock) {
  DailySentimentSeries series{scope, {}};
  const DateRange range = resolve(frame, clock, corpus_range(tweets));
  if (range.empty()) return series;

  const auto n = static_cast<std::size_t>(range.days());
  std::vector<std::vector<double>> compounds(n), subjectivities(n);
  for (const auto& t : tweets) {
    if (!scope.contains(t.record.loc)) continue;
    const Date d = day_of(t.record.created_at);
    if (!range.contains(d)) continue;
    const auto slot = static_cast<std::size_t>((d - range.from).count());
    compounds[slot].push_back(t.polarity.compound);
    subjectivities[slot].push_back(t.subjectivity);
  }
  series.points.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    DailySentimentPoint p{range.from + std::chrono::days{static_cast<long>(i)}, std::nullopt, std::nullopt,
                          compounds[i].size()};
    if (p.count > 0) {
      p.mean_compound = ordered_sum(compounds[i]) / static_cast<double>(p.count);
      p.mean_subjectivity = ordered_sum(subjectivities[i]) / static_cast<double>(p.count);
    }
    series.points.push_back(p);
  }
  return series;
}

std::size_t histogram_bin(double compound, std::size_t bins) {
  const double n = static_cast<double>(bins);
  auto lower_edge = [&](std::size_t b) { return -1.0 + 2.0 * static_cast<double>(b) / n; };
  const double scaled = std::floor((compound + 1.0) / 2.0 * n);
  std::size_t bin = scaled < 0 ? 0 : std::min(static_cast<std::size_t>(scaled), bins - 1);
  // the scaled estimate can round across an edge; settle against the edges themselves
  while (bin > 0 && compound < lower_edge(bin)) --bin;
  while (bin + 1 < bins && compound >= lower_edge(bin + 1)) ++bin;
  return bin;
}

Histogram sentiment_histogram(std::span<const ScoredTweet> tweets, std::size_t bins) {
  if (bins == 0) throw std::invalid_argument("histogram needs at least one bin");
  Histogram h;
  h.counts.assign(bins, 0);
  for (const auto& t : tweets) ++h.counts[histogram_bin(t.polarity.compound, bins)];
  return h;
}

std::string_view to_string(Cohort cohort) {
  switch (cohort) {
    case Cohort::all: return "all";
    case Cohort::verified: return "verified";
    case Cohort::nonverified: return "nonverified";
  }
  return "all";
}

std::optional<Cohort> parse_cohort(std::string_view text) {
  if (text == "all") return Cohort::all;
  if (text == "verified") return Cohort::verified;
  if (text == "nonverified") return Cohort::nonverified;
  return std::nullopt;
}

bool in_cohort(const TweetRecord& r, Cohort cohort) {
  return cohort == Cohort::all || (cohort == Cohort::verified) == r.verified;
}

LabelCounts label_counts(std::span<const ScoredTweet> tweets, Cohort cohort) {
  LabelCounts counts{};
  for (const auto& t : tweets)
    if (in_cohort(t.record, cohort)) ++counts[label_slot(t.label)];
  return counts;
}

CohortReport cohort_stats(std::span<const ScoredTweet> tweets, std::size_t min_tweets) {
  struct UserTally {
    std::size_t count = 0;
    const TweetRecord* latest = nullptr;
    LabelCounts labels{};
  };
  std::unordered_map<std::string_view, UserTally> users;
  for (const auto& t : tweets) {
    auto& u = users[t.record.user_id];
    ++u.count;
    ++u.labels[label_slot(t.label)];
    if (!u.latest || t.record.created_at > u.latest->created_at ||
        (t.record.created_at == u.latest->created_at && t.record.tweet_id > u.latest->tweet_id))
      u.latest = &t.record;
  }

  CohortReport report;
  report.verified.cohort = Cohort::verified;
  report.nonverified.cohort = Cohort::nonverified;
  LabelCounts verified_labels{}, nonverified_labels{};
  for (const auto& [id, u] : users) {
    if (u.count <= min_tweets) continue;
    const bool verified = u.latest->verified;
    report.power_users.push_back({std::string(id), verified, u.count});
    auto& stats = verified ? report.verified : report.nonverified;
    auto& labels = verified ? verified_labels : nonverified_labels;
    stats.tweet_count += u.count;
    ++stats.user_count;
    stats.max_tweets_single_user = std::max(stats.max_tweets_single_user, u.count);
    for (std::size_t i = 0; i < labels.size(); ++i) labels[i] += u.labels[i];
  }
  for (auto [stats, labels] : {std::pair{&report.verified, &verified_labels},
                               std::pair{&report.nonverified, &nonverified_labels}}) {
    if (stats->tweet_count == 0) continue;
    for (std::size_t i = 0; i < labels->size(); ++i)
      stats->label_share[i] = static_cast<double>((*labels)[i]) / static_cast<double>(stats->tweet_count);
  }
  std::sort(report.power_users.begin(), report.power_users.end(), [](const PowerUser& a, const PowerUser& b) {
    return a.tweet_count != b.tweet_count ? a.tweet_count > b.tweet_count : a.user_id < b.user_id;
  });
  return report;
}

WordClouds polarity_wordclouds(std::span<const ScoredTweet> tweets, Cohort cohort, std::size_t k,
                               const StopwordPolicy& policy) {
  std::unordered_map<std::string, std::size_t> positive, negative;
  for (const auto& t : tweets) {
    if (!in_cohort(t.record, cohort) || t.label == SentimentLabel::neutral) continue;
    auto& counts = t.label == SentimentLabel::positive ? positive : negative;
    for (auto& w : content_tokens(t.record.text, policy)) ++counts[std::move(w)];
  }
  return {rank_counts<std::string>(positive, k), rank_counts<std::string>(negative, k)};
}

}  // namespace coronavis
