#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <map>
#include <random>
#include <set>

#include "coronavis/sentiment.hpp"
#include "coronavis/service/config.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace coronavis;
using fixtures::at;
using fixtures::day;

namespace {

const ValenceLexicon& valence() {
  static const auto lex = ValenceLexicon::load(service::resource_dir() / "lexicons" / "polarity.tsv");
  return lex;
}

ScoredTweet scored(const char* ts, const char* state, double compound, double subjectivity = 0.0,
                   const char* user = "u", bool verified = false, const char* text = "") {
  static int next_id = 0;
  ScoredTweet t;
  t.record.tweet_id = std::to_string(++next_id);
  t.record.created_at = at(ts);
  t.record.loc = *StateCode::parse(state);
  t.record.user_id = user;
  t.record.verified = verified;
  t.record.text = text;
  t.polarity.compound = compound;
  t.subjectivity = subjectivity;
  t.label = classify(compound);
  return t;
}

}  // namespace

TEST_CASE("polarity basics") {
  const PolarityScore empty = score_polarity("", valence());
  CHECK(empty.compound == 0.0);
  CHECK(empty.neu == 1.0);
  const PolarityScore none = score_polarity("the cat sat on a table", valence());
  CHECK(none.compound == 0.0);
  CHECK(none.neu == 1.0);
  CHECK(score_polarity("good", valence()).compound > 0);
  CHECK(score_polarity("not good", valence()).compound < 0);
  CHECK(score_polarity("very good", valence()).compound > score_polarity("good", valence()).compound);
  CHECK(score_polarity("the news is GOOD", valence()).compound > score_polarity("the news is good", valence()).compound);
  // emphasis needs mixed case, as in the reference
  CHECK(score_polarity("GOOD", valence()).compound == score_polarity("good", valence()).compound);
  CHECK(score_polarity("good!!!", valence()).compound > score_polarity("good", valence()).compound);
}

TEST_CASE("polarity stays in range and proportions sum to one") {
  fixtures::Rng rng(11);
  for (int i = 0; i < 500; ++i) {
    const std::string text = fixtures::random_text(rng, 1, 30);
    const PolarityScore s = score_polarity(text, valence());
    CHECK(s.compound > -1.0);
    CHECK(s.compound < 1.0);
    CHECK(s.pos + s.neg + s.neu == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(s.pos >= 0.0);
    CHECK(s.neg >= 0.0);
  }
}

TEST_CASE("golden sentences match the reference scorer") {
  std::ifstream in(std::string(CORONAVIS_TEST_DATA) + "/sentiment_goldens.tsv");
  REQUIRE(in);
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    std::istringstream row(line);
    std::string text, compound, pos, neg, neu;
    std::getline(row, text, '\t');
    std::getline(row, compound, '\t');
    std::getline(row, pos, '\t');
    std::getline(row, neg, '\t');
    std::getline(row, neu, '\t');
    const PolarityScore s = score_polarity(text, valence());
    INFO(text);
    CHECK(std::abs(s.compound - std::stod(compound)) <= 1e-6);
    CHECK(std::abs(s.pos - std::stod(pos)) <= 1e-6);
    CHECK(std::abs(s.neg - std::stod(neg)) <= 1e-6);
    CHECK(std::abs(s.neu - std::stod(neu)) <= 1e-6);
    CHECK(classify(s) == classify(std::stod(compound)));
    ++n;
  }
  CHECK(n == 25);
}

TEST_CASE("classify uses the open neutral band") {
  CHECK(classify(0.0) == SentimentLabel::neutral);
  CHECK(classify(0.05) == SentimentLabel::positive);
  CHECK(classify(-0.05) == SentimentLabel::negative);
  CHECK(classify(0.0499999) == SentimentLabel::neutral);
  CHECK(classify(-0.0499999) == SentimentLabel::neutral);
  CHECK(classify(-0.6) == SentimentLabel::negative);
  CHECK(to_string(SentimentLabel::positive) == "positive");

  // monotone
  double prev = -1.0;
  for (double c = -1.0; c <= 1.0; c += 0.001) {
    CHECK_FALSE((classify(prev) == SentimentLabel::positive && classify(c) == SentimentLabel::negative));
    prev = c;
  }
}

TEST_CASE("subjectivity is the mean over lexicon hits") {
  const SubjectivityLexicon lex({{"bad", 0.4}, {"awful", 0.8}, {"sure", 1.0}});
  CHECK(score_subjectivity("", lex) == 0.0);
  CHECK(score_subjectivity("nothing here", lex) == 0.0);
  CHECK(score_subjectivity("sure", lex) == 1.0);
  CHECK(score_subjectivity("bad and awful", lex) == doctest::Approx(0.6));

  const auto shipped = SubjectivityLexicon::load(service::resource_dir() / "lexicons" / "subjectivity.tsv");
  CHECK(shipped.size() > 1000);
  fixtures::Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    const double s = score_subjectivity(fixtures::random_text(rng), shipped);
    CHECK(s >= 0.0);
    CHECK(s <= 1.0);
  }
}

TEST_CASE("timeframes resolve against the injected clock") {
  const DateRange corpus{day("2020-03-05"), day("2020-07-01")};
  const Date clock = day("2020-07-05");
  CHECK(resolve(Timeframe::today(), clock, corpus) == DateRange{clock, clock});
  CHECK(resolve(Timeframe::yesterday(), clock, corpus) == DateRange{day("2020-07-04"), day("2020-07-04")});
  CHECK(resolve(Timeframe::all_time(), clock, corpus) == corpus);
  CHECK(resolve(Timeframe::custom(day("2020-04-01"), day("2020-04-03")), clock, corpus).days() == 3);
}

TEST_CASE("daily series") {
  std::vector<ScoredTweet> t = {scored("2020-07-05T01:00:00Z", "GA", 0.2, 0.5), scored("2020-07-05T02:00:00Z", "GA", -0.2, 0.1),
                                scored("2020-07-05T03:00:00Z", "GA", 0.0, 0.3), scored("2020-07-05T04:00:00Z", "TX", 0.9),
                                scored("2020-07-03T04:00:00Z", "GA", 0.4)};
  const auto today = aggregate_series(t, Scope::of(*StateCode::parse("GA")), Timeframe::today(), day("2020-07-05"));
  REQUIRE(today.points.size() == 1);
  CHECK(today.points[0].count == 3);
  CHECK(*today.points[0].mean_compound == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(*today.points[0].mean_subjectivity == doctest::Approx(0.3));

  const auto all = aggregate_series(t, Scope::nationwide(), Timeframe::all_time(), day("2020-07-05"));
  REQUIRE(all.points.size() == 3);
  CHECK(all.points[1].date == day("2020-07-04"));
  CHECK(all.points[1].count == 0);
  CHECK_FALSE(all.points[1].mean_compound);
  CHECK(all.points[2].count == 4);

  CHECK(aggregate_series(t, Scope::nationwide(), Timeframe::custom(day("2020-07-06"), day("2020-07-05")),
                         day("2020-07-05"))
            .points.empty());
  CHECK(aggregate_series({}, Scope::nationwide(), Timeframe::all_time(), day("2020-07-05")).points.empty());
}

TEST_CASE("daily series equals a full-scan recomputation and ignores input order") {
  auto records = fixtures::synthetic_tweets({.tweets = 100, .days = 5, .seed = 21});
  for (std::size_t i = 0; i < records.size(); ++i) records[i].loc = StateCode::from_index(i % 3);
  auto tweets = score_records(records, valence(), SubjectivityLexicon({{"good", 0.6}, {"bad", 0.7}, {"mask", 0.1}}));
  const Date clock = day("2020-06-12");

  for (std::size_t s = 0; s < 4; ++s) {
    const Scope scope = s == 3 ? Scope::nationwide() : Scope::of(StateCode::from_index(s));
    const auto series = aggregate_series(tweets, scope, Timeframe::all_time(), clock);
    std::map<Date, std::vector<double>> by_day;
    for (const auto& t : tweets)
      if (scope.contains(t.record.loc)) by_day[day_of(t.record.created_at)].push_back(t.polarity.compound);
    for (const auto& p : series.points) {
      auto it = by_day.find(p.date);
      if (it == by_day.end()) {
        CHECK(p.count == 0);
        continue;
      }
      long double sum = 0;
      for (double c : it->second) sum += c;
      CHECK(p.count == it->second.size());
      CHECK(*p.mean_compound == doctest::Approx(static_cast<double>(sum / it->second.size())).epsilon(1e-12));
    }
  }

  auto shuffled = tweets;
  std::shuffle(shuffled.begin(), shuffled.end(), std::mt19937_64(3));
  const auto a = aggregate_series(tweets, Scope::nationwide(), Timeframe::all_time(), clock);
  const auto b = aggregate_series(shuffled, Scope::nationwide(), Timeframe::all_time(), clock);
  REQUIRE(a.points.size() == b.points.size());
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    CHECK(a.points[i].mean_compound == b.points[i].mean_compound);  // bit-identical
    CHECK(a.points[i].mean_subjectivity == b.points[i].mean_subjectivity);
  }
}

TEST_CASE("histogram") {
  CHECK(histogram_bin(-1.0, 20) == 0);
  CHECK(histogram_bin(1.0, 20) == 19);
  CHECK(histogram_bin(0.0, 20) == 10);
  CHECK(histogram_bin(0.0, 1) == 0);
  CHECK(histogram_bin(-0.25000000000000006, 8) == 2);
  CHECK(histogram_bin(-0.25, 8) == 3);

  std::vector<ScoredTweet> zeros(50, scored("2020-07-05T01:00:00Z", "GA", 0.0));
  const auto h = sentiment_histogram(zeros, 21);
  CHECK(h.counts[10] == 50);

  std::vector<ScoredTweet> uniform;
  for (int i = 0; i < 2000; ++i) uniform.push_back(scored("2020-07-05T01:00:00Z", "GA", -1.0 + 2.0 * (i + 0.5) / 2000));
  const auto flat = sentiment_histogram(uniform, 10);
  for (auto c : flat.counts) CHECK(c == 200);

  // brute-force binning oracle on interval membership
  auto records = fixtures::synthetic_tweets({.tweets = 500, .seed = 4});
  const auto tweets = score_records(records, valence(), {});
  const auto hist = sentiment_histogram(tweets, 8);
  std::vector<std::size_t> expected(8, 0);
  for (const auto& t : tweets)
    for (std::size_t b = 0; b < 8; ++b) {
      const double lo = -1.0 + 0.25 * b, hi = lo + 0.25;
      if (t.polarity.compound >= lo && (t.polarity.compound < hi || b == 7)) {
        ++expected[b];
        break;
      }
    }
  CHECK(hist.counts == expected);
  CHECK_THROWS(sentiment_histogram(tweets, 0));
}

TEST_CASE("cohorts") {
  CHECK(parse_cohort("verified") == Cohort::verified);
  CHECK_FALSE(parse_cohort("bots"));

  std::vector<ScoredTweet> t;
  auto add = [&](const std::string& user, bool verified, int n, double compound) {
    for (int i = 0; i < n; ++i)
      t.push_back(scored("2020-07-05T01:00:00Z", "GA", compound, 0, user.c_str(), verified));
  };
  // planted: 2 verified and 5 non-verified power users above 10 tweets
  add("v1", true, 11, 0.5);
  add("v2", true, 20, -0.5);
  for (int i = 0; i < 5; ++i) add("n" + std::to_string(i), false, 12 + i, 0.0);
  add("small", false, 10, 0.9);
  add("tiny", true, 3, 0.9);

  const CohortReport r = cohort_stats(t, 10);
  CHECK(r.power_users.size() == 7);
  CHECK(r.verified.user_count == 2);
  CHECK(r.nonverified.user_count == 5);
  CHECK(r.verified.tweet_count == 31);
  CHECK(r.verified.max_tweets_single_user == 20);
  CHECK(r.power_users.front().user_id == "v2");
  CHECK(r.verified.label_share[0] + r.verified.label_share[1] + r.verified.label_share[2] ==
        doctest::Approx(1.0).epsilon(1e-9));
  CHECK(r.nonverified.label_share[1] == 1.0);

  CHECK(cohort_stats(t, 0).power_users.size() == 9);
  const auto none = cohort_stats(t, 1000);
  CHECK(none.power_users.empty());
  CHECK(none.verified.label_share == std::array<double, 3>{0, 0, 0});

  // 501 tweets over a 500 threshold
  std::vector<ScoredTweet> big;
  for (int i = 0; i < 501; ++i) big.push_back(scored("2020-07-05T01:00:00Z", "GA", 0.0, 0, "u"));
  CHECK(cohort_stats(big, 500).power_users.size() == 1);
  big.pop_back();
  CHECK(cohort_stats(big, 500).power_users.empty());

  const LabelCounts all = label_counts(t, Cohort::all);
  CHECK(all[0] + all[1] + all[2] == t.size());
  const LabelCounts v = label_counts(t, Cohort::verified);
  const LabelCounts nv = label_counts(t, Cohort::nonverified);
  for (int i = 0; i < 3; ++i) CHECK(v[i] + nv[i] == all[i]);
}

TEST_CASE("cohort membership follows the latest tweet") {
  std::vector<ScoredTweet> t;
  for (int i = 0; i < 3; ++i) t.push_back(scored("2020-07-01T01:00:00Z", "GA", 0.0, 0, "u", false));
  t.push_back(scored("2020-07-02T01:00:00Z", "GA", 0.0, 0, "u", true));
  const auto r = cohort_stats(t, 0);
  CHECK(r.verified.user_count == 1);
  CHECK(r.verified.tweet_count == 4);
  CHECK(r.nonverified.user_count == 0);
}

TEST_CASE("word clouds") {
  const StopwordPolicy policy({"the"});
  std::vector<ScoredTweet> one = {scored("2020-07-05T01:00:00Z", "GA", 0.6, 0, "u", false, "great news")};
  const auto c = polarity_wordclouds(one, Cohort::all, 50, policy);
  CHECK(c.positive == RankedCounts<std::string>{{"great", 1}, {"news", 1}});
  CHECK(c.negative.empty());
  const auto empty = polarity_wordclouds(one, Cohort::verified, 50, policy);
  CHECK(empty.positive.empty());
  CHECK(empty.negative.empty());

  auto records = fixtures::synthetic_tweets({.tweets = 1000, .seed = 8});
  const auto tweets = score_records(records, valence(), {});
  const std::set<std::string> stop{"the", "covid", "corona", "rt"};
  const auto clouds = polarity_wordclouds(tweets, Cohort::all, 50, StopwordPolicy({"the"}));
  std::vector<TweetRecord> pos;
  for (const auto& t : tweets)
    if (t.label == SentimentLabel::positive) pos.push_back(t.record);
  CHECK(clouds.positive == oracle::top_words(pos, stop, 50));
}
