#pragma once

// Deterministic synthetic corpora shared by the unit and acceptance suites.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include <unistd.h>

#include <json.hpp>

#include "coronavis/corpus.hpp"
#include "coronavis/service/config.hpp"

namespace fixtures {

using namespace coronavis;
namespace fs = std::filesystem;

inline Date day(const char* iso) { return *parse_date(iso); }
inline Timestamp at(const char* iso) { return *parse_timestamp(iso); }

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  bool chance(double p) { return unit() < p; }

 private:
  std::mt19937_64 engine_;
};

/// Content words with a skewed draw so rankings have both clear leaders and
/// long tied tails.
inline const std::vector<std::string>& content_words() {
  static const std::vector<std::string> words = [] {
    std::vector<std::string> w = {"mask",    "vaccine", "cases",   "testing", "lockdown", "hospital", "school",
                                  "nurses",  "doctors", "friends", "family",  "stay",     "home",     "safe",
                                  "deaths",  "spread",  "news",    "trump",   "governor", "economy",  "jobs",
                                  "stimulus", "masks",  "distancing", "quarantine", "symptoms", "fever", "breathing"};
    for (int i = 0; i < 120; ++i) w.push_back("term" + std::to_string(i));
    return w;
  }();
  return words;
}

inline const std::vector<std::string>& filler_words() {
  static const std::vector<std::string> words = {"the",  "to",  "for",    "and",   "is",     "covid", "corona",
                                                 "rt",   "of",  "in",     "we",    "not",    "very",  "good",
                                                 "bad",  "great", "sad",  "love",  "hate",   "help",  "need",
                                                 "happy", "awful", "#stayhome", "don't", "can't"};
  return words;
}

inline std::string random_text(Rng& rng, std::size_t min_words = 4, std::size_t max_words = 14) {
  const auto& content = content_words();
  const auto& filler = filler_words();
  const std::size_t n = min_words + rng.below(max_words - min_words + 1);
  std::string text;
  for (std::size_t i = 0; i < n; ++i) {
    if (!text.empty()) text += ' ';
    if (rng.chance(0.4)) {
      text += filler[rng.below(filler.size())];
    } else {
      // squaring a uniform draw skews towards the front of the list
      const double u = rng.unit();
      text += content[static_cast<std::size_t>(u * u * static_cast<double>(content.size()))];
    }
  }
  return text;
}

struct TweetSpec {
  std::size_t tweets = 1000;
  std::size_t users = 100;
  Date first = day("2020-06-08");
  int days = 5;
  std::uint64_t seed = 1;
  double verified_share = 0.1;
  /// Adds commas, quotes, newlines and edge spaces to texts.
  bool awkward_text = false;
};

inline std::vector<TweetRecord> synthetic_tweets(const TweetSpec& shape) {
  Rng rng(shape.seed);
  std::vector<bool> verified(shape.users);
  for (std::size_t u = 0; u < shape.users; ++u) verified[u] = rng.chance(shape.verified_share);
  std::vector<TweetRecord> out;
  out.reserve(shape.tweets);
  for (std::size_t i = 0; i < shape.tweets; ++i) {
    TweetRecord r;
    r.tweet_id = std::to_string(1'240'000'000'000'000'000ULL + i * 7919ULL);
    const auto d = shape.first + std::chrono::days{static_cast<long>(rng.below(static_cast<std::size_t>(shape.days)))};
    r.created_at = Timestamp(d) + std::chrono::seconds{static_cast<long>(rng.below(86400))};
    r.loc = StateCode::from_index(rng.below(StateCode::kCount));
    r.text = random_text(rng);
    if (shape.awkward_text) {
      switch (rng.below(6)) {
        case 0: r.text += ", with a comma"; break;
        case 1: r.text = "she said \"" + r.text + "\""; break;
        case 2: r.text += "\nsecond line"; break;
        case 3: r.text = " " + r.text + " "; break;
        default: break;
      }
    }
    const std::size_t u = rng.below(shape.users);
    r.user_id = "user" + std::to_string(u);
    r.verified = verified[u];
    out.push_back(std::move(r));
  }
  return out;
}

/// One JSON line in the raw platform shape.
inline std::string raw_tweet(const std::string& id, const std::string& created_at, const std::string& text,
                             const std::string& handle, const std::string& location, bool verified,
                             const std::string& place = {}) {
  nlohmann::json j = {{"id_str", id},
                      {"created_at", created_at},
                      {"text", text},
                      {"user", {{"screen_name", handle}, {"verified", verified}, {"location", location}}}};
  if (!place.empty()) j["place"] = {{"full_name", place}};
  return j.dump();
}

/// Small topic models keep the service tests fast.
inline std::shared_ptr<const service::AnalysisResources> test_resources(bool lda = true, int topics = 4,
                                                                         int iterations = 30) {
  service::ServiceConfig config;
  config.lda.enabled = lda;
  config.lda.options.topics = topics;
  config.lda.options.iterations = iterations;
  return service::load_resources(config);
}

inline void write_days(const fs::path& dir, const std::vector<DailyFile>& days) {
  fs::create_directories(dir);
  for (const auto& d : days) {
    std::ofstream out(dir / d.filename(), std::ios::binary);
    write_daily_csv(d, out);
  }
}

/// Fresh scratch directory under the system temp dir.
inline fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("coronavis_test_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

/// Documents drawn from two known topics over disjoint 50-word vocabularies
/// ("north00".."north49" and "south00".."south49"). Each document draws 90%
/// of its tokens from one dominant topic; within a topic word w has weight
/// proportional to 1 / (w + 1).
struct PlantedCorpus {
  std::vector<std::vector<std::string>> docs;
  std::vector<int> dominant;
};

inline std::string planted_word(int topic, int w) {
  return std::string(topic == 0 ? "north" : "south") + (w < 10 ? "0" : "") + std::to_string(w);
}

inline PlantedCorpus planted_two_topic_corpus(std::uint64_t seed, int documents = 400, int length = 40) {
  Rng rng(seed);
  std::vector<double> cumulative;
  double total = 0;
  for (int w = 0; w < 50; ++w) cumulative.push_back(total += 1.0 / (w + 1));
  auto draw_word = [&] {
    const double u = rng.unit() * total;
    return static_cast<int>(std::upper_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin());
  };
  PlantedCorpus corpus;
  for (int d = 0; d < documents; ++d) {
    const int dominant = static_cast<int>(rng.below(2));
    std::vector<std::string> doc;
    for (int i = 0; i < length; ++i) {
      const int topic = rng.chance(0.9) ? dominant : 1 - dominant;
      doc.push_back(planted_word(topic, std::min(draw_word(), 49)));
    }
    corpus.docs.push_back(std::move(doc));
    corpus.dominant.push_back(dominant);
  }
  return corpus;
}

}  // namespace fixtures
