#pragma once

#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "coronavis/corpus.hpp"
#include "coronavis/mobility.hpp"
#include "coronavis/sentiment.hpp"
#include "coronavis/topicmodel.hpp"
#include "coronavis/trends.hpp"

namespace coronavis::service {

namespace fs = std::filesystem;

struct LdaSettings {
  bool enabled = true;
  LdaOptions options;
  std::size_t min_df = 2;
  double max_df_fraction = 0.5;
  double lambda = 0.6;
  std::size_t top_n = 30;
};

struct ServiceConfig {
  std::string host = "0.0.0.0";
  int port = 8080;
  fs::path data_dir = "data";  // daily YYYY-MM-DD.csv files
  fs::path polarity_lexicon;
  fs::path subjectivity_lexicon;
  fs::path stopwords;
  fs::path domain_stopwords;
  fs::path featured_topics;
  std::optional<fs::path> cases;  // state,week_start,cases
  std::optional<fs::path> static_dir;
  std::optional<Date> clock;      // pinned "today"; default is the latest ingested day
  Date week_epoch = WeekBins::default_epoch();
  std::string cors_origin = "*";
  ParseMode parse_mode = ParseMode::lenient;
  LdaSettings lda;

  /// Resource paths default to the shipped files under the resource dir.
  ServiceConfig();

  /// JSON config file; keys that are absent keep their defaults.
  static ServiceConfig load(const fs::path& path);
  static ServiceConfig from_json(const nlohmann::json& doc, const fs::path& base = {});

  using EnvLookup = std::function<std::optional<std::string>(const char*)>;
  /// CORONAVIS_PORT, CORONAVIS_DATA_DIR, CORONAVIS_POLARITY_LEXICON,
  /// CORONAVIS_SUBJECTIVITY_LEXICON, CORONAVIS_FEATURED_TOPICS, CORONAVIS_CASES.
  void apply_env(const EnvLookup& lookup);
  void apply_process_env();
};

fs::path resource_dir();

/// Everything the analytics need besides the records themselves.
struct AnalysisResources {
  ValenceLexicon valence;
  SubjectivityLexicon subjectivity;
  StopwordPolicy stopwords;
  FeaturedTopicList featured;
  std::optional<InfectionSeries> cases;
  Date week_epoch = WeekBins::default_epoch();
  LdaSettings lda;
};

std::shared_ptr<const AnalysisResources> load_resources(const ServiceConfig& config);

}  // namespace coronavis::service
