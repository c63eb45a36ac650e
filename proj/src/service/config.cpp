#include <cstdlib>
#include <fstream>
#include <stdexcept>

#include "coronavis/service/config.hpp"

namespace coronavis::service {

fs::path resource_dir() {
  if (const char* dir = std::getenv("CORONAVIS_RESOURCES")) return dir;
  return CORONAVIS_RESOURCE_DIR;
}

ServiceConfig::ServiceConfig()
    : polarity_lexicon(resource_dir() / "lexicons" / "polarity.tsv"),
      subjectivity_lexicon(resource_dir() / "lexicons" / "subjectivity.tsv"),
      stopwords(resource_dir() / "stopwords_en.txt"),
      domain_stopwords(resource_dir() / "stopwords_domain.txt"),
      featured_topics(resource_dir() / "featured_topics.txt") {}

namespace {

fs::path resolve_path(const nlohmann::json& value, const fs::path& base) {
  fs::path p = value.get<std::string>();
  return p.is_relative() && !base.empty() ? base / p : p;
}

Date require_date(const std::string& text, const char* key) {
  auto d = parse_date(text);
  if (!d) throw std::invalid_argument(std::string("config: bad date for ") + key + ": " + text);
  return *d;
}

}  // namespace

ServiceConfig ServiceConfig::from_json(const nlohmann::json& doc, const fs::path& base) {
  if (!doc.is_object()) throw std::invalid_argument("config: top level must be an object");
  ServiceConfig c;
  if (doc.contains("host")) c.host = doc["host"].get<std::string>();
  if (doc.contains("port")) c.port = doc["port"].get<int>();
  if (doc.contains("data_dir")) c.data_dir = resolve_path(doc["data_dir"], base);
  if (doc.contains("polarity_lexicon")) c.polarity_lexicon = resolve_path(doc["polarity_lexicon"], base);
  if (doc.contains("subjectivity_lexicon")) c.subjectivity_lexicon = resolve_path(doc["subjectivity_lexicon"], base);
  if (doc.contains("stopwords")) c.stopwords = resolve_path(doc["stopwords"], base);
  if (doc.contains("domain_stopwords")) c.domain_stopwords = resolve_path(doc["domain_stopwords"], base);
  if (doc.contains("featured_topics")) c.featured_topics = resolve_path(doc["featured_topics"], base);
  if (doc.contains("cases") && !doc["cases"].is_null()) c.cases = resolve_path(doc["cases"], base);
  if (doc.contains("static_dir") && !doc["static_dir"].is_null()) c.static_dir = resolve_path(doc["static_dir"], base);
  if (doc.contains("clock") && !doc["clock"].is_null()) c.clock = require_date(doc["clock"].get<std::string>(), "clock");
  if (doc.contains("week_epoch")) c.week_epoch = require_date(doc["week_epoch"].get<std::string>(), "week_epoch");
  if (doc.contains("cors_origin")) c.cors_origin = doc["cors_origin"].get<std::string>();
  if (doc.contains("parse_mode")) {
    const auto mode = doc["parse_mode"].get<std::string>();
    if (mode == "strict") c.parse_mode = ParseMode::strict;
    else if (mode == "lenient") c.parse_mode = ParseMode::lenient;
    else throw std::invalid_argument("config: parse_mode must be strict or lenient");
  }
  if (doc.contains("lda")) {
    const auto& l = doc["lda"];
    c.lda.enabled = l.value("enabled", c.lda.enabled);
    c.lda.options.topics = l.value("topics", c.lda.options.topics);
    c.lda.options.alpha = l.value("alpha", c.lda.options.alpha);
    c.lda.options.beta = l.value("beta", c.lda.options.beta);
    c.lda.options.iterations = l.value("iterations", c.lda.options.iterations);
    c.lda.options.seed = l.value("seed", c.lda.options.seed);
    c.lda.options.log_every = l.value("log_every", c.lda.options.log_every);
    c.lda.min_df = l.value("min_df", c.lda.min_df);
    c.lda.max_df_fraction = l.value("max_df", c.lda.max_df_fraction);
    c.lda.lambda = l.value("lambda", c.lda.lambda);
    c.lda.top_n = l.value("top_n", c.lda.top_n);
  }
  return c;
}

ServiceConfig ServiceConfig::load(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error("config " + path.string() + ": " + e.what());
  }
  return from_json(doc, path.parent_path());
}

void ServiceConfig::apply_env(const EnvLookup& lookup) {
  if (auto v = lookup("CORONAVIS_PORT")) {
    std::size_t used = 0;
    int port = 0;
    try {
      port = std::stoi(*v, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != v->size() || port < 0 || port > 65535) throw std::invalid_argument("CORONAVIS_PORT: bad port " + *v);
    this->port = port;
  }
  if (auto v = lookup("CORONAVIS_DATA_DIR")) data_dir = *v;
  if (auto v = lookup("CORONAVIS_POLARITY_LEXICON")) polarity_lexicon = *v;
  if (auto v = lookup("CORONAVIS_SUBJECTIVITY_LEXICON")) subjectivity_lexicon = *v;
  if (auto v = lookup("CORONAVIS_FEATURED_TOPICS")) featured_topics = *v;
  if (auto v = lookup("CORONAVIS_CASES")) cases = fs::path(*v);
}

void ServiceConfig::apply_process_env() {
  apply_env([](const char* name) -> std::optional<std::string> {
    if (const char* v = std::getenv(name)) return std::string(v);
    return std::nullopt;
  });
}

std::shared_ptr<const AnalysisResources> load_resources(const ServiceConfig& config) {
  auto res = std::make_shared<AnalysisResources>();
  res->valence = ValenceLexicon::load(config.polarity_lexicon);
  res->subjectivity = SubjectivityLexicon::load(config.subjectivity_lexicon);
  res->stopwords = StopwordPolicy::from_files(config.stopwords, config.domain_stopwords);
  res->featured = FeaturedTopicList::load(config.featured_topics);
  res->week_epoch = config.week_epoch;
  res->lda = config.lda;
  if (config.cases) {
    std::ifstream in(*config.cases);
    if (!in) throw std::runtime_error("cannot open case counts " + config.cases->string());
    res->cases = ingest_case_counts(in, config.week_epoch);
  }
  return res;
}

}  // namespace coronavis::service
