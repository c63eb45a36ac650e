#include <algorithm>
#include <cctype>
#include <charconv>
#include <functional>

#include "coronavis/service/api.hpp"

namespace coronavis::service {

using nlohmann::json;

namespace {

// ---- schema building blocks ----

json t_str() { return {{"type", "string"}}; }
json t_int(long long min = 0) { return {{"type", "integer"}, {"minimum", min}}; }
json t_num() { return {{"type", "number"}}; }
json t_num_or_null() { return {{"type", {"number", "null"}}}; }
json t_bool() { return {{"type", "boolean"}}; }
json t_arr(json items) { return {{"type", "array"}, {"items", std::move(items)}}; }

json t_obj(json props) {
  json required = json::array();
  for (const auto& [k, v] : props.items()) required.push_back(k);
  return {{"type", "object"}, {"properties", std::move(props)}, {"required", std::move(required)},
          {"additionalProperties", false}};
}

/// Adds the envelope fields every success payload carries.
json t_payload(json props) {
  props["as_of"] = t_str();
  props["sequence"] = t_int();
  return t_obj(std::move(props));
}

json t_date_range_or_null() {
  return {{"type", {"object", "null"}},
          {"properties", {{"from", t_str()}, {"to", t_str()}}},
          {"required", {"from", "to"}},
          {"additionalProperties", false}};
}

json t_counts() { return t_arr(t_obj({{"date", t_str()}, {"count", t_int()}})); }

json t_ranked_words() { return t_arr(t_obj({{"word", t_str()}, {"count", t_int(1)}})); }

json t_topic_series() {
  return t_arr(t_obj({{"topic", t_str()}, {"scope", t_str()}, {"total", t_int()}, {"points", t_counts()}}));
}

json t_range_kind() { return {{"type", "string"}, {"enum", {"today", "yesterday", "all", "custom"}}}; }

json t_cohort_stats() {
  return t_obj({{"cohort", t_str()},
                {"tweet_count", t_int()},
                {"user_count", t_int()},
                {"max_tweets_single_user", t_int()},
                {"label_share", t_obj({{"negative", t_num()}, {"neutral", t_num()}, {"positive", t_num()}})}});
}

json t_relevant_terms() {
  return t_arr(t_obj({{"term", t_str()}, {"relevance", t_num()}, {"probability", t_num()}, {"lift", t_num()}}));
}

const std::map<std::string, json>& schemas() {
  static const std::map<std::string, json> table = [] {
    std::map<std::string, json> s;
    s["/api/health"] = t_obj({{"status", {{"type", "string"}, {"enum", {"ok", "starting"}}}},
                              {"as_of", {{"type", {"string", "null"}}}},
                              {"sequence", t_int()},
                              {"tweets", t_int()},
                              {"days", t_int()},
                              {"range", t_date_range_or_null()},
                              {"clock", {{"type", {"string", "null"}}}},
                              {"gaps", t_arr(t_str())},
                              {"skipped_rows", t_int()},
                              {"lda", t_bool()}});
    s["/api/schemas"] = {{"type", "object"}};
    s["/api/frequency"] = t_payload({{"scope", t_str()}, {"range", t_date_range_or_null()}, {"points", t_counts()}});
    s["/api/words/top"] = t_payload({{"scope", t_str()}, {"k", t_int(1)}, {"words", t_ranked_words()}});
    s["/api/bigrams/top"] = t_payload(
        {{"scope", t_str()},
         {"k", t_int(1)},
         {"bigrams", t_arr(t_obj({{"first", t_str()}, {"second", t_str()}, {"bigram", t_str()}, {"count", t_int(1)}}))}});
    s["/api/topics/frequent"] = t_payload({{"scope", t_str()}, {"k", t_int(1)}, {"series", t_topic_series()}});
    s["/api/topics/featured"] = t_payload({{"scope", t_str()}, {"k", t_int(1)}, {"series", t_topic_series()}});
    s["/api/sentiment/series"] = t_payload(
        {{"scope", t_str()},
         {"range", t_range_kind()},
         {"from", {{"type", {"string", "null"}}}},
         {"to", {{"type", {"string", "null"}}}},
         {"points", t_arr(t_obj({{"date", t_str()}, {"mean_compound", t_num_or_null()}, {"count", t_int()}}))}});
    s["/api/sentiment/distribution"] =
        t_payload({{"bins", t_int(1)}, {"lo", t_num()}, {"hi", t_num()}, {"total", t_int()}, {"counts", t_arr(t_int())}});
    s["/api/sentiment/labels"] = t_payload(
        {{"cohort", {{"type", "string"}, {"enum", {"all", "verified", "nonverified"}}}},
         {"total", t_int()},
         {"counts", t_obj({{"negative", t_int()}, {"neutral", t_int()}, {"positive", t_int()}})}});
    s["/api/sentiment/cohorts"] = t_payload(
        {{"min_tweets", t_int()},
         {"verified", t_cohort_stats()},
         {"nonverified", t_cohort_stats()},
         {"power_users", t_arr(t_obj({{"user_id", t_str()}, {"verified", t_bool()}, {"tweet_count", t_int(1)}}))}});
    s["/api/wordcloud"] = t_payload({{"scope", t_str()},
                                     {"range", t_range_kind()},
                                     {"polarity", {{"type", "string"}, {"enum", {"pos", "neg"}}}},
                                     {"cohort", {{"type", "string"}, {"enum", {"all", "verified", "nonverified"}}}},
                                     {"k", t_int(1)},
                                     {"words", t_ranked_words()}});
    s["/api/subjectivity/series"] = t_payload(
        {{"scope", t_str()},
         {"range", t_range_kind()},
         {"from", {{"type", {"string", "null"}}}},
         {"to", {{"type", {"string", "null"}}}},
         {"points", t_arr(t_obj({{"date", t_str()}, {"mean_subjectivity", t_num_or_null()}, {"count", t_int()}}))}});
    s["/api/mobility/weekly"] = t_payload(
        {{"lag", t_int()},
         {"events", t_int()},
         {"overflow", t_int()},
         {"cases_loaded", t_bool()},
         {"weeks", t_arr(t_obj({{"week_start", t_str()},
                                {"week_end", t_str()},
                                {"states", t_arr(t_obj({{"state", t_str()}, {"users", t_int(1)}}))}}))},
         {"joined", t_arr(t_obj({{"state", t_str()},
                                 {"week_start", t_str()},
                                 {"mobility_week_start", t_str()},
                                 {"mobility", t_int()},
                                 {"cases", t_int()}}))},
         {"correlation", t_obj({{"pooled", t_num_or_null()},
                                {"per_week", t_arr(t_obj({{"week_start", t_str()}, {"r", t_num_or_null()}}))}})}});
    s["/api/lda/topics"] = t_payload(
        {{"schema", {{"type", "string"}, {"enum", {"coronavis.topicvis"}}}},
         {"schema_version", t_int(1)},
         {"topics_count", t_int(1)},
         {"vocabulary_size", t_int(1)},
         {"alpha", t_num()},
         {"beta", t_num()},
         {"seed", t_int()},
         {"iterations", t_int(1)},
         {"lambda", t_num()},
         {"topics", t_arr(t_obj({{"topic", t_int()},
                                 {"prevalence", t_num()},
                                 {"x", t_num()},
                                 {"y", t_num()},
                                 {"terms", t_relevant_terms()}}))},
         {"divergence", t_arr(t_arr(t_num()))}});
    s["/api/lda/terms"] =
        t_payload({{"topic", t_int()}, {"lambda", t_num()}, {"n", t_int(1)}, {"terms", t_relevant_terms()}});
    return s;
  }();
  return table;
}

// ---- parameter parsing ----

struct ApiError {
  int status;
  const char* code;
  std::string message;
};

[[noreturn]] void bad_param(const std::string& message) { throw ApiError{400, error_code::bad_param, message}; }

class Params {
 public:
  explicit Params(const std::map<std::string, std::string>& raw) : raw_(raw) {}

  std::optional<std::string> get(const std::string& name) const {
    auto it = raw_.find(name);
    if (it == raw_.end()) return std::nullopt;
    return it->second;
  }

  long long integer(const std::string& name, long long fallback, long long lo, long long hi) const {
    auto v = get(name);
    if (!v || v->empty()) return fallback;
    long long x = 0;
    auto [end, ec] = std::from_chars(v->data(), v->data() + v->size(), x);
    if (ec != std::errc() || end != v->data() + v->size()) bad_param(name + " must be an integer");
    if (x < lo || x > hi)
      bad_param(name + " must be between " + std::to_string(lo) + " and " + std::to_string(hi));
    return x;
  }

  double real(const std::string& name, double fallback, double lo, double hi) const {
    auto v = get(name);
    if (!v || v->empty()) return fallback;
    double x = 0;
    auto [end, ec] = std::from_chars(v->data(), v->data() + v->size(), x);
    if (ec != std::errc() || end != v->data() + v->size() || !(x >= lo && x <= hi))
      bad_param(name + " must be a number in [" + json(lo).dump() + ", " + json(hi).dump() + "]");
    return x;
  }

  std::optional<Date> date(const std::string& name) const {
    auto v = get(name);
    if (!v || v->empty()) return std::nullopt;
    auto d = parse_date(*v);
    if (!d) bad_param(name + " must be a YYYY-MM-DD date");
    return d;
  }

  Scope scope() const {
    auto v = get("state");
    if (!v || v->empty()) return Scope::nationwide();
    std::string code = *v;
    std::transform(code.begin(), code.end(), code.begin(), [](unsigned char c) { return std::toupper(c); });
    if (code == "US" || code == "ALL") return Scope::nationwide();
    auto state = StateCode::parse(code);
    if (!state) throw ApiError{400, error_code::state_unknown, "unknown state " + *v};
    return Scope::of(*state);
  }

  Cohort cohort() const {
    auto v = get("cohort");
    if (!v || v->empty()) return Cohort::all;
    auto c = parse_cohort(*v);
    if (!c) bad_param("cohort must be all, verified or nonverified");
    return *c;
  }

  Timeframe timeframe() const {
    const std::string kind = get("range").value_or("all");
    if (kind.empty() || kind == "all") return Timeframe::all_time();
    if (kind == "today") return Timeframe::today();
    if (kind == "yesterday") return Timeframe::yesterday();
    if (kind != "custom") bad_param("range must be today, yesterday, all or custom");
    auto from = date("from");
    auto to = date("to");
    if (!from || !to) bad_param("range=custom needs from and to");
    check_span(*from, *to);
    return Timeframe::custom(*from, *to);
  }

  static void check_span(Date from, Date to) {
    if (from > to) throw ApiError{400, error_code::range_invalid, "from is after to"};
    if ((to - from).count() > kMaxSpanDays)
      throw ApiError{400, error_code::range_invalid, "range longer than " + std::to_string(kMaxSpanDays) + " days"};
  }

 private:
  static constexpr long kMaxSpanDays = 3660;
  const std::map<std::string, std::string>& raw_;
};

std::string range_kind(const Timeframe& f) {
  switch (f.kind) {
    case Timeframe::Kind::today: return "today";
    case Timeframe::Kind::yesterday: return "yesterday";
    case Timeframe::Kind::all: return "all";
    case Timeframe::Kind::custom: return "custom";
  }
  return "all";
}

json date_or_null(const DateRange& r, bool from) {
  if (r.empty()) return nullptr;
  return format_date(from ? r.from : r.to);
}

json range_json(const DateRange& r) {
  if (r.empty()) return nullptr;
  return {{"from", format_date(r.from)}, {"to", format_date(r.to)}};
}

json counts_json(const std::vector<DailyCount>& points) {
  json out = json::array();
  for (const auto& p : points) out.push_back({{"date", format_date(p.date)}, {"count", p.count}});
  return out;
}

json words_json(const RankedCounts<std::string>& words) {
  json out = json::array();
  for (const auto& [w, c] : words) out.push_back({{"word", w}, {"count", c}});
  return out;
}

json series_json(const std::vector<TopicTrendSeries>& series) {
  json out = json::array();
  for (const auto& s : series)
    out.push_back({{"topic", s.topic}, {"scope", s.scope.label()}, {"total", s.total}, {"points", counts_json(s.points)}});
  return out;
}

json terms_json(const RelevanceRanking& ranking) {
  json out = json::array();
  for (const auto& t : ranking.terms)
    out.push_back({{"term", t.term}, {"relevance", t.relevance}, {"probability", t.probability}, {"lift", t.lift}});
  return out;
}

json cohort_json(const CohortStats& s) {
  return {{"cohort", to_string(s.cohort)},
          {"tweet_count", s.tweet_count},
          {"user_count", s.user_count},
          {"max_tweets_single_user", s.max_tweets_single_user},
          {"label_share", {{"negative", s.label_share[0]}, {"neutral", s.label_share[1]}, {"positive", s.label_share[2]}}}};
}

const LdaModel& require_lda(const AnalyticsSnapshot& s) {
  if (!s.lda) throw ApiError{404, error_code::lda_unavailable, "no topic model for this snapshot"};
  return *s.lda;
}

using Handler = std::function<json(const AnalyticsSnapshot&, const Params&)>;

json sentiment_like_series(const AnalyticsSnapshot& s, const Params& p, bool subjectivity) {
  const Scope scope = p.scope();
  const Timeframe frame = p.timeframe();
  const DailySentimentSeries series = aggregate_series(s.tweets, scope, frame, s.clock);
  const DateRange resolved = resolve(frame, s.clock, s.range);
  json points = json::array();
  for (const auto& pt : series.points) {
    const auto& mean = subjectivity ? pt.mean_subjectivity : pt.mean_compound;
    points.push_back({{"date", format_date(pt.date)},
                      {subjectivity ? "mean_subjectivity" : "mean_compound", mean ? json(*mean) : json(nullptr)},
                      {"count", pt.count}});
  }
  return {{"scope", scope.label()},
          {"range", range_kind(frame)},
          {"from", date_or_null(resolved, true)},
          {"to", date_or_null(resolved, false)},
          {"points", std::move(points)}};
}

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> table = {
      {"/api/frequency",
       [](const AnalyticsSnapshot& s, const Params& p) -> json {
         const Scope scope = p.scope();
         auto from = p.date("from");
         auto to = p.date("to");
         if (from && to) Params::check_span(*from, *to);
         std::vector<DailyCount> points = tweet_frequency(s.records, scope);
         std::erase_if(points, [&](const DailyCount& c) { return (from && c.date < *from) || (to && c.date > *to); });
         DateRange shown{Date{std::chrono::days{1}}, Date{}};
         if (!points.empty()) shown = {points.front().date, points.back().date};
         return {{"scope", scope.label()}, {"range", range_json(shown)}, {"points", counts_json(points)}};
       }},
      {"/api/words/top",
       [](const AnalyticsSnapshot& s, const Params& p) -> json {
         const Scope scope = p.scope();
         const auto k = static_cast<std::size_t>(p.integer("k", 50, 1, 1000));
         return {{"scope", scope.label()},
                 {"k", k},
                 {"words", words_json(top_words(s.records, scope, k, s.resources->stopwords))}};
       }},
      {"/api/bigrams/top",
       [](const AnalyticsSnapshot& s, const Params& p) -> json {
         const Scope scope = p.scope();
         const auto k = static_cast<std::size_t>(p.integer("k", 20, 1, 1000));
         json out = json::array();
         for (const auto& [b, c] : top_bigrams(s.records, scope, k, s.resources->stopwords))
           out.push_back({{"first", b.first}, {"second", b.second}, {"bigram", b.first + " " + b.second}, {"count", c}});
         return {{"scope", scope.label()}, {"k", k}, {"bigrams", std::move(out)}};
       }},
      {"/api/topics/frequent",
       [](const AnalyticsSnapshot& s, const Params& p) -> json {
         const Scope scope = p.scope();
         const auto k = static_cast<std::size_t>(p.integer("k", 50, 1, 1000));
         return {{"scope", scope.label()},
                 {"k", k},
                 {"series", series_json(frequent_topic_trends(s.records, scope, k, s.resources->stopwords))}};
       }},
      {"/api/topics/featured",
       [](const AnalyticsSnapshot& s, const Params& p) -> json {
         const Scope scope = p.scope();
         const auto k = static_cast<std::size_t>(p.integer("k", 50, 1, 1000));
         return {{"scope", scope.label()},
                 {"k", k},
                 {"series", series_json(featured_topic_trends(s.records, scope, s.resources->featured, k,
                                                              s.resources->stopwords))}};
       }},
      {"/api/sentiment/series",
       [](const AnalyticsSnapshot& s, const Params& p) { return sentiment_like_series(s, p, false); }},
      {"/api/subjectivity/series",
       [](const AnalyticsSnapshot& s, const Params& p) { return sentiment_like_series(s, p, true); }},
      {"/api/sentiment/distribution",
       [](const AnalyticsSnapshot& s, const Params& p) -> json {
         const auto bins = static_cast<std::size_t>(p.integer("bins", 20, 1, 1000));
         const Histogram h = sentiment_histogram(s.tweets, bins);
         return {{"bins", bins}, {"lo", h.lo}, {"hi", h.hi}, {"total", s.tweets.size()}, {"counts", h.counts}};
       }},
      {"/api/sentiment/labels",
       [](const AnalyticsSnapshot& s, const Params& p) -> json {
         const Cohort cohort = p.cohort();
         const LabelCounts c = label_counts(s.tweets, cohort);
         return {{"cohort", to_string(cohort)},
                 {"total", c[0] + c[1] + c[2]},
                 {"counts", {{"negative", c[0]}, {"neutral", c[1]}, {"positive", c[2]}}}};
       }},
      {"/api/sentiment/cohorts",
       [](const AnalyticsSnapshot& s, const Params& p) -> json {
         const auto min_tweets = static_cast<std::size_t>(p.integer("min_tweets", 500, 0, 1'000'000'000));
         const CohortReport r = cohort_stats(s.tweets, min_tweets);
         json users = json::array();
         for (const auto& u : r.power_users)
           users.push_back({{"user_id", u.user_id}, {"verified", u.verified}, {"tweet_count", u.tweet_count}});
         return {{"min_tweets", min_tweets},
                 {"verified", cohort_json(r.verified)},
                 {"nonverified", cohort_json(r.nonverified)},
                 {"power_users", std::move(users)}};
       }},
      {"/api/wordcloud",
       [](const AnalyticsSnapshot& s, const Params& p) -> json {
         const Scope scope = p.scope();
         const Timeframe frame = p.timeframe();
         const Cohort cohort = p.cohort();
         const std::string polarity = p.get("polarity").value_or("pos");
         if (polarity != "pos" && polarity != "neg") bad_param("polarity must be pos or neg");
         const auto k = static_cast<std::size_t>(p.integer("k", 50, 1, 1000));
         const DateRange range = resolve(frame, s.clock, s.range);
         std::vector<ScoredTweet> selected;
         for (const auto& t : s.tweets)
           if (scope.contains(t.record.loc) && range.contains(day_of(t.record.created_at))) selected.push_back(t);
         const WordClouds clouds = polarity_wordclouds(selected, cohort, k, s.resources->stopwords);
         return {{"scope", scope.label()},
                 {"range", range_kind(frame)},
                 {"polarity", polarity},
                 {"cohort", to_string(cohort)},
                 {"k", k},
                 {"words", words_json(polarity == "pos" ? clouds.positive : clouds.negative)}};
       }},
      {"/api/mobility/weekly",
       [](const AnalyticsSnapshot& s, const Params& p) -> json {
         const int lag = static_cast<int>(p.integer("lag", 1, 0, 52));
         json weeks = json::array();
         for (const auto& w : s.mobility.weeks) {
           json states = json::array();
           for (const auto& [state, users] : w.unique_users) states.push_back({{"state", state.code()}, {"users", users}});
           weeks.push_back(
               {{"week_start", format_date(w.week_start)}, {"week_end", format_date(w.week_end)}, {"states", std::move(states)}});
         }
         json joined = json::array();
         json correlation = {{"pooled", nullptr}, {"per_week", json::array()}};
         const auto& cases = s.resources->cases;
         if (cases) {
           const auto rows = lagged_join(s.mobility.weeks, *cases, lag);
           for (const auto& r : rows)
             joined.push_back({{"state", r.state.code()},
                               {"week_start", format_date(r.week_start)},
                               {"mobility_week_start", format_date(r.mobility_week_start)},
                               {"mobility", r.mobility},
                               {"cases", r.cases}});
           try {
             const MobilityCorrelation c = mobility_correlation(rows);
             correlation["pooled"] = c.pooled;
             for (const auto& [week, r] : c.per_week)
               correlation["per_week"].push_back({{"week_start", format_date(week)}, {"r", r ? json(*r) : json(nullptr)}});
           } catch (const InsufficientData&) {
           }
         }
         return {{"lag", lag},
                 {"events", s.mobility_events},
                 {"overflow", s.mobility.overflow},
                 {"cases_loaded", cases.has_value()},
                 {"weeks", std::move(weeks)},
                 {"joined", std::move(joined)},
                 {"correlation", std::move(correlation)}};
       }},
      {"/api/lda/topics",
       [](const AnalyticsSnapshot& s, const Params&) -> json {
         const LdaModel& model = require_lda(s);
         std::vector<RelevanceRanking> rankings;
         for (int k = 0; k < model.topics(); ++k)
           rankings.push_back(relevant_terms(model, k, s.resources->lda.lambda, s.resources->lda.top_n));
         return export_topicvis(model, rankings);
       }},
      {"/api/lda/terms",
       [](const AnalyticsSnapshot& s, const Params& p) -> json {
         const LdaModel& model = require_lda(s);
         if (!p.get("topic")) bad_param("topic is required");
         const long long topic = p.integer("topic", 0, std::numeric_limits<int>::min(), std::numeric_limits<int>::max());
         if (topic < 0 || topic >= model.topics())
           throw ApiError{400, error_code::topic_invalid,
                          "topic must be in [0, " + std::to_string(model.topics() - 1) + "]"};
         const double lambda = p.real("lambda", s.resources->lda.lambda, 0.0, 1.0);
         const auto n = static_cast<std::size_t>(p.integer("n", static_cast<long long>(s.resources->lda.top_n), 1, 10000));
         const RelevanceRanking r = relevant_terms(model, static_cast<int>(topic), lambda, n);
         return {{"topic", topic}, {"lambda", lambda}, {"n", n}, {"terms", terms_json(r)}};
       }},
  };
  return table;
}

json health(const AnalyticsSnapshot* s) {
  if (!s)
    return {{"status", "starting"}, {"as_of", nullptr}, {"sequence", 0},     {"tweets", 0},   {"days", 0},
            {"range", nullptr},     {"clock", nullptr}, {"gaps", json::array()}, {"skipped_rows", 0}, {"lda", false}};
  json gaps = json::array();
  for (Date d : s->gaps) gaps.push_back(format_date(d));
  return {{"status", "ok"},
          {"as_of", format_timestamp(s->as_of)},
          {"sequence", s->sequence},
          {"tweets", s->records.size()},
          {"days", s->ingested_days.size()},
          {"range", range_json(s->range)},
          {"clock", format_date(s->clock)},
          {"gaps", std::move(gaps)},
          {"skipped_rows", s->skipped_rows},
          {"lda", s->lda.has_value()}};
}

ApiResponse error(int status, const char* code, const std::string& message) {
  return {status, {{"error", {{"code", code}, {"message", message}}}}};
}

}  // namespace

ApiResponse handle(const AnalyticsSnapshot* snapshot, const ApiRequest& request) {
  if (request.path == "/api/health") return {200, health(snapshot)};
  if (request.path == "/api/schemas") {
    json all = json::object();
    for (const auto& [path, schema] : schemas()) all[path] = schema;
    all["error"] = error_schema();
    return {200, std::move(all)};
  }
  auto it = handlers().find(request.path);
  if (it == handlers().end()) return error(404, error_code::not_found, "no endpoint " + request.path);
  if (!snapshot) return error(503, error_code::not_ready, "no snapshot published yet");
  try {
    json body = it->second(*snapshot, Params(request.params));
    body["as_of"] = format_timestamp(snapshot->as_of);
    body["sequence"] = snapshot->sequence;
    return {200, std::move(body)};
  } catch (const ApiError& e) {
    return error(e.status, e.code, e.message);
  }
}

std::vector<std::string> endpoint_paths() {
  std::vector<std::string> paths;
  for (const auto& [path, schema] : schemas()) paths.push_back(path);
  return paths;
}

const json& response_schema(const std::string& path) {
  static const json none;
  auto it = schemas().find(path);
  return it == schemas().end() ? none : it->second;
}

const json& error_schema() {
  static const json schema = t_obj({{"error", t_obj({{"code", t_str()}, {"message", t_str()}})}});
  return schema;
}

std::vector<ApiRequest> default_report_requests() {
  std::vector<ApiRequest> r = {
      {"/api/health", {}},
      {"/api/frequency", {}},
      {"/api/words/top", {}},
      {"/api/bigrams/top", {}},
      {"/api/topics/frequent", {}},
      {"/api/topics/featured", {}},
      {"/api/sentiment/distribution", {}},
      {"/api/sentiment/cohorts", {}},
      {"/api/mobility/weekly", {}},
      {"/api/lda/topics", {}},
  };
  for (const char* range : {"today", "yesterday", "all"}) {
    r.push_back({"/api/sentiment/series", {{"range", range}}});
    r.push_back({"/api/subjectivity/series", {{"range", range}}});
  }
  for (const char* cohort : {"all", "verified", "nonverified"}) {
    r.push_back({"/api/sentiment/labels", {{"cohort", cohort}}});
    for (const char* polarity : {"pos", "neg"})
      r.push_back({"/api/wordcloud", {{"cohort", cohort}, {"polarity", polarity}}});
  }
  return r;
}

std::string report_name(const ApiRequest& request) {
  std::string name = request.path.rfind("/api/", 0) == 0 ? request.path.substr(5) : request.path;
  std::replace(name.begin(), name.end(), '/', '_');
  for (const auto& [k, v] : request.params) name += "_" + k + "-" + v;
  return name + ".json";
}

}  // namespace coronavis::service
