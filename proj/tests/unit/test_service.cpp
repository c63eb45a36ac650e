#include <doctest.h>

#include <atomic>
#include <fstream>
#include <thread>

#include "coronavis/service/api.hpp"
#include "coronavis/service/config.hpp"
#include "coronavis/service/json_schema.hpp"
#include "coronavis/service/replay.hpp"
#include "coronavis/service/server.hpp"
#include "coronavis/service/snapshot.hpp"
#include "fixtures.hpp"

// httplib pulls in <resolv.h>, whose macros clash with Eigen; keep it last.
#include <httplib.h>

using namespace coronavis;
using namespace coronavis::service;
using fixtures::day;
using nlohmann::json;

namespace {

const std::shared_ptr<const AnalyticsSnapshot>& fixture_snapshot() {
  static const auto snap = [] {
    const auto records = fixtures::synthetic_tweets({.tweets = 1500, .days = 5, .seed = 41});
    return build_snapshot(records, fixtures::test_resources());
  }();
  return snap;
}

ApiResponse get(const std::string& path, std::map<std::string, std::string> params = {}) {
  return handle(*fixture_snapshot(), {path, std::move(params)});
}

std::string error_of(const ApiResponse& r) {
  if (!r.body.contains("error")) return "";
  CHECK(conforms(error_schema(), r.body));
  return r.body["error"]["code"].get<std::string>();
}

std::vector<ApiRequest> exercised_requests() {
  auto requests = default_report_requests();
  const std::vector<ApiRequest> more = {
      {"/api/frequency", {{"state", "GA"}}},
      {"/api/frequency", {{"from", "2020-06-09"}, {"to", "2020-06-10"}}},
      {"/api/words/top", {{"state", "tx"}, {"k", "5"}}},
      {"/api/bigrams/top", {{"k", "3"}}},
      {"/api/topics/frequent", {{"state", "NY"}, {"k", "4"}}},
      {"/api/topics/featured", {{"k", "100"}}},
      {"/api/sentiment/series", {{"state", "GA"}, {"range", "today"}}},
      {"/api/sentiment/series", {{"range", "custom"}, {"from", "2020-06-08"}, {"to", "2020-06-09"}}},
      {"/api/subjectivity/series", {{"state", "US"}, {"range", "custom"}, {"from", "2020-06-01"}, {"to", "2020-06-30"}}},
      {"/api/sentiment/distribution", {{"bins", "7"}, {"state", "CA"}}},
      {"/api/sentiment/cohorts", {{"min_tweets", "1"}}},
      {"/api/wordcloud", {{"state", "GA"}, {"range", "yesterday"}, {"polarity", "neg"}, {"k", "10"}}},
      {"/api/mobility/weekly", {{"lag", "0"}}},
      {"/api/lda/terms", {{"topic", "0"}}},
      {"/api/lda/terms", {{"topic", "3"}, {"lambda", "1"}, {"n", "5"}}},
      {"/api/schemas", {}},
  };
  requests.insert(requests.end(), more.begin(), more.end());
  return requests;
}

}  // namespace

TEST_CASE("config file and environment overrides") {
  const auto dir = fixtures::scratch_dir("config");
  {
    std::ofstream out(dir / "service.json");
    out << R"({"port": 9090, "data_dir": "days", "cases": "/abs/cases.csv", "clock": "2020-06-12",
               "parse_mode": "strict", "lda": {"topics": 7, "lambda": 0.4}})";
  }
  auto c = ServiceConfig::load(dir / "service.json");
  CHECK(c.port == 9090);
  CHECK(c.data_dir == dir / "days");
  CHECK(c.cases == fs::path("/abs/cases.csv"));
  CHECK(c.clock == day("2020-06-12"));
  CHECK(c.parse_mode == ParseMode::strict);
  CHECK(c.lda.options.topics == 7);
  CHECK(c.lda.lambda == 0.4);
  CHECK(c.lda.options.beta == 0.01);
  CHECK(c.host == "0.0.0.0");

  std::map<std::string, std::string> env = {{"CORONAVIS_PORT", "7000"}, {"CORONAVIS_DATA_DIR", "/srv/tweets"}};
  auto lookup = [&](const char* name) -> std::optional<std::string> {
    auto it = env.find(name);
    if (it == env.end()) return std::nullopt;
    return it->second;
  };
  c.apply_env(lookup);
  CHECK(c.port == 7000);
  CHECK(c.data_dir == "/srv/tweets");
  env["CORONAVIS_PORT"] = "70000";
  CHECK_THROWS(c.apply_env(lookup));
  env["CORONAVIS_PORT"] = "12ab";
  CHECK_THROWS(c.apply_env(lookup));

  CHECK_THROWS(ServiceConfig::from_json(json::array()));
  CHECK_THROWS(ServiceConfig::from_json({{"parse_mode", "loose"}}));
  CHECK_THROWS(ServiceConfig::from_json({{"clock", "June"}}));
  CHECK_THROWS(ServiceConfig::load(dir / "missing.json"));
  fs::remove_all(dir);
}

TEST_CASE("shipped resources load") {
  ServiceConfig config;
  const auto res = load_resources(config);
  CHECK(res->featured.size() == 100);
  CHECK(res->stopwords.contains("the"));
  CHECK_FALSE(res->cases);
  config.cases = "/nonexistent/cases.csv";
  CHECK_THROWS(load_resources(config));
}

TEST_CASE("schema validator") {
  const json schema = {{"type", "object"},
                       {"required", {"a", "b"}},
                       {"additionalProperties", false},
                       {"properties",
                        {{"a", {{"type", "integer"}, {"minimum", 0}}},
                         {"b", {{"type", "array"}, {"minItems", 1}, {"items", {{"type", {"string", "null"}}}}}},
                         {"c", {{"type", "string"}, {"enum", {"x", "y"}}}},
                         {"d", {{"type", "number"}, {"maximum", 1}}}}}};
  CHECK(conforms(schema, {{"a", 1}, {"b", {"s", nullptr}}}));
  CHECK(conforms(schema, {{"a", 0}, {"b", {"s"}}, {"c", "y"}, {"d", 0.5}}));
  CHECK_FALSE(conforms(schema, {{"a", 1.5}, {"b", {"s"}}}));
  CHECK_FALSE(conforms(schema, {{"a", -1}, {"b", {"s"}}}));
  CHECK_FALSE(conforms(schema, {{"a", 1}}));
  CHECK_FALSE(conforms(schema, {{"a", 1}, {"b", json::array()}}));
  CHECK_FALSE(conforms(schema, {{"a", 1}, {"b", {3}}}));
  CHECK_FALSE(conforms(schema, {{"a", 1}, {"b", {"s"}}, {"c", "z"}}));
  CHECK_FALSE(conforms(schema, {{"a", 1}, {"b", {"s"}}, {"d", 2}}));
  CHECK_FALSE(conforms(schema, {{"a", 1}, {"b", {"s"}}, {"extra", true}}));
  CHECK_FALSE(conforms(schema, json::array()));
  const auto v = validate_schema(schema, {{"a", 1}, {"b", {"s", 3}}});
  REQUIRE(v.size() == 1);
  CHECK(v[0].path == "/b/1");
}

TEST_CASE("every endpoint answers within its schema") {
  const auto snap = fixture_snapshot();
  REQUIRE(snap->lda);
  std::set<std::string> covered;
  for (const auto& req : exercised_requests()) {
    CAPTURE(req.path);
    CAPTURE(report_name(req));
    const auto r = handle(*snap, req);
    CHECK(r.status == 200);
    const auto violations = validate_schema(response_schema(req.path), r.body);
    for (const auto& v : violations) MESSAGE(v.path << ": " << v.message);
    CHECK(violations.empty());
    covered.insert(req.path);
  }
  for (const auto& path : endpoint_paths()) {
    CAPTURE(path);
    CHECK(covered.contains(path));
    CHECK(response_schema(path).is_object());
  }
  CHECK(endpoint_paths().size() == 16);
  CHECK(response_schema("/api/nope").is_null());
}

TEST_CASE("request errors carry codes") {
  CHECK(get("/api/frequency", {{"state", "ZZ"}}).status == 400);
  CHECK(error_of(get("/api/frequency", {{"state", "ZZ"}})) == "STATE_UNKNOWN");
  CHECK(error_of(get("/api/sentiment/series", {{"state", "Georgia"}})) == "STATE_UNKNOWN");
  CHECK(error_of(get("/api/words/top", {{"k", "0"}})) == "BAD_PARAM");
  CHECK(error_of(get("/api/words/top", {{"k", "ten"}})) == "BAD_PARAM");
  CHECK(error_of(get("/api/words/top", {{"k", "5x"}})) == "BAD_PARAM");
  CHECK(error_of(get("/api/sentiment/series", {{"range", "decade"}})) == "BAD_PARAM");
  CHECK(error_of(get("/api/sentiment/series", {{"range", "custom"}, {"from", "2020-06-01"}})) == "BAD_PARAM");
  CHECK(error_of(get("/api/sentiment/series", {{"range", "custom"}, {"from", "2020-06-10"}, {"to", "2020-06-01"}})) ==
        "RANGE_INVALID");
  CHECK(error_of(get("/api/frequency", {{"from", "2020-06-10"}, {"to", "2020-06-01"}})) == "RANGE_INVALID");
  CHECK(error_of(get("/api/sentiment/labels", {{"cohort", "bots"}})) == "BAD_PARAM");
  CHECK(error_of(get("/api/wordcloud", {{"polarity", "neutral"}})) == "BAD_PARAM");
  CHECK(error_of(get("/api/mobility/weekly", {{"lag", "-1"}})) == "BAD_PARAM");
  CHECK(error_of(get("/api/lda/terms", {})) == "BAD_PARAM");
  CHECK(error_of(get("/api/lda/terms", {{"topic", "4"}})) == "TOPIC_INVALID");
  CHECK(error_of(get("/api/lda/terms", {{"topic", "0"}, {"lambda", "1.2"}})) == "BAD_PARAM");
  CHECK(get("/api/missing").status == 404);
  CHECK(error_of(get("/api/missing")) == "NOT_FOUND");

  const auto no_lda = build_snapshot(fixture_snapshot()->records, fixtures::test_resources(false));
  const auto r = handle(*no_lda, {"/api/lda/topics", {}});
  CHECK(r.status == 404);
  CHECK(error_of(r) == "LDA_UNAVAILABLE");

  CHECK(handle(nullptr, {"/api/frequency", {}}).status == 503);
  const auto starting = handle(nullptr, {"/api/health", {}});
  CHECK(starting.status == 200);
  CHECK(starting.body["status"] == "starting");
  CHECK(conforms(response_schema("/api/health"), starting.body));
}

TEST_CASE("state scoping: GA today and nationwide totals") {
  const auto snap = fixture_snapshot();
  CHECK(snap->clock == day("2020-06-12"));
  const auto r = get("/api/sentiment/series", {{"state", "ga"}, {"range", "today"}});
  REQUIRE(r.status == 200);
  CHECK(r.body["scope"] == "GA");
  REQUIRE(r.body["points"].size() == 1);
  CHECK(r.body["points"][0]["date"] == "2020-06-12");
  std::size_t count = 0;
  double sum = 0;
  for (std::size_t i = 0; i < snap->records.size(); ++i) {
    if (snap->records[i].loc.code() != "GA" || day_of(snap->records[i].created_at) != day("2020-06-12")) continue;
    ++count;
    sum += snap->tweets[i].polarity.compound;
  }
  REQUIRE(count > 0);
  CHECK(r.body["points"][0]["count"] == count);
  CHECK(r.body["points"][0]["mean_compound"].get<double>() == doctest::Approx(sum / count).epsilon(1e-12));

  const auto nation = get("/api/frequency", {{"state", "all"}});
  CHECK(nation.body["scope"] == get("/api/frequency").body["scope"]);
  std::vector<std::size_t> summed(nation.body["points"].size(), 0);
  for (auto s : StateCode::all()) {
    const auto one = get("/api/frequency", {{"state", std::string(s.code())}});
    REQUIRE(one.body["points"].size() == summed.size());
    for (std::size_t i = 0; i < summed.size(); ++i) summed[i] += one.body["points"][i]["count"].get<std::size_t>();
  }
  for (std::size_t i = 0; i < summed.size(); ++i) CHECK(nation.body["points"][i]["count"] == summed[i]);

  const auto health = get("/api/health");
  CHECK(health.body["tweets"] == snap->records.size());
  CHECK(health.body["sequence"] == 1);
}

TEST_CASE("snapshot builder deduplicates across days") {
  const auto records = fixtures::synthetic_tweets({.tweets = 300, .days = 3, .seed = 8});
  auto days = split_by_day(records);
  SnapshotBuilder builder(fixtures::test_resources(false));
  builder.add_day(days[0]);
  const auto first = builder.build();
  builder.add_day(days[0]);
  builder.add_gap(days[1].date);
  builder.add_day(days[2], 4);
  const auto second = builder.build();
  CHECK(first->sequence == 1);
  CHECK(second->sequence == 2);
  CHECK(second->records.size() == days[0].records.size() + days[2].records.size());
  CHECK(second->gaps == std::vector<Date>{days[1].date});
  CHECK(second->skipped_rows == 4);
  CHECK(second->clock == days[2].date);
  CHECK(first->records.size() == days[0].records.size());
  CHECK(second->tweets.size() == second->records.size());
}

TEST_CASE("corpus directory loading") {
  const auto dir = fixtures::scratch_dir("load");
  const auto records = fixtures::synthetic_tweets({.tweets = 200, .days = 3, .seed = 21});
  fixtures::write_days(dir, split_by_day(records));
  std::ofstream(dir / "notes.txt") << "ignored";
  std::ofstream(dir / "2020-06-99.csv") << "ignored";
  CHECK(list_daily_files(dir).size() == 3);
  const auto all = load_corpus(dir, ParseMode::strict);
  CHECK(all.files.size() == 3);
  std::size_t n = 0;
  for (const auto& f : all.files) n += f.records.size();
  CHECK(n == records.size());
  CHECK(load_corpus(dir, ParseMode::strict, day("2020-06-09")).files.size() == 2);
  CHECK(load_corpus(dir, ParseMode::strict, std::nullopt, day("2020-06-08")).files.size() == 1);
  CHECK_THROWS(list_daily_files(dir / "absent"));
  fs::remove_all(dir);
}

TEST_CASE("replay publishes one snapshot per file and records gaps") {
  const auto dir = fixtures::scratch_dir("replay");
  auto days = split_by_day(fixtures::synthetic_tweets({.tweets = 400, .days = 4, .seed = 5}));
  days.erase(days.begin() + 2);  // 2020-06-10 becomes a gap
  fixtures::write_days(dir, days);

  SnapshotStore store;
  std::vector<std::size_t> counts;
  std::vector<double> intervals;
  auto sleeper = [&](std::chrono::duration<double> interval, std::stop_token) {
    intervals.push_back(interval.count());
    if (auto s = store.current()) counts.push_back(s->records.size());
    return true;
  };
  ReplayConfig config;
  config.data_dir = dir;
  config.speedup = 86400.0 * 4;
  const auto report = run_replay(config, fixtures::test_resources(false), store, sleeper);
  CHECK(report.publications == 3);
  CHECK(report.gaps == 1);
  CHECK_FALSE(report.stopped);
  CHECK(store.publications() == 3);
  CHECK(intervals == std::vector<double>{0.25, 0.25, 0.25});
  counts.push_back(store.current()->records.size());
  CHECK(std::is_sorted(counts.begin(), counts.end()));
  CHECK(counts.front() < counts.back());
  CHECK(store.current()->gaps == std::vector<Date>{day("2020-06-10")});
  CHECK(store.current()->sequence == 3);

  // a stop request ends the replay after the first publication
  SnapshotStore stopped_store;
  std::stop_source source;
  auto stopper = [&](std::chrono::duration<double>, std::stop_token token) {
    source.request_stop();
    return !token.stop_requested();
  };
  const auto stopped = run_replay(config, fixtures::test_resources(false), stopped_store, stopper, source.get_token());
  CHECK(stopped.stopped);
  CHECK(stopped.publications == 1);

  // the real sleeper wakes early on stop
  std::stop_source wake;
  std::thread trigger([&] {
    std::this_thread::sleep_for(std::chrono::milliseconds(50));
    wake.request_stop();
  });
  const auto t0 = std::chrono::steady_clock::now();
  CHECK_FALSE(wall_clock_sleep(std::chrono::seconds(30), wake.get_token()));
  trigger.join();
  CHECK(std::chrono::steady_clock::now() - t0 < std::chrono::seconds(10));
  CHECK(wall_clock_sleep(std::chrono::milliseconds(1), std::stop_token{}));

  config.start = day("2020-06-01");
  CHECK_THROWS(run_replay(config, fixtures::test_resources(false), store, sleeper));
  config.start.reset();
  config.speedup = 0;
  CHECK_THROWS(run_replay(config, fixtures::test_resources(false), store, sleeper));
  fs::remove_all(dir);
}

TEST_CASE("readers never see a torn snapshot") {
  SnapshotStore store;
  const auto records = fixtures::synthetic_tweets({.tweets = 100, .days = 2, .seed = 2});
  const auto resources = fixtures::test_resources(false);
  std::atomic<bool> done = false;
  std::atomic<long> bad = 0;
  std::vector<std::thread> readers;
  for (int i = 0; i < 4; ++i)
    readers.emplace_back([&] {
      std::uint64_t last = 0;
      while (!done) {
        auto s = store.current();
        if (!s) continue;
        if (s->sequence < last || s->records.size() != s->tweets.size() ||
            s->records.size() != static_cast<std::size_t>(s->sequence))
          ++bad;
        last = s->sequence;
      }
    });
  for (std::size_t n = 1; n <= 60; ++n) {
    auto snap = std::make_shared<AnalyticsSnapshot>(*build_snapshot(std::span(records).first(n), resources));
    snap->sequence = n;
    store.publish(std::move(snap));
  }
  done = true;
  for (auto& t : readers) t.join();
  CHECK(bad == 0);
  CHECK(store.publications() == 60);
}

TEST_CASE("http service serves the api with CORS") {
  SnapshotStore store;
  HttpService http(store, "https://dash.example");
  const int port = http.bind("127.0.0.1", 0);
  REQUIRE(port > 0);
  std::thread loop([&] { http.serve(); });
  http.wait_until_ready();

  httplib::Client client("127.0.0.1", port);
  auto health = client.Get("/api/health");
  REQUIRE(health);
  CHECK(health->status == 200);
  CHECK(json::parse(health->body)["status"] == "starting");
  CHECK(client.Get("/api/frequency")->status == 503);

  store.publish(fixture_snapshot());
  auto bad = client.Get("/api/frequency?state=ZZ");
  REQUIRE(bad);
  CHECK(bad->status == 400);
  CHECK(json::parse(bad->body)["error"]["code"] == "STATE_UNKNOWN");
  CHECK(bad->get_header_value("Access-Control-Allow-Origin") == "https://dash.example");
  CHECK(bad->get_header_value("Content-Type").starts_with("application/json"));
  auto words = client.Get("/api/words/top?k=3&state=GA");
  REQUIRE(words);
  CHECK(words->status == 200);
  CHECK(json::parse(words->body) == handle(*fixture_snapshot(), {"/api/words/top", {{"k", "3"}, {"state", "GA"}}}).body);
  auto preflight = client.Options("/api/words/top");
  REQUIRE(preflight);
  CHECK(preflight->status == 204);
  CHECK(client.Get("/api/unknown")->status == 404);

  http.stop();
  loop.join();
}
