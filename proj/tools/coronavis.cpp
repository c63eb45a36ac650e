#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <thread>

#include <pthread.h>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "coronavis/service/api.hpp"
#include "coronavis/service/replay.hpp"
#include "coronavis/service/server.hpp"

namespace fs = std::filesystem;
using namespace coronavis;
using namespace coronavis::service;

namespace {

struct CommonOptions {
  std::string config_file;
  std::string data_dir;
  std::string cases;
  std::string clock;
  bool verbose = false;
};

void add_common(CLI::App* cmd, CommonOptions& o, bool with_data = true) {
  cmd->add_option("--config", o.config_file, "JSON config file")->check(CLI::ExistingFile);
  if (with_data) cmd->add_option("--data-dir", o.data_dir, "directory of YYYY-MM-DD.csv daily files");
  cmd->add_option("--cases", o.cases, "case counts CSV (state,week_start,cases)");
  cmd->add_flag("-v,--verbose", o.verbose, "debug logging");
}

Date require_date(const std::string& text, const char* what) {
  auto d = parse_date(text);
  if (!d) throw std::invalid_argument(std::string(what) + ": expected YYYY-MM-DD, got " + text);
  return *d;
}

ServiceConfig make_config(const CommonOptions& o) {
  ServiceConfig c = o.config_file.empty() ? ServiceConfig{} : ServiceConfig::load(o.config_file);
  c.apply_process_env();
  if (!o.data_dir.empty()) c.data_dir = o.data_dir;
  if (!o.cases.empty()) c.cases = fs::path(o.cases);
  if (!o.clock.empty()) c.clock = require_date(o.clock, "--clock");
  if (o.verbose) spdlog::set_level(spdlog::level::debug);
  return c;
}

std::shared_ptr<const AnalyticsSnapshot> load_batch(const ServiceConfig& config,
                                                    std::shared_ptr<const AnalysisResources> resources) {
  CorpusLoad load = load_corpus(config.data_dir, config.parse_mode);
  if (load.files.empty()) throw std::runtime_error("no daily files in " + config.data_dir.string());
  SnapshotBuilder builder(std::move(resources));
  for (const auto& f : load.files) builder.add_day(f);
  auto snap = builder.build(config.clock);
  spdlog::info("loaded {} days, {} tweets ({} rows skipped)", load.files.size(), snap->records.size(),
               load.skipped_rows);
  return snap;
}

void write_json(const fs::path& path, const nlohmann::json& doc) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << doc.dump(2) << '\n';
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

// ---- ingest ----

struct IngestOptions {
  std::string input = "-";
  std::string output;
  std::string out_dir;
  std::string salt;
};

int run_ingest(const IngestOptions& o) {
  std::string salt = o.salt;
  if (salt.empty())
    if (const char* env = std::getenv("CORONAVIS_SALT")) salt = env;
  if (salt.empty()) throw std::invalid_argument("ingest needs --salt or CORONAVIS_SALT");

  std::ifstream file;
  std::istream* in = &std::cin;
  if (o.input != "-") {
    file.open(o.input, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open " + o.input);
    in = &file;
  }
  const IngestResult result = ingest_raw(*in, salt);
  const auto& s = result.stats;
  spdlog::info("ingest: {} lines, {} malformed, {} without keyword, {} without state, {} kept", s.lines, s.malformed,
               s.no_keyword, s.no_location, s.kept);

  const auto records = dedup(result.records);
  if (!o.out_dir.empty()) {
    fs::create_directories(o.out_dir);
    for (const auto& day : split_by_day(records)) {
      auto out = open_output(fs::path(o.out_dir) / day.filename());
      write_daily_csv(day, out);
    }
  } else {
    const DailyFile all{Date{}, records};
    if (o.output.empty() || o.output == "-") {
      write_daily_csv(all, std::cout);
    } else {
      auto out = open_output(o.output);
      write_daily_csv(all, out);
    }
  }
  return 0;
}

// ---- analyze ----

int run_analyze(const CommonOptions& common, const std::string& out_dir, bool no_lda) {
  ServiceConfig config = make_config(common);
  if (no_lda) config.lda.enabled = false;
  const auto snap = load_batch(config, load_resources(config));
  fs::create_directories(out_dir);
  std::size_t written = 0;
  for (const auto& request : default_report_requests()) {
    const ApiResponse r = handle(*snap, request);
    if (r.status != 200) {
      spdlog::warn("{}: {} {}", report_name(request), r.status, r.body["error"]["code"].get<std::string>());
      continue;
    }
    write_json(fs::path(out_dir) / report_name(request), r.body);
    ++written;
  }
  if (snap->lda) {
    write_json(fs::path(out_dir) / "lda.json", handle(*snap, {"/api/lda/topics", {}}).body);
    ++written;
  }
  spdlog::info("analyze: wrote {} reports to {}", written, out_dir);
  return 0;
}

// ---- lda ----

struct LdaCli {
  int topics = 25;
  int iterations = 1000;
  std::uint64_t seed = 20200305;
  double alpha = -1.0;
  double beta = 0.01;
  double lambda = 0.6;
  std::size_t min_df = 2;
  double max_df = 0.5;
  std::size_t top_n = 30;
  std::string output = "lda.json";
};

int run_lda(const CommonOptions& common, const LdaCli& o) {
  ServiceConfig config = make_config(common);
  const auto resources = load_resources(config);
  CorpusLoad load = load_corpus(config.data_dir, config.parse_mode);
  std::vector<TweetRecord> all;
  for (auto& f : load.files) all.insert(all.end(), f.records.begin(), f.records.end());
  all = dedup(all);

  std::vector<TokenList> docs;
  for (const auto& r : all) docs.push_back(content_tokens(r.text, resources->stopwords));
  const Vocabulary vocab = build_vocabulary(docs, resources->stopwords, o.min_df, o.max_df);
  const DocTermMatrix dtm = build_doc_term_matrix(docs, vocab);
  LdaOptions options;
  options.topics = o.topics;
  options.iterations = o.iterations;
  options.seed = o.seed;
  options.alpha = o.alpha;
  options.beta = o.beta;
  spdlog::info("lda: {} documents, {} terms, {} tokens, K={}", docs.size(), vocab.size(), dtm.sum(), o.topics);
  const LdaModel model = lda_fit(dtm, vocab, options);

  std::vector<RelevanceRanking> rankings;
  for (int k = 0; k < model.topics(); ++k) rankings.push_back(relevant_terms(model, k, o.lambda, o.top_n));
  nlohmann::json doc = export_topicvis(model, rankings);
  nlohmann::json trace = nlohmann::json::array();
  for (const auto& p : model.log_likelihood) trace.push_back({{"iteration", p.iteration}, {"log_likelihood", p.value}});
  doc["log_likelihood"] = std::move(trace);
  write_json(o.output, doc);
  spdlog::info("lda: wrote {}", o.output);
  return 0;
}

// ---- mobility ----

int run_mobility(const CommonOptions& common, int lag, const std::string& events_path, const std::string& output) {
  ServiceConfig config = make_config(common);
  CorpusLoad load = load_corpus(config.data_dir, config.parse_mode);
  std::vector<TweetRecord> all;
  for (auto& f : load.files) all.insert(all.end(), f.records.begin(), f.records.end());
  all = dedup(all);

  const auto events = detect_movements(build_trajectories(all));
  if (!events_path.empty()) {
    auto out = open_output(events_path);
    out << "user_id,from_state,to_state,t_from,t_to\n";
    for (const auto& e : events)
      out << e.user_id << ',' << e.from_state.code() << ',' << e.to_state.code() << ',' << format_timestamp(e.t_from)
          << ',' << format_timestamp(e.t_to) << '\n';
  }
  const auto weekly = weekly_mobility(events, WeekBins::covering(config.week_epoch, corpus_range(all)));
  spdlog::info("mobility: {} events, {} weeks, {} outside the bins", events.size(), weekly.weeks.size(),
               weekly.overflow);

  std::ofstream file;
  std::ostream* out = &std::cout;
  if (!output.empty() && output != "-") {
    file = open_output(output);
    out = &file;
  }
  if (config.cases) {
    std::ifstream in(*config.cases);
    if (!in) throw std::runtime_error("cannot open " + config.cases->string());
    const auto infections = ingest_case_counts(in, config.week_epoch);
    const auto rows = lagged_join(weekly.weeks, infections, lag);
    *out << "state,week_start,mobility_week_start,mobility,cases\n";
    for (const auto& r : rows)
      *out << r.state.code() << ',' << format_date(r.week_start) << ',' << format_date(r.mobility_week_start) << ','
           << r.mobility << ',' << r.cases << '\n';
    try {
      spdlog::info("mobility: pooled pearson r = {}", mobility_correlation(rows).pooled);
    } catch (const InsufficientData& e) {
      spdlog::warn("mobility: correlation undefined: {}", e.what());
    }
  } else {
    *out << "state,week_start,mobility\n";
    for (const auto& w : weekly.weeks)
      for (const auto& [state, users] : w.unique_users)
        *out << state.code() << ',' << format_date(w.week_start) << ',' << users << '\n';
  }
  return 0;
}

// ---- serve / replay ----

/// Blocks SIGINT/SIGTERM process-wide and turns them into a stop request.
class SignalStop {
 public:
  SignalStop() {
    sigemptyset(&set_);
    sigaddset(&set_, SIGINT);
    sigaddset(&set_, SIGTERM);
    pthread_sigmask(SIG_BLOCK, &set_, nullptr);
  }

  template <typename OnStop>
  void start(OnStop on_stop) {
    waiter_ = std::thread([this, on_stop] {
      int sig = 0;
      sigwait(&set_, &sig);
      if (sig != 0) spdlog::info("signal {}, shutting down", sig);
      on_stop();
    });
  }

  ~SignalStop() {
    if (waiter_.joinable()) {
      pthread_kill(waiter_.native_handle(), SIGTERM);
      waiter_.join();
    }
  }

 private:
  sigset_t set_;
  std::thread waiter_;
};

int serve_store(const ServiceConfig& config, SnapshotStore& store, std::stop_source& stop,
                const std::function<void()>& background = {}) {
  HttpService http(store, config.cors_origin, config.static_dir);
  if (http.bind(config.host, config.port) < 0) {
    spdlog::error("cannot bind {}:{}", config.host, config.port);
    return 1;
  }
  SignalStop signals;
  signals.start([&] {
    stop.request_stop();
    http.stop();
  });
  std::jthread worker;
  if (background) worker = std::jthread([&] { background(); });
  spdlog::info("listening on {}:{}", config.host, http.port());
  std::cout << "listening on port " << http.port() << std::endl;
  const bool ok = http.serve();
  stop.request_stop();
  return ok ? 0 : 1;
}

int run_serve(const CommonOptions& common, const std::string& host, int port) {
  ServiceConfig config = make_config(common);
  if (!host.empty()) config.host = host;
  if (port >= 0) config.port = port;
  SnapshotStore store;
  store.publish(load_batch(config, load_resources(config)));
  std::stop_source stop;
  return serve_store(config, store, stop);
}

struct ReplayCli {
  double speedup = 86400.0;
  std::string start;
  std::string end;
  bool no_serve = false;
  std::string host;
  int port = -1;
};

int run_replay_cmd(const CommonOptions& common, const ReplayCli& o) {
  ServiceConfig config = make_config(common);
  if (!o.host.empty()) config.host = o.host;
  if (o.port >= 0) config.port = o.port;
  ReplayConfig rc;
  rc.data_dir = config.data_dir;
  rc.speedup = o.speedup;
  rc.mode = config.parse_mode;
  if (!o.start.empty()) rc.start = require_date(o.start, "--start");
  if (!o.end.empty()) rc.end = require_date(o.end, "--end");
  const auto resources = load_resources(config);
  SnapshotStore store;

  auto replay = [&](std::stop_token token) {
    const ReplayReport r = run_replay(rc, resources, store, wall_clock_sleep, token);
    spdlog::info("replay: {} publications, {} gaps{}", r.publications, r.gaps, r.stopped ? ", stopped" : "");
  };
  if (o.no_serve) {
    std::stop_source stop;
    SignalStop signals;
    signals.start([&] { stop.request_stop(); });
    replay(stop.get_token());
    return 0;
  }
  std::stop_source stop;
  return serve_store(config, store, stop, [&] {
    try {
      replay(stop.get_token());
    } catch (const std::exception& e) {
      spdlog::error("replay: {}", e.what());
    }
  });
}

}  // namespace

int main(int argc, char** argv) {
  spdlog::set_default_logger(spdlog::stderr_color_mt("coronavis"));

  CLI::App app{"Pandemic tweet analytics: ingest, analyze, topic models, mobility and the JSON service"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  IngestOptions ingest;
  auto* ingest_cmd = app.add_subcommand("ingest", "raw JSON-lines tweets -> daily CSV");
  ingest_cmd->add_option("--input,-i", ingest.input, "JSON-lines input, - for stdin");
  auto* out_opt = ingest_cmd->add_option("--output,-o", ingest.output, "single CSV output, - for stdout");
  ingest_cmd->add_option("--out-dir", ingest.out_dir, "write one YYYY-MM-DD.csv per day")->excludes(out_opt);
  ingest_cmd->add_option("--salt", ingest.salt, "anonymization key (or CORONAVIS_SALT)");

  CommonOptions common;
  std::string analyze_out = "reports";
  bool no_lda = false;
  auto* analyze_cmd = app.add_subcommand("analyze", "batch analysis, one JSON report per figure");
  add_common(analyze_cmd, common);
  analyze_cmd->add_option("--out-dir,-o", analyze_out, "report directory");
  analyze_cmd->add_option("--clock", common.clock, "date treated as today (default: last corpus day)");
  analyze_cmd->add_flag("--no-lda", no_lda, "skip the topic model");

  LdaCli lda;
  auto* lda_cmd = app.add_subcommand("lda", "fit a topic model and export lda.json");
  add_common(lda_cmd, common);
  lda_cmd->add_option("-k,--topics", lda.topics, "number of topics")->check(CLI::PositiveNumber);
  lda_cmd->add_option("--iterations", lda.iterations, "Gibbs sweeps")->check(CLI::PositiveNumber);
  lda_cmd->add_option("--seed", lda.seed, "64-bit sampler seed");
  lda_cmd->add_option("--alpha", lda.alpha, "document-topic prior (default 50/K)");
  lda_cmd->add_option("--beta", lda.beta, "topic-term prior")->check(CLI::PositiveNumber);
  lda_cmd->add_option("--lambda", lda.lambda, "relevance weight")->check(CLI::Range(0.0, 1.0));
  lda_cmd->add_option("--min-df", lda.min_df, "minimum document frequency")->check(CLI::PositiveNumber);
  lda_cmd->add_option("--max-df", lda.max_df, "maximum document fraction")->check(CLI::Range(0.0, 1.0));
  lda_cmd->add_option("--top-n", lda.top_n, "terms per topic")->check(CLI::PositiveNumber);
  lda_cmd->add_option("--output,-o", lda.output, "payload path");

  int lag = 1;
  std::string events_path, mobility_out;
  auto* mobility_cmd = app.add_subcommand("mobility", "movement events and the lagged case join");
  add_common(mobility_cmd, common);
  mobility_cmd->add_option("--lag", lag, "weeks between mobility and cases")->check(CLI::Range(0, 52));
  mobility_cmd->add_option("--events", events_path, "also write the movement events CSV");
  mobility_cmd->add_option("--output,-o", mobility_out, "joined CSV, stdout by default");

  std::string host;
  int port = -1;
  auto* serve_cmd = app.add_subcommand("serve", "HTTP JSON service over the corpus");
  add_common(serve_cmd, common);
  serve_cmd->add_option("--host", host, "bind address");
  serve_cmd->add_option("--port,-p", port, "port, 0 for ephemeral")->check(CLI::Range(0, 65535));
  serve_cmd->add_option("--clock", common.clock, "date treated as today");

  ReplayCli replay;
  auto* replay_cmd = app.add_subcommand("replay", "re-stream daily files on an accelerated clock");
  add_common(replay_cmd, common);
  replay_cmd->add_option("--speedup", replay.speedup, "corpus seconds per wall second")->check(CLI::PositiveNumber);
  replay_cmd->add_option("--start", replay.start, "first day");
  replay_cmd->add_option("--end", replay.end, "last day");
  replay_cmd->add_flag("--no-serve", replay.no_serve, "replay without the HTTP service");
  replay_cmd->add_option("--host", replay.host, "bind address");
  replay_cmd->add_option("--port,-p", replay.port, "port, 0 for ephemeral")->check(CLI::Range(0, 65535));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  }

  try {
    if (*ingest_cmd) return run_ingest(ingest);
    if (*analyze_cmd) return run_analyze(common, analyze_out, no_lda);
    if (*lda_cmd) return run_lda(common, lda);
    if (*mobility_cmd) return run_mobility(common, lag, events_path, mobility_out);
    if (*serve_cmd) return run_serve(common, host, port);
    if (*replay_cmd) return run_replay_cmd(common, replay);
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return 1;
  }
  return 2;
}
