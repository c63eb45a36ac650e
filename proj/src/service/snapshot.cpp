#include <algorithm>
#include <fstream>

#include <spdlog/spdlog.h>

#include "coronavis/service/snapshot.hpp"

namespace coronavis::service {

namespace {

std::optional<LdaModel> fit_corpus_lda(std::span<const TweetRecord> records, const AnalysisResources& res) {
  if (!res.lda.enabled || records.empty()) return std::nullopt;
  std::vector<TokenList> docs;
  docs.reserve(records.size());
  for (const auto& r : records) docs.push_back(content_tokens(r.text, res.stopwords));
  try {
    const Vocabulary vocab = build_vocabulary(docs, res.stopwords, res.lda.min_df, res.lda.max_df_fraction);
    const DocTermMatrix dtm = build_doc_term_matrix(docs, vocab);
    return lda_fit(dtm, vocab, res.lda.options);
  } catch (const EmptyVocabulary& e) {
    spdlog::warn("topic model skipped: {}", e.what());
  } catch (const InvalidTopicCount& e) {
    spdlog::warn("topic model skipped: {}", e.what());
  }
  return std::nullopt;
}

std::shared_ptr<AnalyticsSnapshot> finish(std::vector<TweetRecord> records, std::vector<ScoredTweet> tweets,
                                          std::shared_ptr<const AnalysisResources> resources,
                                          std::optional<Date> clock) {
  auto snap = std::make_shared<AnalyticsSnapshot>();
  snap->range = corpus_range(records);
  snap->clock = clock ? *clock : (snap->range.empty() ? Date{} : snap->range.to);
  snap->as_of = snap->clock;
  for (const auto& r : records) snap->as_of = std::max(snap->as_of, r.created_at);

  if (!snap->range.empty()) {
    const auto events = detect_movements(build_trajectories(records));
    snap->mobility_events = events.size();
    snap->mobility = weekly_mobility(events, WeekBins::covering(resources->week_epoch, snap->range));
  }
  snap->lda = fit_corpus_lda(records, *resources);
  snap->records = std::move(records);
  snap->tweets = std::move(tweets);
  snap->resources = std::move(resources);
  return snap;
}

}  // namespace

SnapshotBuilder::SnapshotBuilder(std::shared_ptr<const AnalysisResources> resources)
    : resources_(std::move(resources)) {
  if (!resources_) throw std::invalid_argument("snapshot builder needs resources");
}

void SnapshotBuilder::add_day(const DailyFile& file, std::size_t skipped_rows) {
  std::vector<TweetRecord> fresh;
  for (const auto& r : file.records)
    if (seen_ids_.insert(r.tweet_id).second) fresh.push_back(r);
  auto scored = score_records(fresh, resources_->valence, resources_->subjectivity);
  records_.insert(records_.end(), std::make_move_iterator(fresh.begin()), std::make_move_iterator(fresh.end()));
  tweets_.insert(tweets_.end(), std::make_move_iterator(scored.begin()), std::make_move_iterator(scored.end()));
  days_.push_back(file.date);
  skipped_ += skipped_rows;
}

void SnapshotBuilder::add_gap(Date day) { gaps_.push_back(day); }

std::shared_ptr<const AnalyticsSnapshot> SnapshotBuilder::build(std::optional<Date> clock) const {
  auto snap = finish(records_, tweets_, resources_, clock);
  if (!clock && !days_.empty()) {
    snap->clock = std::max(snap->clock, *std::max_element(days_.begin(), days_.end()));
    snap->as_of = std::max(snap->as_of, Timestamp(snap->clock));
  }
  snap->sequence = ++sequence_;
  snap->ingested_days = days_;
  snap->gaps = gaps_;
  snap->skipped_rows = skipped_;
  return snap;
}

std::shared_ptr<const AnalyticsSnapshot> build_snapshot(std::span<const TweetRecord> records,
                                                        std::shared_ptr<const AnalysisResources> resources,
                                                        std::optional<Date> clock) {
  if (!resources) throw std::invalid_argument("snapshot needs resources");
  std::vector<TweetRecord> unique = dedup(records);
  auto scored = score_records(unique, resources->valence, resources->subjectivity);
  auto snap = finish(std::move(unique), std::move(scored), std::move(resources), clock);
  snap->sequence = 1;
  for (const auto& f : split_by_day(snap->records)) snap->ingested_days.push_back(f.date);
  return snap;
}

std::map<Date, fs::path> list_daily_files(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw std::runtime_error("not a directory: " + dir.string());
  std::map<Date, fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".csv") continue;
    if (auto d = parse_date(entry.path().stem().string()); d && format_date(*d) == entry.path().stem().string())
      files.emplace(*d, entry.path());
  }
  return files;
}

DailyFile load_daily_file(const fs::path& path, Date date, ParseMode mode, std::size_t* skipped) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  CsvParseResult parsed = parse_daily_csv(in, mode, date);
  for (const auto& e : parsed.skipped) spdlog::warn("{}: row {} skipped: {}", path.string(), e.row, e.message);
  if (skipped) *skipped = parsed.skipped.size();
  return std::move(parsed.file);
}

CorpusLoad load_corpus(const fs::path& dir, ParseMode mode, std::optional<Date> from, std::optional<Date> to) {
  CorpusLoad load;
  for (const auto& [date, path] : list_daily_files(dir)) {
    if ((from && date < *from) || (to && date > *to)) continue;
    std::size_t skipped = 0;
    load.files.push_back(load_daily_file(path, date, mode, &skipped));
    load.skipped_rows += skipped;
  }
  return load;
}

std::shared_ptr<const AnalyticsSnapshot> SnapshotStore::current() const {
  std::lock_guard lock(mutex_);
  return current_;
}

void SnapshotStore::publish(std::shared_ptr<const AnalyticsSnapshot> snapshot) {
  std::lock_guard lock(mutex_);
  current_.swap(snapshot);
  ++publications_;
  // the old snapshot, now in `snapshot`, is released after the lock drops
}

std::uint64_t SnapshotStore::publications() const {
  std::lock_guard lock(mutex_);
  return publications_;
}

}  // namespace coronavis::service
