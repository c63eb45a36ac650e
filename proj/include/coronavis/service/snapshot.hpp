#pragma once

// Immutable analytics snapshots and the single-writer store that publishes
// them to concurrent readers.

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <unordered_set>
#include <vector>

#include "coronavis/service/config.hpp"

namespace coronavis::service {

struct AnalyticsSnapshot {
  std::uint64_t sequence = 0;
  Timestamp as_of{};
  Date clock{};
  DateRange range{Date{std::chrono::days{1}}, Date{}};
  std::vector<TweetRecord> records;  // deduplicated, ingest order
  std::vector<ScoredTweet> tweets;   // parallel to records
  std::vector<Date> ingested_days;
  std::vector<Date> gaps;
  std::size_t skipped_rows = 0;
  std::size_t mobility_events = 0;
  WeeklyMobilityResult mobility;
  std::optional<LdaModel> lda;
  std::shared_ptr<const AnalysisResources> resources;
};

/// Accumulates daily files and produces snapshots. Records are scored once on
/// arrival; every snapshot recomputes the corpus-wide aggregates.
class SnapshotBuilder {
 public:
  explicit SnapshotBuilder(std::shared_ptr<const AnalysisResources> resources);

  void add_day(const DailyFile& file, std::size_t skipped_rows = 0);
  void add_gap(Date day);
  std::size_t size() const { return records_.size(); }

  /// `clock` defaults to the latest ingested day.
  std::shared_ptr<const AnalyticsSnapshot> build(std::optional<Date> clock = std::nullopt) const;

 private:
  std::shared_ptr<const AnalysisResources> resources_;
  std::vector<TweetRecord> records_;
  std::vector<ScoredTweet> tweets_;
  std::unordered_set<std::string> seen_ids_;
  std::vector<Date> days_;
  std::vector<Date> gaps_;
  std::size_t skipped_ = 0;
  mutable std::uint64_t sequence_ = 0;
};

/// One-shot path: dedup, score and aggregate a whole record set at once.
std::shared_ptr<const AnalyticsSnapshot> build_snapshot(std::span<const TweetRecord> records,
                                                        std::shared_ptr<const AnalysisResources> resources,
                                                        std::optional<Date> clock = std::nullopt);

struct CorpusLoad {
  std::vector<DailyFile> files;
  std::size_t skipped_rows = 0;
};

/// `YYYY-MM-DD.csv` files in `dir`, keyed by date.
std::map<Date, fs::path> list_daily_files(const fs::path& dir);
DailyFile load_daily_file(const fs::path& path, Date date, ParseMode mode, std::size_t* skipped = nullptr);
CorpusLoad load_corpus(const fs::path& dir, ParseMode mode, std::optional<Date> from = std::nullopt,
                       std::optional<Date> to = std::nullopt);

/// Read-mostly publication point: readers copy the current pointer, the
/// writer swaps in a complete new snapshot.
class SnapshotStore {
 public:
  std::shared_ptr<const AnalyticsSnapshot> current() const;
  void publish(std::shared_ptr<const AnalyticsSnapshot> snapshot);
  std::uint64_t publications() const;

 private:
  mutable std::mutex mutex_;
  std::shared_ptr<const AnalyticsSnapshot> current_;
  std::uint64_t publications_ = 0;
};

}  // namespace coronavis::service
