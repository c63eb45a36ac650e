#pragma once

// Canonical tweet records, the daily CSV codec, raw-stream ingestion and
// user anonymization.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "coronavis/time.hpp"

namespace coronavis {

/// One of the 50 states or DC, stored as an index into the fixed code table.
class StateCode {
 public:
  static constexpr std::size_t kCount = 51;

  static std::optional<StateCode> parse(std::string_view code);
  static StateCode from_index(std::size_t index);
  static std::span<const StateCode> all();

  std::string_view code() const;
  std::string_view name() const;
  std::size_t index() const { return index_; }

  auto operator<=>(const StateCode&) const = default;

 private:
  explicit constexpr StateCode(std::uint8_t index) : index_(index) {}
  friend struct StateTable;
  std::uint8_t index_;
};

/// Maps free-form profile/place strings to a state: full names, USPS
/// abbreviations and "City, ST" suffixes. Foreign or ambiguous input yields
/// nullopt.
std::optional<StateCode> resolve_location(std::string_view location);

struct TweetRecord {
  std::string tweet_id;
  Timestamp created_at;
  StateCode loc = StateCode::from_index(0);
  std::string text;
  std::string user_id;
  bool verified = false;

  bool operator==(const TweetRecord&) const = default;
};

struct DailyFile {
  Date date;
  std::vector<TweetRecord> records;

  /// `YYYY-MM-DD.csv`
  std::string filename() const;
  bool operator==(const DailyFile&) const = default;
};

bool keyword_match(std::string_view raw_text);

std::string normalize_text(std::string_view raw_text);

class CorpusError : public std::runtime_error {
 public:
  enum class Kind { invalid_handle, missing_column, bad_timestamp, bad_state, bad_row, wrong_date };

  CorpusError(Kind kind, std::size_t row, const std::string& what)
      : std::runtime_error(what), kind_(kind), row_(row) {}

  Kind kind() const { return kind_; }
  /// 1-based data row (header excluded); 0 when not row-specific.
  std::size_t row() const { return row_; }

 private:
  Kind kind_;
  std::size_t row_;
};

/// Keyed one-way pseudo id: HMAC-SHA256(salt, handle), first 16 hex chars.
std::string anonymize_user(std::string_view raw_handle, std::string_view salt);

enum class ParseMode { strict, lenient };

struct RowError {
  CorpusError::Kind kind;
  std::size_t row;
  std::string message;
};

struct CsvParseResult {
  DailyFile file;
  std::vector<RowError> skipped;  // lenient mode only
};

/// Parses one daily file. When `date` is given every record must fall on it;
/// otherwise the date is taken from the first record (an empty file then
/// requires `date`).
CsvParseResult parse_daily_csv(std::istream& in, ParseMode mode = ParseMode::lenient,
                               std::optional<Date> date = std::nullopt);
CsvParseResult parse_daily_csv(std::string_view bytes, ParseMode mode = ParseMode::lenient,
                               std::optional<Date> date = std::nullopt);

void write_daily_csv(const DailyFile& file, std::ostream& out);
std::string write_daily_csv(const DailyFile& file);

/// Splits records into per-day files ordered by date; record order within a
/// day is preserved.
std::vector<DailyFile> split_by_day(std::span<const TweetRecord> records);

std::vector<TweetRecord> dedup(std::span<const TweetRecord> records);

struct IngestStats {
  std::size_t lines = 0;
  std::size_t malformed = 0;
  std::size_t no_keyword = 0;
  std::size_t no_location = 0;
  std::size_t kept = 0;
};

struct IngestResult {
  std::vector<TweetRecord> records;
  IngestStats stats;
};

/// Reads JSON-lines raw tweets in the platform's v1.1 object shape
/// (`id_str`, `created_at`, `text`/`full_text`/`extended_tweet.full_text`,
/// `user.{screen_name,verified,location}`, optional `place.full_name`).
IngestResult ingest_raw(std::istream& in, std::string_view salt);

}  // namespace coronavis
