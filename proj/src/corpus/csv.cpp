#include <algorithm>
#include <array>
#include <iterator>
#include <map>
#include <sstream>

#include "coronavis/corpus.hpp"

namespace coronavis {

namespace {

constexpr std::array<std::string_view, 6> kColumns{"tweet_id", "created_at", "loc",
                                                   "text",     "user_id",    "verified"};

// Minimal RFC 4180 reader over an in-memory buffer.
class CsvReader {
 public:
  explicit CsvReader(std::string_view data) : data_(data) {
    if (data_.substr(0, 3) == "\xEF\xBB\xBF") pos_ = 3;
  }

  bool done() const { return pos_ >= data_.size(); }

  // Returns false on an unterminated quoted field.
  bool next(std::vector<std::string>& fields) {
    fields.clear();
    std::string field;
    bool quoted = false;
    bool was_quoted = false;
    while (pos_ < data_.size()) {
      char c = data_[pos_++];
      if (quoted) {
        if (c == '"') {
          if (pos_ < data_.size() && data_[pos_] == '"') {
            field.push_back('"');
            ++pos_;
          } else {
            quoted = false;
          }
        } else {
          field.push_back(c);
        }
        continue;
      }
      if (c == '"' && field.empty() && !was_quoted) {
        quoted = was_quoted = true;
      } else if (c == ',') {
        fields.push_back(std::move(field));
        field.clear();
        was_quoted = false;
      } else if (c == '\n' || c == '\r') {
        if (c == '\r' && pos_ < data_.size() && data_[pos_] == '\n') ++pos_;
        fields.push_back(std::move(field));
        return true;
      } else {
        field.push_back(c);
      }
    }
    if (quoted) return false;
    fields.push_back(std::move(field));
    return true;
  }

 private:
  std::string_view data_;
  std::size_t pos_ = 0;
};

bool needs_quotes(std::string_view s) {
  return s.find_first_of(",\"\r\n") != std::string_view::npos || (!s.empty() && (s.front() == ' ' || s.back() == ' '));
}

void write_field(std::ostream& out, std::string_view s) {
  if (!needs_quotes(s)) {
    out << s;
    return;
  }
  out << '"';
  for (char c : s) {
    if (c == '"') out << '"';
    out << c;
  }
  out << '"';
}

}  // namespace

std::string DailyFile::filename() const { return format_date(date) + ".csv"; }

CsvParseResult parse_daily_csv(std::string_view bytes, ParseMode mode, std::optional<Date> date) {
  using Kind = CorpusError::Kind;
  CsvReader reader(bytes);
  std::vector<std::string> fields;
  if (reader.done() || !reader.next(fields))
    throw CorpusError(Kind::missing_column, 0, "missing header row");

  std::array<std::size_t, kColumns.size()> column{};
  for (std::size_t c = 0; c < kColumns.size(); ++c) {
    auto it = std::find(fields.begin(), fields.end(), kColumns[c]);
    if (it == fields.end())
      throw CorpusError(Kind::missing_column, 0, "missing column " + std::string(kColumns[c]));
    column[c] = static_cast<std::size_t>(std::distance(fields.begin(), it));
  }
  const std::size_t width = fields.size();

  CsvParseResult result;
  result.file.date = date.value_or(Date{});
  bool date_known = date.has_value();

  auto fail = [&](Kind kind, std::size_t row, std::string message) {
    if (mode == ParseMode::strict) throw CorpusError(kind, row, message);
    result.skipped.push_back({kind, row, std::move(message)});
  };

  std::size_t row = 0;
  while (!reader.done()) {
    ++row;
    if (!reader.next(fields)) {
      fail(Kind::bad_row, row, "unterminated quoted field at row " + std::to_string(row));
      break;
    }
    if (fields.size() == 1 && fields[0].empty()) {
      --row;  // blank line
      continue;
    }
    if (fields.size() != width) {
      fail(Kind::bad_row, row, "row " + std::to_string(row) + " has " + std::to_string(fields.size()) +
                                   " fields, expected " + std::to_string(width));
      continue;
    }
    TweetRecord rec;
    rec.tweet_id = fields[column[0]];
    if (rec.tweet_id.empty()) {
      fail(Kind::bad_row, row, "empty tweet_id at row " + std::to_string(row));
      continue;
    }
    auto ts = parse_timestamp(fields[column[1]]);
    if (!ts) {
      fail(Kind::bad_timestamp, row, "bad timestamp at row " + std::to_string(row));
      continue;
    }
    rec.created_at = *ts;
    auto state = StateCode::parse(fields[column[2]]);
    if (!state) {
      fail(Kind::bad_state, row, "bad state '" + fields[column[2]] + "' at row " + std::to_string(row));
      continue;
    }
    rec.loc = *state;
    rec.text = std::move(fields[column[3]]);
    rec.user_id = std::move(fields[column[4]]);
    const auto& v = fields[column[5]];
    if (v == "1" || v == "True" || v == "true") {
      rec.verified = true;
    } else if (v == "0" || v == "False" || v == "false") {
      rec.verified = false;
    } else {
      fail(Kind::bad_row, row, "bad verified flag at row " + std::to_string(row));
      continue;
    }
    if (!date_known) {
      result.file.date = day_of(rec.created_at);
      date_known = true;
    } else if (day_of(rec.created_at) != result.file.date) {
      fail(Kind::wrong_date, row, "row " + std::to_string(row) + " is not on " + format_date(result.file.date));
      continue;
    }
    result.file.records.push_back(std::move(rec));
  }
  if (!date_known) throw CorpusError(Kind::wrong_date, 0, "empty daily file needs an explicit date");
  return result;
}

CsvParseResult parse_daily_csv(std::istream& in, ParseMode mode, std::optional<Date> date) {
  std::string bytes{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return parse_daily_csv(std::string_view(bytes), mode, date);
}

void write_daily_csv(const DailyFile& file, std::ostream& out) {
  out << "tweet_id,created_at,loc,text,user_id,verified\n";
  for (const auto& r : file.records) {
    write_field(out, r.tweet_id);
    out << ',' << format_timestamp(r.created_at) << ',' << r.loc.code() << ',';
    write_field(out, r.text);
    out << ',';
    write_field(out, r.user_id);
    out << ',' << (r.verified ? '1' : '0') << '\n';
  }
}

std::string write_daily_csv(const DailyFile& file) {
  std::ostringstream out;
  write_daily_csv(file, out);
  return out.str();
}

std::vector<DailyFile> split_by_day(std::span<const TweetRecord> records) {
  std::map<Date, std::vector<TweetRecord>> days;
  for (const auto& r : records) days[day_of(r.created_at)].push_back(r);
  std::vector<DailyFile> out;
  out.reserve(days.size());
  for (auto& [d, recs] : days) out.push_back({d, std::move(recs)});
  return out;
}

}  // namespace coronavis
