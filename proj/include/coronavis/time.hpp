#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace coronavis {

using Timestamp = std::chrono::sys_seconds;
using Date = std::chrono::sys_days;

inline constexpr std::chrono::seconds kSecondsPerDay{86400};

/// Accepts ISO-8601 UTC (`2020-03-05T20:37:08Z`), the platform's display form
/// (`Thu Mar 05 20:37:08 2020`) and the raw API form with a `+0000` offset.
std::optional<Timestamp> parse_timestamp(std::string_view text);

/// Canonical storage form, always `YYYY-MM-DDTHH:MM:SSZ`.
std::string format_timestamp(Timestamp t);

std::optional<Date> parse_date(std::string_view text);
std::string format_date(Date d);

inline Date day_of(Timestamp t) { return std::chrono::floor<std::chrono::days>(t); }

/// Inclusive calendar-day range; `from > to` means empty.
struct DateRange {
  Date from;
  Date to;

  bool empty() const { return from > to; }
  bool contains(Date d) const { return d >= from && d <= to; }
  long days() const { return empty() ? 0 : (to - from).count() + 1; }
  bool operator==(const DateRange&) const = default;
};

}  // namespace coronavis
