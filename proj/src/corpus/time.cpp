#include <array>
#include <charconv>
#include <cstdio>

#include "coronavis/time.hpp"

namespace coronavis {

namespace {

using namespace std::chrono;

bool read_int(std::string_view s, std::size_t pos, std::size_t len, int& out) {
  if (pos + len > s.size()) return false;
  auto first = s.data() + pos;
  auto last = first + len;
  for (auto p = first; p != last; ++p)
    if (*p < '0' || *p > '9') return false;
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last;
}

std::optional<Timestamp> make(int y, int mo, int d, int h, int mi, int s) {
  year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
  if (!ymd.ok() || h < 0 || h > 23 || mi < 0 || mi > 59 || s < 0 || s > 59)
    return std::nullopt;
  return sys_days{ymd} + hours{h} + minutes{mi} + seconds{s};
}

constexpr std::array<std::string_view, 12> kMonths{"Jan", "Feb", "Mar", "Apr", "May", "Jun",
                                                   "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"};

std::optional<Timestamp> parse_iso(std::string_view t) {
  // 2020-03-05T20:37:08Z (a space separator is tolerated)
  if (t.size() != 20 || t[4] != '-' || t[7] != '-' || (t[10] != 'T' && t[10] != ' ') ||
      t[13] != ':' || t[16] != ':' || t[19] != 'Z')
    return std::nullopt;
  int y, mo, d, h, mi, s;
  if (!read_int(t, 0, 4, y) || !read_int(t, 5, 2, mo) || !read_int(t, 8, 2, d) ||
      !read_int(t, 11, 2, h) || !read_int(t, 14, 2, mi) || !read_int(t, 17, 2, s))
    return std::nullopt;
  return make(y, mo, d, h, mi, s);
}

std::optional<Timestamp> parse_display(std::string_view t) {
  // Thu Mar 05 20:37:08 2020  |  Thu Mar 05 20:37:08 +0000 2020
  if (t.size() != 24 && t.size() != 30) return std::nullopt;
  if (t[3] != ' ' || t[7] != ' ' || t[10] != ' ' || t[13] != ':' || t[16] != ':' || t[19] != ' ')
    return std::nullopt;
  std::size_t year_pos = 20;
  if (t.size() == 30) {
    if (t.substr(20, 6) != "+0000 ") return std::nullopt;
    year_pos = 26;
  }
  int mo = 0;
  for (std::size_t i = 0; i < kMonths.size(); ++i)
    if (t.substr(4, 3) == kMonths[i]) mo = static_cast<int>(i) + 1;
  int y, d, h, mi, s;
  if (mo == 0 || !read_int(t, 8, 2, d) || !read_int(t, 11, 2, h) || !read_int(t, 14, 2, mi) ||
      !read_int(t, 17, 2, s) || !read_int(t, year_pos, 4, y))
    return std::nullopt;
  return make(y, mo, d, h, mi, s);
}

}  // namespace

std::optional<Timestamp> parse_timestamp(std::string_view text) {
  if (auto t = parse_iso(text)) return t;
  return parse_display(text);
}

std::string format_timestamp(Timestamp t) {
  auto day = day_of(t);
  year_month_day ymd{day};
  hh_mm_ss hms{t - day};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02dZ", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                static_cast<int>(hms.hours().count()), static_cast<int>(hms.minutes().count()),
                static_cast<int>(hms.seconds().count()));
  return buf;
}

std::optional<Date> parse_date(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  int y, mo, d;
  if (!read_int(text, 0, 4, y) || !read_int(text, 5, 2, mo) || !read_int(text, 8, 2, d))
    return std::nullopt;
  year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) return std::nullopt;
  return sys_days{ymd};
}

std::string format_date(Date d) {
  year_month_day ymd{d};
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
  return buf;
}

}  // namespace coronavis
