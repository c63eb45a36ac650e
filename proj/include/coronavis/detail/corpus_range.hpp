#pragma once

namespace coronavis {

namespace detail {
inline const TweetRecord& record_of(const TweetRecord& r) { return r; }
template <typename T>
const TweetRecord& record_of(const T& t) { return t.record; }
}  // namespace detail

template <typename Records>
DateRange corpus_range(const Records& records) {
  DateRange range{Date::max(), Date::min()};
  for (const auto& item : records) {
    auto d = day_of(detail::record_of(item).created_at);
    if (d < range.from) range.from = d;
    if (d > range.to) range.to = d;
  }
  if (range.from > range.to) return {Date{std::chrono::days{1}}, Date{}};
  return range;
}

}  // namespace coronavis
