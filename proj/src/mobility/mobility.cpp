#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

#include "coronavis/mobility.hpp"

namespace coronavis {

using std::chrono::days;

std::vector<UserTrajectory> build_trajectories(std::span<const TweetRecord> records) {
  std::unordered_map<std::string_view, std::vector<const TweetRecord*>> by_user;
  for (const auto& r : records) by_user[r.user_id].push_back(&r);

  std::vector<UserTrajectory> out;
  out.reserve(by_user.size());
  for (auto& [user, posts] : by_user) {
    std::stable_sort(posts.begin(), posts.end(), [](const TweetRecord* a, const TweetRecord* b) {
      return a->created_at != b->created_at ? a->created_at < b->created_at : a->tweet_id < b->tweet_id;
    });
    UserTrajectory t{std::string(user), {}};
    t.points.reserve(posts.size());
    for (const auto* p : posts) t.points.push_back({p->created_at, p->loc});
    out.push_back(std::move(t));
  }
  std::sort(out.begin(), out.end(),
            [](const UserTrajectory& a, const UserTrajectory& b) { return a.user_id < b.user_id; });
  return out;
}

std::vector<MobilityEvent> detect_movements(std::span<const UserTrajectory> trajectories,
                                            std::chrono::seconds window) {
  if (window <= std::chrono::seconds::zero()) throw std::invalid_argument("mobility window must be positive");
  std::vector<MobilityEvent> events;
  for (const auto& t : trajectories) {
    for (std::size_t i = 1; i < t.points.size(); ++i) {
      const auto& a = t.points[i - 1];
      const auto& b = t.points[i];
      const auto gap = b.time - a.time;
      if (a.state != b.state && gap > std::chrono::seconds::zero() && gap <= window)
        events.push_back({t.user_id, a.state, b.state, a.time, b.time});
    }
  }
  return events;
}

Date WeekBins::default_epoch() { return std::chrono::sys_days{std::chrono::year{2020} / 3 / 5}; }

WeekBins::WeekBins(Date epoch, long first, std::size_t count) : epoch_(epoch), first_(first), count_(count) {}

namespace {
long floor_div(long a, long b) { return a / b - ((a % b != 0) && ((a < 0) != (b < 0))); }
}  // namespace

WeekBins WeekBins::covering(Date epoch, DateRange range) {
  if (range.empty()) return WeekBins(epoch, 0, 0);
  const long first = floor_div((range.from - epoch).count(), 7);
  const long last = floor_div((range.to - epoch).count(), 7);
  return WeekBins(epoch, first, static_cast<std::size_t>(last - first + 1));
}

Date WeekBins::start(std::size_t bin) const {
  return epoch_ + days{7 * (first_ + static_cast<long>(bin))};
}

std::optional<std::size_t> WeekBins::bin_of(Timestamp t) const {
  const long week = floor_div((day_of(t) - epoch_).count(), 7) - first_;
  if (week < 0 || static_cast<std::size_t>(week) >= count_) return std::nullopt;
  return static_cast<std::size_t>(week);
}

bool WeekBins::aligned(Date d) const { return (d - epoch_).count() % 7 == 0; }

std::optional<std::size_t> WeekBins::bin_starting(Date d) const {
  if (!aligned(d)) return std::nullopt;
  return bin_of(Timestamp{d});
}

WeeklyMobilityResult weekly_mobility(std::span<const MobilityEvent> events, const WeekBins& bins) {
  std::vector<std::map<StateCode, std::set<std::string_view>>> movers(bins.size());
  WeeklyMobilityResult result;
  for (const auto& e : events) {
    auto bin = bins.bin_of(e.t_to);
    if (!bin) {
      ++result.overflow;
      continue;
    }
    movers[*bin][e.to_state].insert(e.user_id);
  }
  result.weeks.reserve(bins.size());
  for (std::size_t b = 0; b < bins.size(); ++b) {
    WeeklyMobility w{bins.start(b), bins.start(b) + days{7}, {}};
    for (const auto& [state, users] : movers[b]) w.unique_users.emplace(state, users.size());
    result.weeks.push_back(std::move(w));
  }
  return result;
}

std::vector<JoinedRow> lagged_join(std::span<const WeeklyMobility> mobility, const InfectionSeries& infections,
                                   int lag_weeks) {
  if (lag_weeks < 0) throw std::invalid_argument("lag must be non-negative");
  std::map<Date, const WeeklyMobility*> by_week;
  for (const auto& w : mobility) by_week.emplace(w.week_start, &w);

  std::vector<JoinedRow> rows;
  for (const auto& [key, cases] : infections.cases) {
    const auto& [state, week] = key;
    const Date source = week - days{7 * lag_weeks};
    auto it = by_week.find(source);
    if (it == by_week.end()) continue;
    auto m = it->second->unique_users.find(state);
    if (m == it->second->unique_users.end()) continue;
    rows.push_back({state, week, source, m->second, cases});
  }
  std::sort(rows.begin(), rows.end(), [](const JoinedRow& a, const JoinedRow& b) {
    return a.week_start != b.week_start ? a.week_start < b.week_start : a.state < b.state;
  });
  return rows;
}

MobilityCorrelation mobility_correlation(std::span<const JoinedRow> rows) {
  auto correlate = [](const std::vector<const JoinedRow*>& subset) {
    Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1> m(static_cast<Eigen::Index>(subset.size()));
    Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1> c(static_cast<Eigen::Index>(subset.size()));
    for (std::size_t i = 0; i < subset.size(); ++i) {
      m(static_cast<Eigen::Index>(i)) = static_cast<std::int64_t>(subset[i]->mobility);
      c(static_cast<Eigen::Index>(i)) = static_cast<std::int64_t>(subset[i]->cases);
    }
    return pearson(m, c);
  };

  std::vector<const JoinedRow*> all;
  std::map<Date, std::vector<const JoinedRow*>> weeks;
  for (const auto& r : rows) {
    all.push_back(&r);
    weeks[r.week_start].push_back(&r);
  }
  MobilityCorrelation result;
  result.pooled = correlate(all);
  for (const auto& [week, subset] : weeks) {
    try {
      result.per_week[week] = correlate(subset);
    } catch (const InsufficientData&) {
      result.per_week[week] = std::nullopt;
    }
  }
  return result;
}

}  // namespace coronavis
