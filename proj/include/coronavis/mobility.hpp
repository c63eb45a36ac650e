#pragma once

// Cross-state movement inferred from successive geo-tagged posts, weekly
// destination counts, external case counts and the lagged join between them.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "coronavis/corpus.hpp"

namespace coronavis {

struct TrajectoryPoint {
  Timestamp time;
  StateCode state;
  bool operator==(const TrajectoryPoint&) const = default;
};

struct UserTrajectory {
  std::string user_id;
  std::vector<TrajectoryPoint> points;  // ascending time, ties by tweet_id
  bool operator==(const UserTrajectory&) const = default;
};

struct MobilityEvent {
  std::string user_id;
  StateCode from_state;
  StateCode to_state;
  Timestamp t_from;
  Timestamp t_to;
  bool operator==(const MobilityEvent&) const = default;
};

inline constexpr std::chrono::seconds kDefaultMobilityWindow = std::chrono::days{14};

/// One trajectory per user, ordered by user id.
std::vector<UserTrajectory> build_trajectories(std::span<const TweetRecord> records);

/// One event per consecutive pair of points in different states whose gap is
/// positive and at most `window`. Events come out grouped by trajectory, in
/// time order within each.
std::vector<MobilityEvent> detect_movements(std::span<const UserTrajectory> trajectories,
                                            std::chrono::seconds window = kDefaultMobilityWindow);

/// Contiguous 7-day bins [epoch + 7k, epoch + 7(k+1)) for k in [first, first + count).
class WeekBins {
 public:
  /// 2020-03-05, a Thursday; the default anchor gives Jun 11/18/25 boundaries.
  static Date default_epoch();

  WeekBins(Date epoch, long first, std::size_t count);
  /// Smallest bin run covering every day of `range`.
  static WeekBins covering(Date epoch, DateRange range);

  Date epoch() const { return epoch_; }
  std::size_t size() const { return count_; }
  Date start(std::size_t bin) const;
  std::optional<std::size_t> bin_of(Timestamp t) const;
  std::optional<std::size_t> bin_starting(Date d) const;
  bool aligned(Date d) const;

 private:
  Date epoch_;
  long first_;
  std::size_t count_;
};

struct WeeklyMobility {
  Date week_start;
  Date week_end;  // exclusive, week_start + 7 days
  std::map<StateCode, std::size_t> unique_users;  // destination -> movers
  bool operator==(const WeeklyMobility&) const = default;
};

struct WeeklyMobilityResult {
  std::vector<WeeklyMobility> weeks;  // one per bin, in order
  std::size_t overflow = 0;           // events whose t_to falls outside every bin

  bool operator==(const WeeklyMobilityResult&) const = default;
};

WeeklyMobilityResult weekly_mobility(std::span<const MobilityEvent> events, const WeekBins& bins);

struct InfectionSeries {
  std::map<std::pair<StateCode, Date>, std::uint64_t> cases;  // (state, week start)
  bool operator==(const InfectionSeries&) const = default;
};

class CaseCountError : public std::runtime_error {
 public:
  CaseCountError(std::size_t row, const std::string& what) : std::runtime_error(what), row_(row) {}
  /// 1-based data row, 0 for header problems.
  std::size_t row() const { return row_; }

 private:
  std::size_t row_;
};

/// CSV with header `state,week_start,cases`; week starts must sit on the bin
/// grid anchored at `epoch`.
InfectionSeries ingest_case_counts(std::istream& in, Date epoch = WeekBins::default_epoch());

struct JoinedRow {
  StateCode state;
  Date week_start;           // infection week
  Date mobility_week_start;  // week_start - lag
  std::size_t mobility = 0;
  std::uint64_t cases = 0;
  bool operator==(const JoinedRow&) const = default;
};

/// Inner join of week-w cases with week-(w - lag) mobility, ordered by week
/// then state. A state with no movers in a week has no mobility entry.
std::vector<JoinedRow> lagged_join(std::span<const WeeklyMobility> mobility, const InfectionSeries& infections,
                                   int lag_weeks);

class InsufficientData : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Pearson r of two equally sized vectors. Integral inputs are accumulated
/// exactly, so exactly proportional data yields r == 1 without rounding.
/// Throws InsufficientData for fewer than two samples or zero variance.
template <typename DerivedX, typename DerivedY>
double pearson(const Eigen::MatrixBase<DerivedX>& x, const Eigen::MatrixBase<DerivedY>& y);

struct MobilityCorrelation {
  double pooled = 0.0;
  std::map<Date, std::optional<double>> per_week;  // nullopt when undefined
};

MobilityCorrelation mobility_correlation(std::span<const JoinedRow> rows);

}  // namespace coronavis

#include "coronavis/detail/pearson.hpp"
