#include <cmath>
#include <condition_variable>
#include <mutex>

#include <spdlog/spdlog.h>

#include "coronavis/service/replay.hpp"

namespace coronavis::service {

bool wall_clock_sleep(std::chrono::duration<double> interval, std::stop_token stop) {
  std::mutex m;
  std::condition_variable_any cv;
  std::unique_lock lock(m);
  cv.wait_for(lock, stop, std::chrono::duration_cast<std::chrono::nanoseconds>(interval), [] { return false; });
  return !stop.stop_requested();
}

ReplayReport run_replay(const ReplayConfig& config, std::shared_ptr<const AnalysisResources> resources,
                        SnapshotStore& store, const Sleeper& sleep, std::stop_token stop) {
  if (!(config.speedup > 0.0) || !std::isfinite(config.speedup))
    throw std::invalid_argument("replay speedup must be a positive finite number");
  const auto files = list_daily_files(config.data_dir);
  if (files.empty()) throw std::invalid_argument("no daily files in " + config.data_dir.string());
  const Date first = files.begin()->first;
  const Date last = files.rbegin()->first;
  const Date start = config.start.value_or(first);
  const Date end = config.end.value_or(last);
  if (start > end) throw std::invalid_argument("replay start is after end");
  if (start < first || end > last)
    throw std::invalid_argument("replay range " + format_date(start) + ".." + format_date(end) +
                                " is outside the available files " + format_date(first) + ".." + format_date(last));

  SnapshotBuilder builder(std::move(resources));
  ReplayReport report;
  for (Date day = start; day <= end; day += std::chrono::days{1}) {
    if (day != start && !sleep(config.day_interval(), stop)) {
      report.stopped = true;
      break;
    }
    if (stop.stop_requested()) {
      report.stopped = true;
      break;
    }
    auto it = files.find(day);
    if (it == files.end()) {
      spdlog::warn("replay: no file for {}, recorded as a gap", format_date(day));
      builder.add_gap(day);
      ++report.gaps;
      continue;
    }
    std::size_t skipped = 0;
    builder.add_day(load_daily_file(it->second, day, config.mode, &skipped), skipped);
    report.skipped_rows += skipped;
    auto snapshot = builder.build(day);
    spdlog::info("replay: {} ingested, {} tweets, snapshot {}", format_date(day), snapshot->records.size(),
                 snapshot->sequence);
    store.publish(std::move(snapshot));
    ++report.publications;
  }
  return report;
}

}  // namespace coronavis::service
