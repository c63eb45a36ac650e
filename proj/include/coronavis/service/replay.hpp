#pragma once

#include <chrono>
#include <cstddef>
#include <functional>
#include <optional>
#include <stop_token>

#include "coronavis/service/snapshot.hpp"

namespace coronavis::service {

struct ReplayConfig {
  fs::path data_dir;
  double speedup = 86400.0;  // corpus days per wall day; 86400 means one day per second
  std::optional<Date> start;  // defaults to the first file
  std::optional<Date> end;    // defaults to the last file
  ParseMode mode = ParseMode::lenient;

  /// Wall time per corpus day.
  std::chrono::duration<double> day_interval() const { return std::chrono::duration<double>(86400.0 / speedup); }
};

/// Waits for `interval` unless `stop` fires first; returns false when stopped.
using Sleeper = std::function<bool(std::chrono::duration<double> interval, std::stop_token stop)>;

bool wall_clock_sleep(std::chrono::duration<double> interval, std::stop_token stop);

struct ReplayReport {
  std::size_t publications = 0;
  std::size_t gaps = 0;
  std::size_t skipped_rows = 0;
  bool stopped = false;
};

/// Ingests the daily files of `config` one corpus day at a time, in date
/// order, publishing a snapshot after each file. Days without a file are
/// recorded as gaps. Each snapshot's clock is the replay day, and each
/// day after the first waits one day_interval() first.
/// Throws std::invalid_argument for a bad speedup or a range outside the
/// available files.
ReplayReport run_replay(const ReplayConfig& config, std::shared_ptr<const AnalysisResources> resources,
                        SnapshotStore& store, const Sleeper& sleep = wall_clock_sleep, std::stop_token stop = {});

}  // namespace coronavis::service
