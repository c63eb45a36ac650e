#pragma once

// Transport-independent request handling: every endpoint is a pure function
// of one snapshot and the query parameters.

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "coronavis/service/snapshot.hpp"

namespace coronavis::service {

struct ApiRequest {
  std::string path;
  std::map<std::string, std::string> params;
};

struct ApiResponse {
  int status = 200;
  nlohmann::json body;
};

/// Machine-readable error codes carried as `{"error": {"code", "message"}}`.
namespace error_code {
inline constexpr const char* state_unknown = "STATE_UNKNOWN";
inline constexpr const char* bad_param = "BAD_PARAM";
inline constexpr const char* range_invalid = "RANGE_INVALID";
inline constexpr const char* topic_invalid = "TOPIC_INVALID";
inline constexpr const char* lda_unavailable = "LDA_UNAVAILABLE";
inline constexpr const char* not_found = "NOT_FOUND";
inline constexpr const char* not_ready = "NOT_READY";
}  // namespace error_code

/// A null snapshot answers /api/health and /api/schemas only.
ApiResponse handle(const AnalyticsSnapshot* snapshot, const ApiRequest& request);
inline ApiResponse handle(const AnalyticsSnapshot& snapshot, const ApiRequest& request) {
  return handle(&snapshot, request);
}

std::vector<std::string> endpoint_paths();

/// Response schema for a path (success payload); null json when unknown.
const nlohmann::json& response_schema(const std::string& path);
const nlohmann::json& error_schema();

/// One request per figure-equivalent, with default parameters plus the
/// per-range and per-cohort variants. Used by `analyze` and the equivalence
/// checks.
std::vector<ApiRequest> default_report_requests();

/// File-safe name for a report request, e.g. `sentiment_series_range-all.json`.
std::string report_name(const ApiRequest& request);

}  // namespace coronavis::service
