#pragma once

#include <memory>
#include <string>

#include "coronavis/service/api.hpp"

namespace httplib {
class Server;
}

namespace coronavis::service {

/// HTTP front end: GET /api/* is answered from the store's current snapshot,
/// OPTIONS preflights get the CORS headers, and an optional static directory
/// is mounted at /.
class HttpService {
 public:
  HttpService(const SnapshotStore& store, std::string cors_origin = "*",
              std::optional<fs::path> static_dir = std::nullopt);
  ~HttpService();

  /// Blocks until stop(). Port 0 binds an ephemeral port; see port().
  bool listen(const std::string& host, int port);
  /// Binds without serving yet; returns the bound port or -1.
  int bind(const std::string& host, int port);
  bool serve();
  void stop();
  void wait_until_ready() const;
  int port() const { return port_; }

 private:
  const SnapshotStore& store_;
  std::string cors_origin_;
  std::unique_ptr<httplib::Server> server_;
  int port_ = -1;
};

}  // namespace coronavis::service
