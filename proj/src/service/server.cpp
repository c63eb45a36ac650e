#include "coronavis/service/server.hpp"

#include <spdlog/spdlog.h>

// after Eigen: <resolv.h> defines a `_res` macro
#include <httplib.h>

namespace coronavis::service {

HttpService::HttpService(const SnapshotStore& store, std::string cors_origin, std::optional<fs::path> static_dir)
    : store_(store), cors_origin_(std::move(cors_origin)), server_(std::make_unique<httplib::Server>()) {
  auto cors = [origin = cors_origin_](httplib::Response& res) {
    res.set_header("Access-Control-Allow-Origin", origin);
    res.set_header("Access-Control-Allow-Methods", "GET, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
    res.set_header("Vary", "Origin");
  };

  server_->Get(R"(/api/.*)", [this, cors](const httplib::Request& req, httplib::Response& res) {
    ApiRequest request{req.path, {}};
    for (const auto& [k, v] : req.params) request.params.emplace(k, v);  // first value wins
    const auto snapshot = store_.current();
    const ApiResponse out = handle(snapshot.get(), request);
    res.status = out.status;
    cors(res);
    res.set_content(out.body.dump(), "application/json");
  });
  server_->Options(R"(.*)", [cors](const httplib::Request&, httplib::Response& res) {
    cors(res);
    res.status = 204;
  });
  if (static_dir && !server_->set_mount_point("/", static_dir->string()))
    spdlog::warn("static directory {} not mounted", static_dir->string());
  server_->set_logger([](const httplib::Request& req, const httplib::Response& res) {
    spdlog::debug("{} {} -> {}", req.method, req.path, res.status);
  });
}

HttpService::~HttpService() { stop(); }

int HttpService::bind(const std::string& host, int port) {
  if (port == 0) port_ = server_->bind_to_any_port(host);
  else port_ = server_->bind_to_port(host, port) ? port : -1;
  return port_;
}

bool HttpService::serve() { return server_->listen_after_bind(); }

bool HttpService::listen(const std::string& host, int port) {
  if (bind(host, port) < 0) return false;
  spdlog::info("listening on {}:{}", host, port_);
  return serve();
}

void HttpService::stop() {
  if (server_) server_->stop();
}

void HttpService::wait_until_ready() const { server_->wait_until_ready(); }

}  // namespace coronavis::service
