#include "scrollbio/api/server.h"

#include <chrono>
#include <ctime>
#include <iostream>
#include <mutex>

#include "httplib.h"
#include "json.hpp"

namespace scrollbio::api {

struct HttpServer::Impl {
  Router &router;
  ServerOptions options;
  httplib::Server server;
  int port = 0;
  std::mutex log_mu;

  Impl(Router &r, ServerOptions o) : router(r), options(std::move(o)) {}

  void Handle(const httplib::Request &req, httplib::Response &res) {
    auto start = std::chrono::steady_clock::now();
    Request in;
    in.method = req.method;
    in.path = req.path;
    for (const auto &[k, v] : req.params) in.query.emplace(k, v);
    in.body = req.body;
    Response out = router.Handle(in);
    res.status = out.status;
    res.set_content(out.body, out.content_type.c_str());
    if (!options.log_requests) return;
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    nlohmann::json line{{"ts", std::time(nullptr)}, {"method", req.method}, {"path", req.path},
                        {"status", out.status}, {"bytes", out.body.size()}, {"ms", ms}};
    std::lock_guard<std::mutex> lock(log_mu);
    std::cerr << line.dump() << std::endl;
  }
};

HttpServer::HttpServer(Router &router, ServerOptions options)
    : impl_(std::make_unique<Impl>(router, std::move(options))) {
  auto handler = [this](const httplib::Request &req, httplib::Response &res) { impl_->Handle(req, res); };
  if (!impl_->options.ui_dir.empty()) impl_->server.set_mount_point("/ui", impl_->options.ui_dir);
  impl_->server.Get(".*", handler);
  impl_->server.Post(".*", handler);
  impl_->server.Put(".*", handler);
  impl_->server.Delete(".*", handler);
}

HttpServer::~HttpServer() { Stop(); }

int HttpServer::Bind() {
  auto &o = impl_->options;
  if (o.port == 0) {
    impl_->port = impl_->server.bind_to_any_port(o.host);
  } else {
    impl_->port = impl_->server.bind_to_port(o.host, o.port) ? o.port : -1;
  }
  if (impl_->port < 0) throw Error("cannot bind " + o.host + ":" + std::to_string(o.port));
  return impl_->port;
}

void HttpServer::Listen() { impl_->server.listen_after_bind(); }

void HttpServer::Stop() {
  if (impl_) impl_->server.stop();
}

}  // namespace scrollbio::api
