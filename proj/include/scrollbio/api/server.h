#ifndef SCROLLBIO_API_SERVER_H_
#define SCROLLBIO_API_SERVER_H_

#include <memory>
#include <string>

#include "scrollbio/api/router.h"

namespace scrollbio::api {

struct ServerOptions {
  std::string host = "127.0.0.1";
  // 0 picks a free port.
  int port = 8080;
  // Built UI bundle served at "/", if set.
  std::string ui_dir;
  // One JSON line per request on stderr.
  bool log_requests = true;
};

// HTTP/1.1 front end over a Router.
class HttpServer {
 public:
  HttpServer(Router &router, ServerOptions options);
  ~HttpServer();

  // Binds and returns the bound port. Throws Error when binding fails.
  int Bind();
  // Serves until Stop(); call after Bind().
  void Listen();
  void Stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace scrollbio::api

#endif  // SCROLLBIO_API_SERVER_H_
