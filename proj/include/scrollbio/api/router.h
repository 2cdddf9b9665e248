#ifndef SCROLLBIO_API_ROUTER_H_
#define SCROLLBIO_API_ROUTER_H_

#include <map>
#include <string>

#include "scrollbio/api/session.h"

namespace scrollbio::api {

struct Request {
  std::string method;
  std::string path;
  std::map<std::string, std::string> query;
  std::string body;
};

struct Response {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
};

// Transport-independent dispatch of the JSON routes:
//   GET  /handscrolls
//   GET  /handscrolls/{id}
//   GET  /handscrolls/{id}/layout?target=
//   GET  /handscrolls/{id}/ring.png?target=
//   GET  /handscrolls/{id}/stats
//   GET  /handscrolls/{id}/similar?mode=feature|theme&k=
//   GET  /handscrolls/{id}/uncertain
//   GET  /handscrolls/{id}/biography?version=
//   POST /handscrolls/{id}/biography/customize   {"version", "action"}
//   POST /handscrolls/{id}/biography             (same as customize)
//   POST /resolve    {"surface", "kind", "era_hint", "handscroll_id", "select"}
//   POST /seals/match {"feature", "k"}
//   GET  /figures/{id}/ego
//   POST /cohort     {"figure_ids"}
//   GET  /config
// Errors: 404 {error, kind, id}, 400 {error}, 409 {error, current_version},
// 405 for a known path with the wrong method.
class Router {
 public:
  explicit Router(Session &session) : session_(session) {}
  Response Handle(const Request &request) const;

 private:
  Response Dispatch(const Request &request) const;
  Session &session_;
};

}  // namespace scrollbio::api

#endif  // SCROLLBIO_API_ROUTER_H_
