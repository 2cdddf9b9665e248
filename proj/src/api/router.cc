#include "scrollbio/api/router.h"

#include <charconv>
#include <vector>

#include "scrollbio/corpus/json_codec.h"
#include "scrollbio/layout/segment_plan.h"

namespace scrollbio::api {
namespace {

using nlohmann::json;

class MethodNotAllowed : public Error {
 public:
  using Error::Error;
};

class RouteNotFound : public Error {
 public:
  using Error::Error;
};

Response Json(int status, const json &j) {
  return {status, "application/json", corpus::Canonical(j)};
}

std::vector<std::string> Segments(const std::string &path) {
  std::vector<std::string> out;
  size_t i = 0;
  while (i < path.size()) {
    while (i < path.size() && path[i] == '/') ++i;
    size_t j = path.find('/', i);
    if (j == std::string::npos) j = path.size();
    if (j > i) out.push_back(path.substr(i, j - i));
    i = j;
  }
  return out;
}

std::optional<int> IntParam(const Request &r, const std::string &key) {
  auto it = r.query.find(key);
  if (it == r.query.end() || it->second.empty()) return std::nullopt;
  int v = 0;
  const char *b = it->second.data(), *e = b + it->second.size();
  auto [p, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || p != e) throw InvalidArgument("query parameter " + key + " must be an integer");
  return v;
}

json Body(const Request &r) {
  if (r.body.empty()) throw InvalidArgument("request body required");
  try {
    return json::parse(r.body);
  } catch (const json::exception &e) {
    throw InvalidArgument(std::string("malformed JSON body: ") + e.what());
  }
}

void Require(const Request &r, const char *method) {
  if (r.method != method) throw MethodNotAllowed(r.method + " not allowed on " + r.path);
}

}  // namespace

Response Router::Handle(const Request &request) const {
  try {
    return Dispatch(request);
  } catch (const NotFound &e) {
    return Json(404, {{"error", e.what()}, {"kind", e.kind()}, {"id", e.id()}});
  } catch (const RouteNotFound &e) {
    return Json(404, {{"error", e.what()}, {"kind", "route"}, {"id", request.path}});
  } catch (const MethodNotAllowed &e) {
    return Json(405, {{"error", e.what()}});
  } catch (const VersionConflict &e) {
    return Json(409, {{"error", e.what()}, {"current_version", e.current()}});
  } catch (const layout::PlanningError &e) {
    return Json(400, {{"error", e.what()}, {"feasible_ratio", e.feasible_ratio()}});
  } catch (const InvalidArgument &e) {
    return Json(400, {{"error", e.what()}});
  } catch (const similarity::UndefinedSimilarity &e) {
    return Json(400, {{"error", e.what()}});
  } catch (const json::exception &e) {
    return Json(400, {{"error", std::string("schema violation: ") + e.what()}});
  } catch (const std::exception &e) {
    return Json(500, {{"error", e.what()}});
  }
}

Response Router::Dispatch(const Request &r) const {
  auto seg = Segments(r.path);
  if (seg.empty()) throw RouteNotFound("no route for /");
  const std::string &root = seg[0];

  if (root == "handscrolls") {
    if (seg.size() == 1) {
      Require(r, "GET");
      return Json(200, session_.Handscrolls());
    }
    const std::string &id = seg[1];
    if (seg.size() == 2) {
      Require(r, "GET");
      return Json(200, session_.Handscroll(id));
    }
    const std::string &what = seg[2];
    if (seg.size() == 3 && what == "layout") {
      Require(r, "GET");
      return Json(200, session_.Layout(id, IntParam(r, "target")));
    }
    if (seg.size() == 3 && what == "ring.png") {
      Require(r, "GET");
      return {200, "image/png", session_.RingPng(id, IntParam(r, "target"))};
    }
    if (seg.size() == 3 && what == "stats") {
      Require(r, "GET");
      return Json(200, session_.Stats(id));
    }
    if (seg.size() == 3 && what == "similar") {
      Require(r, "GET");
      auto mode = r.query.count("mode") ? r.query.at("mode") : std::string("feature");
      return Json(200, session_.Similar(id, mode, IntParam(r, "k")));
    }
    if (seg.size() == 3 && what == "uncertain") {
      Require(r, "GET");
      return Json(200, session_.Uncertain(id));
    }
    if (what == "biography" && seg.size() <= 4) {
      if (seg.size() == 3 && r.method == "GET")
        return Json(200, biography::ToJson(session_.GetBiography(id, IntParam(r, "version"))));
      if (seg.size() == 4 && seg[3] != "customize") throw RouteNotFound("no route for " + r.path);
      Require(r, "POST");
      return Json(200, biography::ToJson(session_.Customize(id, Body(r))));
    }
  } else if (root == "resolve" && seg.size() == 1) {
    Require(r, "POST");
    return Json(200, session_.Resolve(Body(r)));
  } else if (root == "seals" && seg.size() == 2 && seg[1] == "match") {
    Require(r, "POST");
    return Json(200, session_.MatchSeal(Body(r)));
  } else if (root == "figures" && seg.size() == 3 && seg[2] == "ego") {
    Require(r, "GET");
    return Json(200, session_.Ego(seg[1]));
  } else if (root == "cohort" && seg.size() == 1) {
    Require(r, "POST");
    return Json(200, session_.Cohort(Body(r)));
  } else if (root == "config" && seg.size() == 1) {
    Require(r, "GET");
    json c = ToJson(session_.config());
    c["layout_hash"] = session_.layout_hash();
    return Json(200, c);
  }
  throw RouteNotFound("no route for " + r.path);
}

}  // namespace scrollbio::api
