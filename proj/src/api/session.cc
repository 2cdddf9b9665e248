#include "scrollbio/api/session.h"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "scrollbio/corpus/json_codec.h"
#include "scrollbio/entity/resolve.h"

namespace scrollbio::api {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr size_t kMaxCachedLayouts = 64;

// Safe as a single path component.
std::string FileStem(const std::string &id) {
  std::string out;
  for (char c : id) out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_') ? c : '_';
  return out + "-" + StableHash(id).substr(0, 8);
}

void WriteFileAtomic(const fs::path &path, const std::string &bytes) {
  fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp" + std::to_string(std::hash<std::string>{}(bytes) & 0xffff);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out.write(bytes.data(), std::streamsize(bytes.size()));
    if (!out) throw Error("write failed: " + tmp.string());
  }
  fs::rename(tmp, path);
}

std::string ReadFile(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json OptionalJson(const std::optional<int> &v) { return v ? json(*v) : json(nullptr); }
json OptionalJson(const std::optional<std::string> &v) { return v ? json(*v) : json(nullptr); }

const json &Field(const json &body, const char *key) {
  if (!body.is_object() || !body.contains(key)) throw InvalidArgument(std::string("missing field ") + key);
  return body.at(key);
}

std::string StringField(const json &body, const char *key) {
  const auto &v = Field(body, key);
  if (!v.is_string()) throw InvalidArgument(std::string("field ") + key + " must be a string");
  return v.get<std::string>();
}

std::optional<std::string> OptionalString(const json &body, const char *key) {
  if (!body.contains(key) || body.at(key).is_null()) return std::nullopt;
  if (!body.at(key).is_string()) throw InvalidArgument(std::string("field ") + key + " must be a string");
  return body.at(key).get<std::string>();
}

FeatureVector VectorField(const json &body, const char *key) {
  const auto &v = Field(body, key);
  if (!v.is_array()) throw InvalidArgument(std::string("field ") + key + " must be an array");
  FeatureVector out;
  for (const auto &x : v) {
    if (!x.is_number()) throw InvalidArgument(std::string("field ") + key + " must hold numbers");
    out.values.push_back(x.get<float>());
  }
  return out;
}

size_t KOrDefault(std::optional<int> k, int def) {
  int v = k.value_or(def);
  if (v < 1) throw InvalidArgument("k must be >= 1");
  return size_t(v);
}

json PaintingSummary(const corpus::Corpus &c, const HandscrollRecord &h) {
  json j{{"id", h.id},
         {"title", h.title},
         {"painter_id", OptionalJson(h.painter_id)},
         {"creation_year", OptionalJson(h.creation_year)},
         {"dynasty", OptionalJson(h.dynasty)}};
  std::optional<int> birth;
  if (h.painter_id) {
    const auto &p = c.person(*h.painter_id);
    j["painter_name"] = p.name;
    birth = p.birth_year;
  } else {
    j["painter_name"] = nullptr;
  }
  j["painter_birth_year"] = OptionalJson(birth);
  json missing = json::array();
  if (!h.painter_id) missing.push_back("painter");
  if (!h.creation_year) missing.push_back("year");
  j["missing"] = missing;
  return j;
}

}  // namespace

std::string StableHash(const std::string &s) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json ToJson(const SessionConfig &c) {
  return {{"layout", layout::ToJson(c.layout)},
          {"scoring", biography::ToJson(c.scoring)},
          {"lsh", {{"tables", c.lsh.tables}, {"bits", c.lsh.bits}, {"seed", c.lsh.seed}}},
          {"state_dir", c.state_dir},
          {"cache_dir", c.cache_dir},
          {"default_k", c.default_k}};
}

SessionConfig SessionConfigFromJson(const json &j) {
  if (!j.is_object()) throw InvalidArgument("config: expected an object");
  SessionConfig c;
  try {
    if (j.contains("layout")) c.layout = layout::LayoutConfigFromJson(j.at("layout"));
    if (j.contains("scoring")) c.scoring = biography::ScoringConfigFromJson(j.at("scoring"));
    if (j.contains("lsh")) {
      const auto &l = j.at("lsh");
      c.lsh.tables = l.value("tables", c.lsh.tables);
      c.lsh.bits = l.value("bits", c.lsh.bits);
      c.lsh.seed = l.value("seed", c.lsh.seed);
    }
    c.state_dir = j.value("state_dir", c.state_dir);
    c.cache_dir = j.value("cache_dir", c.cache_dir);
    c.default_k = j.value("default_k", c.default_k);
  } catch (const json::exception &e) {
    throw InvalidArgument(std::string("config: ") + e.what());
  }
  if (c.lsh.tables < 1 || c.lsh.bits < 1 || c.lsh.bits > 64)
    throw InvalidArgument("config: lsh tables >= 1 and bits in [1, 64] required");
  if (c.default_k < 1) throw InvalidArgument("config: default_k must be >= 1");
  return c;
}

SessionConfig LoadSessionConfig(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception &e) {
    throw InvalidArgument("config " + path + ": " + e.what());
  }
  return SessionConfigFromJson(j);
}

similarity::LshIndex::Entries GalleryEntries(const corpus::Corpus &corpus) {
  similarity::LshIndex::Entries out;
  for (const auto &[id, g] : corpus.dbs().seal_gallery) out.emplace_back(id, g.feature);
  return out;
}

similarity::LshIndex::Entries PaintingEntries(const corpus::Corpus &corpus) {
  similarity::LshIndex::Entries out;
  for (const auto &[id, h] : corpus.handscrolls())
    if (h.painting_feature) out.emplace_back(id, *h.painting_feature);
  return out;
}

namespace {
std::map<std::string, std::string> ThemeDocuments(const corpus::Corpus &c) {
  std::map<std::string, std::string> docs;
  for (const auto &[id, h] : c.handscrolls()) docs[id] = h.theme_text;
  return docs;
}
}  // namespace

Session::Session(corpus::CorpusHandle corpus, SessionConfig config)
    : corpus_(std::move(corpus)),
      config_(std::move(config)),
      layout_hash_(StableHash(layout::ToJson(config_.layout).dump())),
      gallery_index_(similarity::LshIndex::Build(GalleryEntries(*corpus_), config_.lsh)),
      painting_index_(similarity::LshIndex::Build(PaintingEntries(*corpus_), config_.lsh)),
      theme_index_(ThemeDocuments(*corpus_)) {
  config_.scoring.Validate();
}

json Session::Handscrolls() const {
  json out = json::array();
  for (const auto &[id, h] : corpus_->handscrolls()) {
    json s = PaintingSummary(*corpus_, h);
    s["seal_count"] = h.seals.size();
    s["inscription_count"] = h.inscriptions.size();
    out.push_back(std::move(s));
  }
  return out;
}

json Session::Handscroll(const std::string &id) const {
  const auto &h = corpus_->handscroll(id);
  json j = corpus::ToJson(h, -1, -1);
  j["has_painting_feature"] = h.painting_feature.has_value();
  j["painter_name"] = h.painter_id ? json(corpus_->person(*h.painter_id).name) : json(nullptr);
  auto &seals = j["seals"];
  for (size_t i = 0; i < h.seals.size(); ++i)
    seals[i]["sealer_id"] = OptionalJson(SealerOf(h.seals[i], corpus_->dbs()));
  return j;
}

json Session::Stats(const std::string &id) const {
  return corpus::ToJson(corpus::AggregateElementStats(*corpus_, id));
}

int Session::DefaultTarget(const std::string &id) const {
  const auto &h = corpus_->handscroll(id);
  return std::max(1, int(std::lround(h.core_region.w / config_.layout.plan.core_fraction)));
}

std::shared_ptr<const layout::LayoutResult> Session::LayoutResultFor(const std::string &id,
                                                                     int target) const {
  const auto &h = corpus_->handscroll(id);
  auto key = std::make_pair(id, target);
  {
    std::lock_guard<std::mutex> lock(layout_mu_);
    if (auto it = layouts_.find(key); it != layouts_.end()) return it->second;
  }
  fs::path image = h.image_ref;
  if (image.is_relative() && !corpus_->root().empty()) image = fs::path(corpus_->root()) / image;
  auto result = std::make_shared<const layout::LayoutResult>(
      layout::LayoutHandscroll(layout::ReadPng(image.string()), h, target, config_.layout));
  std::lock_guard<std::mutex> lock(layout_mu_);
  if (layouts_.size() >= kMaxCachedLayouts) layouts_.clear();
  return layouts_.emplace(key, result).first->second;
}

json Session::Layout(const std::string &id, std::optional<int> target) const {
  int t = target.value_or(DefaultTarget(id));
  auto r = LayoutResultFor(id, t);
  return {{"handscroll_id", id},
          {"target", t},
          {"config_hash", layout_hash_},
          {"plan", layout::ToJson(r->plan)},
          {"ring", layout::ToJson(r->ring)},
          {"ring_png", "/handscrolls/" + id + "/ring.png?target=" + std::to_string(t)}};
}

std::string Session::RingPng(const std::string &id, std::optional<int> target) const {
  int t = target.value_or(DefaultTarget(id));
  fs::path cached;
  if (!config_.cache_dir.empty()) {
    corpus_->handscroll(id);
    cached = fs::path(config_.cache_dir) / "rings" /
             (FileStem(id) + "_" + std::to_string(t) + "_" + layout_hash_ + ".png");
    if (fs::exists(cached)) return ReadFile(cached);
  }
  std::string png = layout::EncodePng(LayoutResultFor(id, t)->ring_image);
  if (!cached.empty()) WriteFileAtomic(cached, png);
  return png;
}

json Session::Resolve(const json &request) const {
  if (!request.is_object()) throw InvalidArgument("resolve: body must be an object");
  std::string surface = StringField(request, "surface");
  std::string kind = OptionalString(request, "kind").value_or("figure");
  const auto &dbs = corpus_->dbs();
  if (kind == "location") return entity::ToJson(entity::ResolveLocation(surface, dbs));
  if (kind != "figure") throw InvalidArgument("resolve: kind must be figure or location");

  entity::ResolveContext ctx;
  ctx.era = OptionalString(request, "era_hint");
  auto hid = OptionalString(request, "handscroll_id");
  std::set<std::string> confirmed;
  if (hid) {
    const auto &h = corpus_->handscroll(*hid);
    if (!ctx.era) ctx.era = h.dynasty;
    confirmed = entity::ConfirmedFigures(h, dbs);
    ctx.connections = [&](const std::vector<std::string> &ids) {
      return entity::CountConnections(ids, confirmed, dbs);
    };
  } else {
    ctx.connections = [&](const std::vector<std::string> &ids) { return entity::EventDegree(ids, dbs); };
  }
  if (ctx.era && !dbs.FindDynasty(*ctx.era)) throw InvalidArgument("resolve: unknown era " + *ctx.era);
  auto r = entity::ResolvePerson(surface, dbs, ctx);
  if (auto choice = OptionalString(request, "select")) r = entity::SelectCandidate(r, *choice, dbs);
  return entity::ToJson(r);
}

json Session::MatchSeal(const json &request) const {
  FeatureVector f = VectorField(request, "feature");
  std::optional<int> k;
  if (request.contains("k")) {
    if (!request.at("k").is_number_integer()) throw InvalidArgument("k must be an integer");
    k = request.at("k").get<int>();
  }
  json out = json::array();
  for (const auto &n : gallery_index_.Query(f, KOrDefault(k, 5))) {
    const auto &g = corpus_->dbs().seal_gallery.at(n.id);
    out.push_back({{"seal_id", n.id}, {"sealer_id", g.sealer_id}, {"content", g.content},
                   {"similarity", n.similarity}});
  }
  return {{"matches", out}};
}

json Session::Ego(const std::string &figure_id) const {
  const auto &p = corpus_->person(figure_id);
  const auto &dbs = corpus_->dbs();
  struct Neighbor {
    json events = json::array();
    std::map<std::string, int> types;
  };
  std::map<std::string, Neighbor> neighbors;
  if (auto it = dbs.events_by_person.find(figure_id); it != dbs.events_by_person.end()) {
    for (size_t e : it->second) {
      const auto &ev = dbs.events[e];
      std::set<std::string> others(ev.participants.begin(), ev.participants.end());
      others.erase(figure_id);
      for (const auto &o : others) {
        auto &n = neighbors[o];
        n.events.push_back({{"event_id", ev.id}, {"type", ev.type}, {"year", OptionalJson(ev.year)},
                            {"description", ev.description}});
        ++n.types[ev.type];
      }
    }
  }
  json list = json::array();
  for (const auto &[id, n] : neighbors) {
    const auto *q = dbs.FindPerson(id);
    list.push_back({{"figure_id", id},
                    {"name", q ? json(q->name) : json(nullptr)},
                    {"dynasty", q ? OptionalJson(q->dynasty) : json(nullptr)},
                    {"event_count", n.events.size()},
                    {"types", n.types},
                    {"events", n.events}});
  }
  std::stable_sort(list.begin(), list.end(), [](const json &a, const json &b) {
    return a["event_count"].get<size_t>() > b["event_count"].get<size_t>();
  });
  return {{"figure", corpus::ToJson(p)},
          {"painted", corpus_->PaintingsBy(figure_id)},
          {"marked", corpus_->PaintingsMarkedBy(figure_id)},
          {"neighbors", list}};
}

json Session::Cohort(const json &request) const {
  const auto &ids_json = Field(request, "figure_ids");
  if (!ids_json.is_array() || ids_json.empty())
    throw InvalidArgument("cohort: figure_ids must be a non-empty array");
  std::vector<std::string> ids;
  for (const auto &v : ids_json) {
    if (!v.is_string()) throw InvalidArgument("cohort: figure ids must be strings");
    ids.push_back(v.get<std::string>());
    corpus_->person(ids.back());
  }
  std::map<std::string, size_t> pos;
  for (size_t i = 0; i < ids.size(); ++i)
    if (!pos.emplace(ids[i], i).second) throw InvalidArgument("cohort: duplicate id " + ids[i]);
  std::vector<std::vector<int>> matrix(ids.size(), std::vector<int>(ids.size(), 0));
  std::map<std::pair<size_t, size_t>, std::map<std::string, int>> types;
  std::map<std::string, int> totals;
  for (const auto &ev : corpus_->dbs().events) {
    std::set<size_t> in;
    for (const auto &p : ev.participants)
      if (auto it = pos.find(p); it != pos.end()) in.insert(it->second);
    if (in.size() < 2) continue;
    ++totals[ev.type];
    for (size_t a : in)
      for (size_t b : in) {
        if (a == b) continue;
        ++matrix[a][b];
        if (a < b) ++types[{a, b}][ev.type];
      }
  }
  json pairs = json::array();
  for (const auto &[ab, t] : types) {
    int n = 0;
    for (const auto &[k, v] : t) n += v;
    pairs.push_back({{"a", ids[ab.first]}, {"b", ids[ab.second]}, {"count", n}, {"types", t}});
  }
  return {{"figure_ids", ids}, {"matrix", matrix}, {"pairs", pairs}, {"type_totals", totals}};
}

json Session::Similar(const std::string &id, const std::string &mode, std::optional<int> k) const {
  const auto &h = corpus_->handscroll(id);
  size_t want = KOrDefault(k, config_.default_k);
  std::vector<similarity::Neighbor> ranked;
  if (mode == "theme") {
    ranked = theme_index_.Similar(id, want);
  } else if (mode == "feature") {
    if (!h.painting_feature)
      return {{"handscroll_id", id}, {"mode", mode}, {"results", json::array()},
              {"reason", "no painting feature"}};
    for (const auto &n : painting_index_.Query(*h.painting_feature, want + 1))
      if (n.id != id && ranked.size() < want) ranked.push_back(n);
  } else {
    throw InvalidArgument("similar: mode must be feature or theme");
  }
  json results = json::array();
  for (size_t r = 0; r < ranked.size(); ++r) {
    json s = PaintingSummary(*corpus_, corpus_->handscroll(ranked[r].id));
    s["similarity"] = ranked[r].similarity;
    s["similarity_rank"] = r + 1;
    results.push_back(std::move(s));
  }
  // Presentation order: painter's birth year, unknown last.
  std::stable_sort(results.begin(), results.end(), [](const json &a, const json &b) {
    const auto &x = a["painter_birth_year"], &y = b["painter_birth_year"];
    if (x.is_null() != y.is_null()) return !x.is_null();
    if (x.is_null()) return false;
    return x.get<int>() < y.get<int>();
  });
  return {{"handscroll_id", id}, {"mode", mode}, {"results", results}};
}

json Session::Uncertain(const std::string &id) const {
  const auto &h = corpus_->handscroll(id);
  json unresolved = json::array(), ambiguous = json::array(), places = json::array();
  for (const auto &link : entity::LinkMentions(*corpus_, h)) {
    json m{{"inscription_id", link.inscription_id}, {"surface", link.mention.surface},
           {"tag", ToString(link.mention.tag)}};
    if (link.figure) {
      if (!link.figure->resolved()) {
        unresolved.push_back(m);
      } else if (link.figure->ambiguous || link.figure->era_filter_dropped) {
        m["resolution"] = entity::ToJson(*link.figure);
        ambiguous.push_back(m);
      }
    }
    if (link.place && !link.place->resolved()) places.push_back(m);
  }
  std::set<std::string> seen;
  json similar = json::array();
  auto consider = [&](const std::vector<similarity::Neighbor> &ns, const char *mode) {
    for (const auto &n : ns) {
      const auto &o = corpus_->handscroll(n.id);
      if ((o.painter_id && o.creation_year) || !seen.insert(n.id).second) continue;
      json s = PaintingSummary(*corpus_, o);
      s["similarity"] = n.similarity;
      s["mode"] = mode;
      similar.push_back(std::move(s));
    }
  };
  consider(theme_index_.Similar(id, size_t(config_.default_k)), "theme");
  if (h.painting_feature) {
    std::vector<similarity::Neighbor> ns;
    for (const auto &n : painting_index_.Query(*h.painting_feature, size_t(config_.default_k) + 1))
      if (n.id != id) ns.push_back(n);
    consider(ns, "feature");
  }
  auto stats = corpus::AggregateElementStats(*corpus_, id);
  return {{"handscroll_id", id},
          {"unresolved_figures", unresolved},
          {"ambiguous_figures", ambiguous},
          {"unresolved_places", places},
          {"unmatched_seals", stats.unmatched_seals},
          {"uncertain_similar", similar}};
}

Session::History &Session::HistoryFor(const std::string &id) const {
  corpus_->handscroll(id);
  std::lock_guard<std::mutex> lock(histories_mu_);
  auto &slot = histories_[id];
  if (!slot) {
    slot = std::make_unique<History>();
    std::lock_guard<std::mutex> hl(slot->mu);
    fs::path stored;
    if (!config_.state_dir.empty())
      stored = fs::path(config_.state_dir) / "biographies" / (FileStem(id) + ".json");
    if (!stored.empty() && fs::exists(stored)) {
      json j;
      try {
        j = json::parse(ReadFile(stored));
      } catch (const json::exception &e) {
        throw Error("corrupt biography state " + stored.string() + ": " + e.what());
      }
      for (const auto &v : j.at("versions"))
        slot->versions.push_back(biography::BiographyFromJson(*corpus_, v, config_.scoring));
    }
    if (slot->versions.empty())
      slot->versions.push_back(biography::AssembleBiography(*corpus_, id, config_.scoring));
  }
  return *slot;
}

void Session::Persist(const std::string &id, const std::vector<biography::Biography> &versions) const {
  if (config_.state_dir.empty()) return;
  json arr = json::array();
  for (const auto &v : versions) arr.push_back(biography::ToJson(v));
  json doc{{"handscroll_id", id}, {"versions", arr}};
  WriteFileAtomic(fs::path(config_.state_dir) / "biographies" / (FileStem(id) + ".json"),
                  corpus::Canonical(doc) + "\n");
}

biography::Biography Session::GetBiography(const std::string &id, std::optional<int> version) const {
  auto &hist = HistoryFor(id);
  std::lock_guard<std::mutex> lock(hist.mu);
  if (!version) return hist.versions.back();
  for (const auto &v : hist.versions)
    if (v.version == *version) return v;
  throw NotFound("biography version", id + "@" + std::to_string(*version));
}

biography::Biography Session::Customize(const std::string &id, const json &request) {
  const auto &ver = Field(request, "version");
  if (!ver.is_number_integer()) throw InvalidArgument("customize: version must be an integer");
  const auto &action = Field(request, "action");
  auto &hist = HistoryFor(id);
  std::lock_guard<std::mutex> lock(hist.mu);
  const auto &current = hist.versions.back();
  if (ver.get<int>() != current.version) throw VersionConflict(ver.get<int>(), current.version);
  auto next = biography::Customize(*corpus_, current, action, config_.scoring);
  auto versions = hist.versions;
  versions.push_back(next);
  Persist(id, versions);
  hist.versions = std::move(versions);
  return next;
}

}  // namespace scrollbio::api
