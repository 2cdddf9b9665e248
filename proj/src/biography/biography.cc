#include "scrollbio/biography/biography.h"

#include <algorithm>
#include <cmath>

#include "scrollbio/entity/resolve.h"
#include "scrollbio/util/utf8.h"

namespace scrollbio::biography {
namespace {

using nlohmann::json;

struct Marks {
  std::map<int, int> seals_by_year;
  int undated_seals = 0;
  std::vector<DatedInscription> inscriptions;
  int undated_inscriptions = 0;
};

std::map<std::string, Marks> CollectMarks(const HandscrollRecord &h, const ReferenceDatabases &dbs) {
  std::map<std::string, Marks> out;
  for (const auto &s : h.seals) {
    auto sealer = SealerOf(s, dbs);
    if (!sealer) continue;
    auto &m = out[*sealer];
    if (s.timestamp_year)
      ++m.seals_by_year[*s.timestamp_year];
    else
      ++m.undated_seals;
  }
  for (const auto &i : h.inscriptions) {
    if (!i.author_id) continue;
    auto &m = out[*i.author_id];
    if (i.timestamp_year)
      m.inscriptions.push_back({*i.timestamp_year, int(utf8::Length(i.text)), i.id});
    else
      ++m.undated_inscriptions;
  }
  return out;
}

void FlagLifespan(BiographyEntry &e) {
  auto check = [&](int year, const std::string &what) {
    if (e.birth && year < *e.birth)
      e.flags.push_back(what + " dated " + std::to_string(year) + " before birth " +
                        std::to_string(*e.birth));
    if (e.death && year > *e.death)
      e.flags.push_back(what + " dated " + std::to_string(year) + " after death " +
                        std::to_string(*e.death));
  };
  for (const auto &s : e.dated_seals) check(s.year, "seal");
  for (const auto &i : e.dated_inscriptions) check(i.year, "inscription " + i.inscription_id);
}

bool EntryBefore(const BiographyEntry &x, const BiographyEntry &y) {
  if (x.birth.has_value() != y.birth.has_value()) return x.birth.has_value();
  if (x.birth && *x.birth != *y.birth) return *x.birth < *y.birth;
  if (!x.birth) {
    auto fx = x.first_activity(), fy = y.first_activity();
    if (fx.has_value() != fy.has_value()) return fx.has_value();
    if (fx && *fx != *fy) return *fx < *fy;
  }
  return x.figure_id < y.figure_id;
}

json OptionalJson(const std::optional<int> &v) { return v ? json(*v) : json(nullptr); }
json OptionalJson(const std::optional<std::string> &v) { return v ? json(*v) : json(nullptr); }

Lambda ParseLambda(const json &j) {
  if (!j.is_array() || j.size() != 3)
    throw InvalidArgument("set_lambda: lambda must be an array of 3 numbers");
  double l[3];
  for (size_t k = 0; k < 3; ++k) {
    if (!j[k].is_number()) throw InvalidArgument("set_lambda: lambda must be numeric");
    l[k] = j[k].get<double>();
    if (!std::isfinite(l[k]) || l[k] < 0)
      throw InvalidArgument("set_lambda: lambda values must be finite and >= 0");
  }
  return {l[0], l[1], l[2]};
}

std::string RequireString(const json &action, const char *key) {
  if (!action.contains(key) || !action.at(key).is_string())
    throw InvalidArgument(std::string("customize: missing string field ") + key);
  return action.at(key).get<std::string>();
}

}  // namespace

std::string_view ToString(EntryKind kind) {
  switch (kind) {
    case EntryKind::kPainter:
      return "painter";
    case EntryKind::kCollectorAppreciator:
      return "collector_appreciator";
    case EntryKind::kHistorianAdded:
      return "historian_added";
  }
  return "collector_appreciator";
}

int BiographyEntry::total_seals() const {
  int n = undated_seals;
  for (const auto &s : dated_seals) n += s.count;
  return n;
}

int BiographyEntry::total_inscriptions() const {
  return undated_inscriptions + int(dated_inscriptions.size());
}

std::optional<int> BiographyEntry::first_activity() const {
  std::optional<int> out;
  for (const auto &s : dated_seals) out = std::min(out.value_or(s.year), s.year);
  for (const auto &i : dated_inscriptions) out = std::min(out.value_or(i.year), i.year);
  return out;
}

const BiographyEntry *Biography::Find(const std::string &figure_id) const {
  for (const auto &e : entries)
    if (e.figure_id == figure_id) return &e;
  return nullptr;
}

Biography AssembleBiography(const corpus::Corpus &corpus, const std::string &handscroll_id,
                            const ScoringConfig &config) {
  return AssembleBiography(corpus, handscroll_id, config, Customizations{});
}

Biography AssembleBiography(const corpus::Corpus &corpus, const std::string &handscroll_id,
                            const ScoringConfig &base_config, const Customizations &edits) {
  const auto &h = corpus.handscroll(handscroll_id);
  const auto &dbs = corpus.dbs();
  ScoringConfig config = base_config;
  if (edits.lambda) config.lambda = *edits.lambda;
  config.Validate();

  Biography bio;
  bio.handscroll_id = h.id;
  bio.lambda = config.lambda;
  bio.customizations = edits;

  auto marks = CollectMarks(h, dbs);
  std::map<std::string, EntryKind> figures;
  for (const auto &[id, m] : marks) figures[id] = EntryKind::kCollectorAppreciator;
  if (h.painter_id) figures[*h.painter_id] = EntryKind::kPainter;
  for (const auto &id : edits.removed) {
    if (h.painter_id && id == *h.painter_id) throw CustomizeError("cannot remove the painter " + id);
    figures.erase(id);
  }
  for (const auto &[id, note] : edits.added) {
    corpus.person(id);
    if (!figures.count(id)) figures[id] = EntryKind::kHistorianAdded;
  }

  for (const auto &[id, kind] : figures) {
    const auto &p = corpus.person(id);
    BiographyEntry e;
    e.figure_id = id;
    e.name = p.name;
    e.kind = kind;
    e.dynasty = p.dynasty;
    e.birth = p.birth_year;
    e.death = p.death_year;
    if (auto it = marks.find(id); it != marks.end()) {
      for (const auto &[year, n] : it->second.seals_by_year) e.dated_seals.push_back({year, n});
      e.undated_seals = it->second.undated_seals;
      e.dated_inscriptions = it->second.inscriptions;
      std::stable_sort(e.dated_inscriptions.begin(), e.dated_inscriptions.end(),
                       [](const DatedInscription &a, const DatedInscription &b) {
                         return a.year != b.year ? a.year < b.year : a.inscription_id < b.inscription_id;
                       });
      e.undated_inscriptions = it->second.undated_inscriptions;
    }
    if (kind == EntryKind::kHistorianAdded) e.audit_note = edits.added.at(id);
    e.score = ScoreFigure(InputsFor(corpus, id, config), config);
    FlagLifespan(e);
    bio.entries.push_back(std::move(e));
  }
  std::sort(bio.entries.begin(), bio.entries.end(), EntryBefore);

  std::vector<double> scores;
  for (const auto &e : bio.entries) scores.push_back(e.score.s);
  auto tiers = AssignTiers(scores, config);
  for (size_t k = 0; k < bio.entries.size(); ++k) {
    auto &e = bio.entries[k];
    e.rank_tier = tiers[k];
    if (auto it = edits.manual_tiers.find(e.figure_id); it != edits.manual_tiers.end()) {
      e.manual_tier = it->second;
      e.rank_tier = it->second;
    }
  }

  std::map<std::pair<std::string, std::string>, int> links;
  for (const auto &ev : dbs.events) {
    std::vector<std::string> present;
    for (const auto &p : ev.participants)
      if (figures.count(p)) present.push_back(p);
    std::sort(present.begin(), present.end());
    present.erase(std::unique(present.begin(), present.end()), present.end());
    if (present.size() < 2) continue;
    ++bio.event_histogram[ev.type];
    for (size_t a = 0; a < present.size(); ++a)
      for (size_t b = a + 1; b < present.size(); ++b) {
        bio.shared_events.push_back({ev.id, present[a], present[b], ev.type, ev.year});
        ++links[{present[a], present[b]}];
      }
  }
  std::sort(bio.shared_events.begin(), bio.shared_events.end(),
            [](const SharedEvent &x, const SharedEvent &y) {
              return std::tie(x.a, x.b, x.event_id) < std::tie(y.a, y.b, y.event_id);
            });
  for (const auto &[pair, n] : links) bio.pair_links.push_back({pair.first, pair.second, n});

  for (const auto &link : entity::LinkMentions(corpus, h)) {
    if (!link.figure) continue;
    auto fig = *link.figure;
    if (auto it = edits.selections.find(fig.surface); it != edits.selections.end() &&
                                                      !fig.candidates.empty())
      fig = entity::SelectCandidate(fig, it->second, dbs);
    MentionedFigure m;
    m.inscription_id = link.inscription_id;
    m.surface = fig.surface;
    m.figure_id = fig.person_id;
    m.method = fig.resolved() ? std::string(entity::ToString(fig.method)) : "unresolved";
    m.ambiguous = fig.ambiguous;
    m.present = fig.person_id && figures.count(*fig.person_id);
    bio.mentioned_figures.push_back(std::move(m));
  }
  return bio;
}

Biography Customize(const corpus::Corpus &corpus, const Biography &current, const json &action,
                    const ScoringConfig &config) {
  if (!action.is_object()) throw InvalidArgument("customize: action must be an object");
  std::string name = RequireString(action, "action");
  const auto &h = corpus.handscroll(current.handscroll_id);
  Customizations edits = current.customizations;

  if (name == "add_figure") {
    std::string id = RequireString(action, "figure_id");
    corpus.person(id);
    if (edits.removed.erase(id) == 0) {
      if (current.Find(id)) throw CustomizeError("figure already in the biography: " + id);
      std::string note = action.contains("note") && action["note"].is_string()
                             ? action["note"].get<std::string>()
                             : "added by historian";
      edits.added[id] = note;
    }
  } else if (name == "remove_figure") {
    std::string id = RequireString(action, "figure_id");
    corpus.person(id);
    if (h.painter_id && id == *h.painter_id) throw CustomizeError("cannot remove the painter " + id);
    if (!current.Find(id)) throw NotFound("biography entry", id);
    if (edits.added.erase(id) == 0) edits.removed.insert(id);
    edits.manual_tiers.erase(id);
  } else if (name == "set_lambda") {
    if (!action.contains("lambda")) throw InvalidArgument("set_lambda: missing lambda");
    Lambda l = ParseLambda(action.at("lambda"));
    if (l == config.lambda)
      edits.lambda.reset();
    else
      edits.lambda = l;
  } else if (name == "set_manual_tier") {
    std::string id = RequireString(action, "figure_id");
    if (!current.Find(id)) throw NotFound("biography entry", id);
    if (!action.contains("tier")) throw InvalidArgument("set_manual_tier: missing tier");
    const auto &t = action.at("tier");
    if (t.is_null()) {
      edits.manual_tiers.erase(id);
    } else {
      if (!t.is_number_integer()) throw InvalidArgument("set_manual_tier: tier must be an integer");
      int tier = t.get<int>();
      if (tier < 1 || tier > config.tier_count())
        throw InvalidArgument("set_manual_tier: tier outside 1.." + std::to_string(config.tier_count()));
      edits.manual_tiers[id] = tier;
    }
  } else if (name == "select_candidate") {
    std::string surface = RequireString(action, "surface");
    std::string id = RequireString(action, "figure_id");
    corpus.person(id);
    bool found = false;
    for (const auto &m : current.mentioned_figures) found = found || m.surface == surface;
    if (!found) throw NotFound("mention", surface);
    edits.selections[surface] = id;
  } else {
    throw InvalidArgument("customize: unknown action " + name);
  }

  Biography next = AssembleBiography(corpus, current.handscroll_id, config, edits);
  next.version = current.version + 1;
  next.audit_log = current.audit_log;
  next.audit_log.push_back({next.version, action});
  return next;
}

json ToJson(const BiographyEntry &e) {
  json seals = json::array();
  for (const auto &s : e.dated_seals) seals.push_back({{"year", s.year}, {"count", s.count}});
  json ins = json::array();
  for (const auto &i : e.dated_inscriptions)
    ins.push_back({{"year", i.year}, {"char_count", i.char_count}, {"inscription_id", i.inscription_id}});
  json j{
      {"figure_id", e.figure_id},
      {"name", e.name},
      {"kind", ToString(e.kind)},
      {"dynasty", OptionalJson(e.dynasty)},
      {"lifespan", {{"birth", OptionalJson(e.birth)}, {"death", OptionalJson(e.death)}}},
      {"dated_seals", seals},
      {"undated_seals", e.undated_seals},
      {"dated_inscriptions", ins},
      {"undated_inscriptions", e.undated_inscriptions},
      {"total_seals", e.total_seals()},
      {"total_inscriptions", e.total_inscriptions()},
      {"score", {{"R", e.score.r}, {"D", e.score.d}, {"I", e.score.i}, {"S", e.score.s}}},
      {"rank_tier", e.rank_tier},
      {"manual_tier", OptionalJson(e.manual_tier)},
      {"flags", e.flags},
  };
  if (e.kind == EntryKind::kHistorianAdded) j["audit_note"] = e.audit_note;
  return j;
}

json ContentJson(const Biography &b) {
  json entries = json::array();
  for (const auto &e : b.entries) entries.push_back(ToJson(e));
  json events = json::array();
  for (const auto &s : b.shared_events)
    events.push_back({{"event_id", s.event_id}, {"a", s.a}, {"b", s.b}, {"type", s.type},
                      {"year", OptionalJson(s.year)}});
  json links = json::array();
  for (const auto &l : b.pair_links) links.push_back({{"a", l.a}, {"b", l.b}, {"thickness", l.thickness}});
  json mentioned = json::array();
  for (const auto &m : b.mentioned_figures)
    mentioned.push_back({{"inscription_id", m.inscription_id}, {"surface", m.surface},
                         {"figure_id", OptionalJson(m.figure_id)}, {"method", m.method},
                         {"ambiguous", m.ambiguous}, {"present", m.present}});
  const auto &c = b.customizations;
  json added = json::object();
  for (const auto &[id, note] : c.added) added[id] = note;
  json tiers = json::object();
  for (const auto &[id, t] : c.manual_tiers) tiers[id] = t;
  json selections = json::object();
  for (const auto &[s, id] : c.selections) selections[s] = id;
  json custom{{"added", added}, {"removed", c.removed}, {"manual_tiers", tiers},
              {"selections", selections},
              {"lambda", c.lambda ? json{c.lambda->l1, c.lambda->l2, c.lambda->l3} : json(nullptr)}};
  return {
      {"handscroll_id", b.handscroll_id},
      {"lambda", {b.lambda.l1, b.lambda.l2, b.lambda.l3}},
      {"entries", entries},
      {"shared_events", events},
      {"event_histogram", b.event_histogram},
      {"pair_links", links},
      {"mentioned_figures", mentioned},
      {"customizations", custom},
  };
}

json ToJson(const Biography &b) {
  json j = ContentJson(b);
  j["version"] = b.version;
  json audit = json::array();
  for (const auto &a : b.audit_log) audit.push_back({{"version", a.version}, {"action", a.action}});
  j["audit_log"] = audit;
  return j;
}

Biography BiographyFromJson(const corpus::Corpus &corpus, const json &j, const ScoringConfig &config) {
  try {
    Customizations c;
    const auto &cj = j.at("customizations");
    for (const auto &[id, note] : cj.at("added").items()) c.added[id] = note.get<std::string>();
    for (const auto &id : cj.at("removed")) c.removed.insert(id.get<std::string>());
    for (const auto &[id, t] : cj.at("manual_tiers").items()) c.manual_tiers[id] = t.get<int>();
    for (const auto &[s, id] : cj.at("selections").items()) c.selections[s] = id.get<std::string>();
    if (!cj.at("lambda").is_null()) c.lambda = ParseLambda(cj.at("lambda"));
    Biography b = AssembleBiography(corpus, j.at("handscroll_id").get<std::string>(), config, c);
    b.version = j.at("version").get<int>();
    for (const auto &a : j.at("audit_log"))
      b.audit_log.push_back({a.at("version").get<int>(), a.at("action")});
    return b;
  } catch (const json::exception &e) {
    throw InvalidArgument(std::string("stored biography: ") + e.what());
  }
}

}  // namespace scrollbio::biography
