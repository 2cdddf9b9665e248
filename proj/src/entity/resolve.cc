#include "scrollbio/entity/resolve.h"

#include <algorithm>

#include "scrollbio/util/error.h"
#include "scrollbio/util/utf8.h"

namespace scrollbio::entity {
namespace {

constexpr std::string_view kMethodNames[] = {"direct", "segment", "era_filter",
                                             "social_rank", "manual"};

struct Lookup {
  std::string alias;
  std::vector<AliasHit> hits;
  Method method = Method::kDirect;
};

template <typename HitsFn>
Lookup Cascade(std::string_view surface, HitsFn hits_for) {
  Lookup out;
  const std::string trimmed(utf8::Trim(surface));
  out.hits = hits_for(trimmed);
  if (!out.hits.empty()) {
    out.alias = trimmed;
    return out;
  }
  for (const std::string &seg : GenerateNameSegments(trimmed)) {
    out.hits = hits_for(seg);
    if (!out.hits.empty()) {
      out.alias = seg;
      out.method = Method::kSegment;
      return out;
    }
  }
  return out;
}

std::vector<std::string> DistinctIds(const std::vector<AliasHit> &hits) {
  std::vector<std::string> ids;
  for (const auto &h : hits) ids.push_back(h.id);
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

std::set<std::string> SourcesFor(const std::vector<AliasHit> &hits, const std::string &id) {
  std::set<std::string> out;
  for (const auto &h : hits)
    if (h.id == id) out.insert(h.source);
  return out;
}

std::set<std::string> SourcesOf(const PersonRecord &p) {
  std::set<std::string> out;
  for (const auto &[src, names] : p.names) out.insert(src);
  if (out.empty()) out.insert(p.id.substr(0, p.id.find(':')));
  return out;
}

bool AliveIn(const PersonRecord &p, const std::string &era, const ReferenceDatabases &dbs) {
  if (p.dynasty && *p.dynasty == era) return true;
  const DynastyInfo *d = dbs.FindDynasty(era);
  if (!d || !d->start_year || !d->end_year) return false;
  std::optional<int> lo = p.birth_year ? p.birth_year : p.death_year;
  std::optional<int> hi = p.death_year ? p.death_year : p.birth_year;
  if (!lo) return false;
  return *lo <= *d->end_year && *hi >= *d->start_year;
}

}  // namespace

std::string_view ToString(Method method) {
  return kMethodNames[static_cast<size_t>(method)];
}

Method MethodFromString(std::string_view name) {
  for (size_t i = 0; i < std::size(kMethodNames); ++i) {
    if (kMethodNames[i] == name) return static_cast<Method>(i);
  }
  throw InvalidArgument("unknown resolution method: " + std::string(name));
}

std::vector<std::string> GenerateNameSegments(std::string_view name) {
  const std::string_view trimmed = utf8::Trim(name);
  std::vector<std::string> units;
  bool cjk = false;
  for (const auto &ch : utf8::Characters(trimmed)) cjk = cjk || utf8::IsCjk(ch);
  if (cjk) {
    for (auto &ch : utf8::Characters(trimmed))
      if (ch != " ") units.push_back(ch);
  } else {
    std::string cur;
    for (char c : trimmed) {
      if (c == ' ' || c == '\t') {
        if (!cur.empty()) units.push_back(std::move(cur));
        cur.clear();
      } else {
        cur += c;
      }
    }
    if (!cur.empty()) units.push_back(std::move(cur));
  }
  const std::string sep = cjk ? "" : " ";
  std::vector<std::string> out;
  const int n = static_cast<int>(units.size());
  for (int len = n - 1; len >= 2; --len) {
    for (int start = n - len; start >= 0; --start) {
      std::string seg;
      for (int k = start; k < start + len; ++k) {
        if (k > start) seg += sep;
        seg += units[k];
      }
      out.push_back(std::move(seg));
    }
  }
  return out;
}

ResolvedFigure DisambiguateSameName(const std::vector<std::string> &candidate_ids,
                                    const std::optional<std::string> &era,
                                    const ConnectionCounts &connections,
                                    const ReferenceDatabases &dbs) {
  if (candidate_ids.empty()) throw InvalidArgument("no candidates to disambiguate");
  std::vector<Candidate> all;
  for (const auto &id : candidate_ids) {
    const PersonRecord *p = dbs.FindPerson(id);
    if (!p) throw InvalidArgument("unknown candidate: " + id);
    if (std::any_of(all.begin(), all.end(),
                    [&](const Candidate &c) { return c.person_id == id; })) {
      continue;
    }
    Candidate c;
    c.person_id = id;
    c.name = p->name;
    c.sources = SourcesOf(*p);
    c.dynasty = p->dynasty;
    c.birth_year = p->birth_year;
    c.death_year = p->death_year;
    c.in_era = !era || AliveIn(*p, *era, dbs);
    auto it = connections.find(id);
    c.connections = it == connections.end() ? 0 : it->second;
    all.push_back(std::move(c));
  }
  ResolvedFigure r;
  const bool any_in_era =
      std::any_of(all.begin(), all.end(), [](const Candidate &c) { return c.in_era; });
  r.era_filter_dropped = !any_in_era;
  auto eligible = [&](const Candidate &c) { return c.in_era || r.era_filter_dropped; };
  std::sort(all.begin(), all.end(), [&](const Candidate &a, const Candidate &b) {
    const bool ea = eligible(a), eb = eligible(b);
    if (ea != eb) return ea;
    if (ea && a.connections != b.connections) return a.connections > b.connections;
    return a.person_id < b.person_id;
  });
  const size_t n_eligible = std::count_if(all.begin(), all.end(), eligible);
  const Candidate &top = all.front();
  if (n_eligible == 1) {
    r.method = Method::kEraFilter;
  } else {
    r.method = Method::kSocialRank;
    r.ambiguous = all[1].connections == top.connections;
  }
  r.person_id = top.person_id;
  r.canonical_name = top.name;
  r.sources = top.sources;
  r.candidates = std::move(all);
  return r;
}

ResolvedFigure ResolvePerson(std::string_view surface, const ReferenceDatabases &dbs,
                             const ResolveContext &context) {
  Lookup l = Cascade(surface, [&](const std::string &s) { return dbs.PersonHits(s); });
  ResolvedFigure r;
  if (!l.hits.empty()) {
    const std::vector<std::string> ids = DistinctIds(l.hits);
    if (ids.size() == 1) {
      r = DisambiguateSameName(ids, std::nullopt, {}, dbs);
      r.method = l.method;
    } else {
      ConnectionCounts counts;
      if (context.connections) counts = context.connections(ids);
      r = DisambiguateSameName(ids, context.era, counts, dbs);
    }
    r.matched_alias = l.alias;
    r.sources = SourcesFor(l.hits, *r.person_id);
  }
  r.surface = std::string(utf8::Trim(surface));
  return r;
}

ResolvedFigure SelectCandidate(const ResolvedFigure &resolved,
                               const std::string &person_id,
                               const ReferenceDatabases &dbs) {
  auto it = std::find_if(resolved.candidates.begin(), resolved.candidates.end(),
                         [&](const Candidate &c) { return c.person_id == person_id; });
  if (it == resolved.candidates.end()) {
    throw InvalidArgument(person_id + " is not a candidate for '" + resolved.surface + "'");
  }
  ResolvedFigure r = resolved;
  r.person_id = person_id;
  r.canonical_name = it->name;
  const auto &hits = dbs.PersonHits(resolved.matched_alias);
  r.sources = SourcesFor(hits, person_id);
  if (r.sources.empty()) r.sources = it->sources;
  r.method = Method::kManual;
  r.ambiguous = false;
  return r;
}

ResolvedPlace ResolveLocation(std::string_view surface, const ReferenceDatabases &dbs) {
  Lookup l = Cascade(surface, [&](const std::string &s) { return dbs.PlaceHits(s); });
  ResolvedPlace r;
  r.surface = std::string(utf8::Trim(surface));
  if (l.hits.empty()) return r;
  r.candidates = DistinctIds(l.hits);
  r.place_id = r.candidates.front();
  r.ambiguous = r.candidates.size() > 1;
  r.canonical_name = dbs.places.at(*r.place_id).name;
  r.matched_alias = l.alias;
  r.sources = SourcesFor(l.hits, *r.place_id);
  r.method = l.method;
  return r;
}

std::set<std::string> ConfirmedFigures(const HandscrollRecord &handscroll,
                                       const ReferenceDatabases &dbs) {
  std::set<std::string> out;
  if (handscroll.painter_id) out.insert(*handscroll.painter_id);
  for (const auto &s : handscroll.seals)
    if (auto id = SealerOf(s, dbs)) out.insert(*id);
  for (const auto &i : handscroll.inscriptions)
    if (i.author_id) out.insert(*i.author_id);
  return out;
}

ConnectionCounts CountConnections(const std::vector<std::string> &candidate_ids,
                                  const std::set<std::string> &confirmed,
                                  const ReferenceDatabases &dbs) {
  ConnectionCounts out;
  for (const auto &id : candidate_ids) {
    int n = 0;
    auto it = dbs.events_by_person.find(id);
    if (it != dbs.events_by_person.end()) {
      for (size_t e : it->second) {
        const auto &ps = dbs.events[e].participants;
        if (std::any_of(ps.begin(), ps.end(), [&](const std::string &p) {
              return p != id && confirmed.count(p);
            })) {
          ++n;
        }
      }
    }
    out[id] = n;
  }
  return out;
}

ConnectionCounts EventDegree(const std::vector<std::string> &candidate_ids,
                             const ReferenceDatabases &dbs) {
  ConnectionCounts out;
  for (const auto &id : candidate_ids) {
    auto it = dbs.events_by_person.find(id);
    out[id] = it == dbs.events_by_person.end() ? 0 : static_cast<int>(it->second.size());
  }
  return out;
}

ResolvedFigure ResolvePersonOnHandscroll(std::string_view surface,
                                         const corpus::Corpus &corpus,
                                         const HandscrollRecord &handscroll,
                                         const std::optional<std::string> &era) {
  const ReferenceDatabases &dbs = corpus.dbs();
  ResolveContext ctx;
  ctx.era = era ? era : handscroll.dynasty;
  const std::set<std::string> confirmed = ConfirmedFigures(handscroll, dbs);
  ctx.connections = [&](const std::vector<std::string> &ids) {
    return CountConnections(ids, confirmed, dbs);
  };
  return ResolvePerson(surface, dbs, ctx);
}

std::vector<MentionLink> LinkMentions(const corpus::Corpus &corpus,
                                      const HandscrollRecord &handscroll) {
  std::vector<MentionLink> out;
  for (const auto &ins : handscroll.inscriptions) {
    for (const auto &m : ins.mentions) {
      MentionLink link{ins.id, m, std::nullopt, std::nullopt};
      if (m.tag == EntityTag::kFigure) {
        link.figure = ResolvePersonOnHandscroll(m.surface, corpus, handscroll);
      } else if (m.tag == EntityTag::kLocation) {
        link.place = ResolveLocation(m.surface, corpus.dbs());
      }
      out.push_back(std::move(link));
    }
  }
  return out;
}

F1Score EvaluateF1(const std::vector<EntityMention> &predicted,
                   const std::vector<EntityMention> &gold) {
  std::map<std::tuple<size_t, size_t, EntityTag>, int> remaining;
  for (const auto &g : gold) ++remaining[{g.start, g.end, g.tag}];
  int hits = 0;
  for (const auto &p : predicted) {
    auto it = remaining.find({p.start, p.end, p.tag});
    if (it != remaining.end() && it->second > 0) {
      --it->second;
      ++hits;
    }
  }
  F1Score s;
  s.precision = predicted.empty() ? 0.0 : static_cast<double>(hits) / predicted.size();
  s.recall = gold.empty() ? 0.0 : static_cast<double>(hits) / gold.size();
  s.f1 = s.precision + s.recall > 0
             ? 2 * s.precision * s.recall / (s.precision + s.recall)
             : 0.0;
  return s;
}

nlohmann::json ToJson(const Candidate &c) {
  nlohmann::json j = {{"person_id", c.person_id},
                      {"name", c.name},
                      {"sources", c.sources},
                      {"in_era", c.in_era},
                      {"connections", c.connections}};
  if (c.dynasty) j["dynasty"] = *c.dynasty;
  if (c.birth_year) j["birth_year"] = *c.birth_year;
  if (c.death_year) j["death_year"] = *c.death_year;
  return j;
}

nlohmann::json ToJson(const ResolvedFigure &r) {
  nlohmann::json candidates = nlohmann::json::array();
  for (const auto &c : r.candidates) candidates.push_back(ToJson(c));
  nlohmann::json j = {{"surface", r.surface},
                      {"resolved", r.resolved()},
                      {"candidates", std::move(candidates)},
                      {"ambiguous", r.ambiguous},
                      {"era_filter_dropped", r.era_filter_dropped}};
  if (r.resolved()) {
    j["person_id"] = *r.person_id;
    j["canonical_name"] = r.canonical_name;
    j["matched_alias"] = r.matched_alias;
    j["sources"] = r.sources;
    j["method"] = ToString(r.method);
  }
  return j;
}

nlohmann::json ToJson(const ResolvedPlace &r) {
  nlohmann::json j = {{"surface", r.surface},
                      {"resolved", r.resolved()},
                      {"candidates", r.candidates},
                      {"ambiguous", r.ambiguous}};
  if (r.resolved()) {
    j["place_id"] = *r.place_id;
    j["canonical_name"] = r.canonical_name;
    j["matched_alias"] = r.matched_alias;
    j["sources"] = r.sources;
    j["method"] = ToString(r.method);
  }
  return j;
}

nlohmann::json ToJson(const F1Score &s) {
  return {{"precision", s.precision}, {"recall", s.recall}, {"f1", s.f1}};
}

}  // namespace scrollbio::entity
