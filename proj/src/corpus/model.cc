#include "scrollbio/corpus/model.h"

#include <algorithm>
#include <array>

#include "scrollbio/util/error.h"
#include "scrollbio/util/utf8.h"

namespace scrollbio {
namespace {

template <typename E, size_t N>
E FromName(std::string_view name, const std::array<std::string_view, N> &names,
           const char *what) {
  for (size_t i = 0; i < N; ++i) {
    if (names[i] == name) return static_cast<E>(i);
  }
  throw InvalidArgument(std::string("unknown ") + what + ": " +
                        std::string(name));
}

constexpr std::array<std::string_view, 4> kTagNames = {"Time", "Location",
                                                       "Figure", "Thing"};
constexpr std::array<std::string_view, 5> kBlockNames = {"core", "text", "silk",
                                                         "other", "padding"};
constexpr std::array<std::string_view, 3> kIdentityNames = {
    "collector", "literati", "official"};
constexpr std::array<std::string_view, 3> kRoleNames = {"none", "representative",
                                                        "pioneer"};

void AddHit(std::map<std::string, std::vector<AliasHit>> &index,
            const std::string &alias, AliasHit hit) {
  auto &hits = index[utf8::NormalizeKey(alias)];
  if (std::find(hits.begin(), hits.end(), hit) == hits.end()) {
    hits.push_back(std::move(hit));
  }
}

std::string SourcePrefix(const std::string &id) {
  auto colon = id.find(':');
  return colon == std::string::npos ? id : id.substr(0, colon);
}

template <typename Record>
void IndexNames(const std::map<std::string, Record> &records,
                std::map<std::string, std::vector<AliasHit>> &index) {
  index.clear();
  for (const auto &[id, rec] : records) {
    if (rec.names.empty()) {
      AddHit(index, rec.name, {id, SourcePrefix(id)});
      continue;
    }
    for (const auto &[src, names] : rec.names) {
      for (const auto &n : names) AddHit(index, n, {id, src});
    }
  }
  for (auto &[alias, hits] : index) {
    std::sort(hits.begin(), hits.end(), [](const AliasHit &a, const AliasHit &b) {
      return std::tie(a.id, a.source) < std::tie(b.id, b.source);
    });
  }
}

}  // namespace

std::string_view ToString(EntityTag tag) {
  return kTagNames[static_cast<size_t>(tag)];
}
EntityTag EntityTagFromString(std::string_view name) {
  return FromName<EntityTag>(name, kTagNames, "entity tag");
}
std::string_view ToString(BlockKind kind) {
  return kBlockNames[static_cast<size_t>(kind)];
}
BlockKind BlockKindFromString(std::string_view name) {
  return FromName<BlockKind>(name, kBlockNames, "block kind");
}
std::string_view ToString(Identity identity) {
  return kIdentityNames[static_cast<size_t>(identity)];
}
Identity IdentityFromString(std::string_view name) {
  return FromName<Identity>(name, kIdentityNames, "identity");
}
std::string_view ToString(SchoolRole role) {
  return kRoleNames[static_cast<size_t>(role)];
}
SchoolRole SchoolRoleFromString(std::string_view name) {
  return FromName<SchoolRole>(name, kRoleNames, "school role");
}

void ReferenceDatabases::BuildIndexes() {
  IndexNames(persons, person_aliases);
  IndexNames(places, place_aliases);
  events_by_person.clear();
  for (size_t i = 0; i < events.size(); ++i) {
    std::vector<std::string> seen;
    for (const auto &p : events[i].participants) {
      if (std::find(seen.begin(), seen.end(), p) != seen.end()) continue;
      seen.push_back(p);
      events_by_person[p].push_back(i);
    }
  }
}

const PersonRecord *ReferenceDatabases::FindPerson(std::string_view id) const {
  auto it = persons.find(std::string(id));
  return it == persons.end() ? nullptr : &it->second;
}

const DynastyInfo *ReferenceDatabases::FindDynasty(std::string_view name) const {
  for (const auto &d : dynasties) {
    if (d.name == name) return &d;
  }
  return nullptr;
}

size_t ReferenceDatabases::DynastyOrder(std::string_view name) const {
  for (size_t i = 0; i < dynasties.size(); ++i) {
    if (dynasties[i].name == name) return i;
  }
  return std::string::npos;
}

const std::vector<AliasHit> &ReferenceDatabases::PersonHits(
    std::string_view alias) const {
  static const std::vector<AliasHit> none;
  auto it = person_aliases.find(utf8::NormalizeKey(alias));
  return it == person_aliases.end() ? none : it->second;
}

const std::vector<AliasHit> &ReferenceDatabases::PlaceHits(
    std::string_view alias) const {
  static const std::vector<AliasHit> none;
  auto it = place_aliases.find(utf8::NormalizeKey(alias));
  return it == place_aliases.end() ? none : it->second;
}

std::optional<std::string> SealerOf(const SealAnnotation &seal,
                                    const ReferenceDatabases &dbs) {
  if (seal.sealer_id) return seal.sealer_id;
  if (seal.matched_seal_id) {
    auto it = dbs.seal_gallery.find(*seal.matched_seal_id);
    if (it != dbs.seal_gallery.end()) return it->second.sealer_id;
  }
  return std::nullopt;
}

}  // namespace scrollbio
