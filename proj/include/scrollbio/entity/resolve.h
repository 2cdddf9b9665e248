#ifndef SCROLLBIO_ENTITY_RESOLVE_H_
#define SCROLLBIO_ENTITY_RESOLVE_H_

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "scrollbio/corpus/corpus.h"
#include "scrollbio/corpus/model.h"

namespace scrollbio::entity {

// Contiguous sub-names from length n-1 down to 2, rightmost first within a
// length. Romanized names count whitespace-separated syllables as
// characters ("Han Lin Qian Pu" has four); anything containing CJK counts
// code points. Names shorter than three characters have no segments.
std::vector<std::string> GenerateNameSegments(std::string_view name);

enum class Method { kDirect, kSegment, kEraFilter, kSocialRank, kManual };
std::string_view ToString(Method method);
Method MethodFromString(std::string_view name);

struct Candidate {
  std::string person_id;
  std::string name;
  std::set<std::string> sources;
  std::optional<std::string> dynasty;
  std::optional<int> birth_year;
  std::optional<int> death_year;
  // Passed the era filter (or the filter was not applied).
  bool in_era = true;
  int connections = 0;
};

struct ResolvedFigure {
  std::string surface;
  std::optional<std::string> person_id;
  std::string canonical_name;
  std::string matched_alias;
  std::set<std::string> sources;
  Method method = Method::kDirect;
  // Ranked: in-era candidates by connections, then id; then the rest.
  std::vector<Candidate> candidates;
  // Top of the ranking was a tie; the winner is the smallest id.
  bool ambiguous = false;
  // Every candidate failed the era filter, so it was dropped.
  bool era_filter_dropped = false;

  bool resolved() const { return person_id.has_value(); }
};

// Connection counts: candidate id -> events shared with confirmed figures.
using ConnectionCounts = std::map<std::string, int>;

struct ResolveContext {
  // Dynasty label the mention is expected to belong to.
  std::optional<std::string> era;
  // Connection counts for the candidates of an ambiguous alias; unset
  // counts every candidate as unconnected.
  std::function<ConnectionCounts(const std::vector<std::string> &)> connections;
};

// Ranks same-name candidates: filter to those alive in `era` (label match,
// or lifespan overlapping the dynasty's years), dropping the filter if it
// removes everyone, then order by connection count. Throws InvalidArgument
// on an empty candidate list or an unknown id.
ResolvedFigure DisambiguateSameName(const std::vector<std::string> &candidate_ids,
                                    const std::optional<std::string> &era,
                                    const ConnectionCounts &connections,
                                    const ReferenceDatabases &dbs);

// Exact alias lookup across person sources, then the name segments in
// order; the first string with any hit wins. Several ids under the winning
// alias go to DisambiguateSameName with the context (or no era and no
// connections). Unresolved results carry no candidates.
ResolvedFigure ResolvePerson(std::string_view surface, const ReferenceDatabases &dbs,
                             const ResolveContext &context = {});

// Overrides the winner with a listed candidate; method becomes manual.
// Throws InvalidArgument if the id is not among the candidates.
ResolvedFigure SelectCandidate(const ResolvedFigure &resolved,
                               const std::string &person_id,
                               const ReferenceDatabases &dbs);

struct ResolvedPlace {
  std::string surface;
  std::optional<std::string> place_id;
  std::string canonical_name;
  std::string matched_alias;
  std::set<std::string> sources;
  Method method = Method::kDirect;
  // Place ids sharing the winning alias, sorted; the first one wins.
  std::vector<std::string> candidates;
  bool ambiguous = false;

  bool resolved() const { return place_id.has_value(); }
};

ResolvedPlace ResolveLocation(std::string_view surface, const ReferenceDatabases &dbs);

// Figures attested on the handscroll itself: painter, sealers, authors.
std::set<std::string> ConfirmedFigures(const HandscrollRecord &handscroll,
                                       const ReferenceDatabases &dbs);

// Per candidate, the events it shares with any confirmed figure other
// than itself.
ConnectionCounts CountConnections(const std::vector<std::string> &candidate_ids,
                                  const std::set<std::string> &confirmed,
                                  const ReferenceDatabases &dbs);

// Per candidate, the number of events it takes part in.
ConnectionCounts EventDegree(const std::vector<std::string> &candidate_ids,
                             const ReferenceDatabases &dbs);

// Resolves a figure named on a handscroll: the era defaults to the
// handscroll's dynasty and connections count against its confirmed figures.
ResolvedFigure ResolvePersonOnHandscroll(std::string_view surface,
                                         const corpus::Corpus &corpus,
                                         const HandscrollRecord &handscroll,
                                         const std::optional<std::string> &era = {});

// One mention of an inscription and, for figures and locations, its
// resolution. Time and Thing mentions are kept raw.
struct MentionLink {
  std::string inscription_id;
  EntityMention mention;
  std::optional<ResolvedFigure> figure;
  std::optional<ResolvedPlace> place;
};
std::vector<MentionLink> LinkMentions(const corpus::Corpus &corpus,
                                      const HandscrollRecord &handscroll);

struct F1Score {
  double precision = 0;
  double recall = 0;
  double f1 = 0;
};
// Exact span-and-tag matching; each gold mention matches at most once.
F1Score EvaluateF1(const std::vector<EntityMention> &predicted,
                   const std::vector<EntityMention> &gold);

nlohmann::json ToJson(const Candidate &c);
nlohmann::json ToJson(const ResolvedFigure &r);
nlohmann::json ToJson(const ResolvedPlace &r);
nlohmann::json ToJson(const F1Score &s);

}  // namespace scrollbio::entity

#endif  // SCROLLBIO_ENTITY_RESOLVE_H_
