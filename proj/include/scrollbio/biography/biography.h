#ifndef SCROLLBIO_BIOGRAPHY_BIOGRAPHY_H_
#define SCROLLBIO_BIOGRAPHY_BIOGRAPHY_H_

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "scrollbio/biography/importance.h"
#include "scrollbio/corpus/corpus.h"

namespace scrollbio::biography {

enum class EntryKind { kPainter, kCollectorAppreciator, kHistorianAdded };

std::string_view ToString(EntryKind kind);

struct YearCount {
  int year = 0;
  int count = 0;
  bool operator==(const YearCount &) const = default;
};

struct DatedInscription {
  int year = 0;
  int char_count = 0;
  std::string inscription_id;
  bool operator==(const DatedInscription &) const = default;
};

struct BiographyEntry {
  std::string figure_id;
  std::string name;
  EntryKind kind = EntryKind::kCollectorAppreciator;
  std::optional<std::string> dynasty;
  std::optional<int> birth;
  std::optional<int> death;
  std::vector<YearCount> dated_seals;
  int undated_seals = 0;
  std::vector<DatedInscription> dated_inscriptions;
  int undated_inscriptions = 0;
  Score score;
  int rank_tier = 0;
  std::optional<int> manual_tier;
  // Dated marks outside the known lifespan.
  std::vector<std::string> flags;
  std::string audit_note;

  int total_seals() const;
  int total_inscriptions() const;
  std::optional<int> first_activity() const;
  bool operator==(const BiographyEntry &) const = default;
};

struct SharedEvent {
  std::string event_id;
  // Lexicographically ordered pair.
  std::string a, b;
  std::string type;
  std::optional<int> year;
  bool operator==(const SharedEvent &) const = default;
};

struct PairLink {
  std::string a, b;
  int thickness = 0;
  bool operator==(const PairLink &) const = default;
};

// A figure named in an inscription, resolved or not, that may be worth
// adding.
struct MentionedFigure {
  std::string inscription_id;
  std::string surface;
  std::optional<std::string> figure_id;
  std::string method;
  bool ambiguous = false;
  bool present = false;
  bool operator==(const MentionedFigure &) const = default;
};

// Historian edits, replayed on top of the automatic figure set.
struct Customizations {
  // Added figure -> audit note.
  std::map<std::string, std::string> added;
  std::set<std::string> removed;
  std::optional<Lambda> lambda;
  std::map<std::string, int> manual_tiers;
  // Mention surface -> chosen person id.
  std::map<std::string, std::string> selections;
  bool operator==(const Customizations &) const = default;
};

struct AuditRecord {
  int version = 0;
  nlohmann::json action;
  bool operator==(const AuditRecord &) const = default;
};

struct Biography {
  std::string handscroll_id;
  int version = 1;
  Lambda lambda;
  // Sorted by birth; unknown births last by first dated activity, then id.
  std::vector<BiographyEntry> entries;
  std::vector<SharedEvent> shared_events;
  std::map<std::string, int> event_histogram;
  std::vector<PairLink> pair_links;
  std::vector<MentionedFigure> mentioned_figures;
  Customizations customizations;
  std::vector<AuditRecord> audit_log;

  const BiographyEntry *Find(const std::string &figure_id) const;
};

// Painter and every figure who left a seal or inscription on the handscroll.
// Throws NotFound for an unknown handscroll.
Biography AssembleBiography(const corpus::Corpus &corpus, const std::string &handscroll_id,
                            const ScoringConfig &config);
// Same, with historian edits applied. Throws NotFound for an unknown figure.
Biography AssembleBiography(const corpus::Corpus &corpus, const std::string &handscroll_id,
                            const ScoringConfig &config, const Customizations &edits);

// A rejected customize action (removing the painter, duplicate add, ...).
class CustomizeError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// Applies one action and returns the next version. Actions:
//   {"action":"add_figure","figure_id":..,"note":..}
//   {"action":"remove_figure","figure_id":..}
//   {"action":"set_lambda","lambda":[l1,l2,l3]}
//   {"action":"set_manual_tier","figure_id":..,"tier":n|null}
//   {"action":"select_candidate","surface":..,"figure_id":..}
// Throws NotFound for unknown figures, CustomizeError for refused actions
// and InvalidArgument for malformed ones.
Biography Customize(const corpus::Corpus &corpus, const Biography &current,
                    const nlohmann::json &action, const ScoringConfig &config);

nlohmann::json ToJson(const BiographyEntry &e);
nlohmann::json ToJson(const Biography &b);
// Serialized form without version and audit log.
nlohmann::json ContentJson(const Biography &b);
// Rebuilds a stored biography: the customizations are replayed against the
// corpus, version and audit log are taken as stored.
Biography BiographyFromJson(const corpus::Corpus &corpus, const nlohmann::json &j,
                            const ScoringConfig &config);

}  // namespace scrollbio::biography

#endif  // SCROLLBIO_BIOGRAPHY_BIOGRAPHY_H_
