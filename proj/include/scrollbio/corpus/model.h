#ifndef SCROLLBIO_CORPUS_MODEL_H_
#define SCROLLBIO_CORPUS_MODEL_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scrollbio/chrono/era_date.h"
#include "scrollbio/util/feature_vector.h"

namespace scrollbio {

// Source labels of the reference stores. Ids carry the same label as a
// prefix, e.g. "cbdb:3076".
namespace source {
inline constexpr std::string_view kCbdb = "cbdb";
inline constexpr std::string_view kPerad = "perad";
inline constexpr std::string_view kPlaad = "plaad";
inline constexpr std::string_view kChgis = "chgis";
inline constexpr std::string_view kTad = "tad";
}  // namespace source

struct PixelRect {
  int x = 0;
  int y = 0;
  int w = 0;
  int h = 0;

  bool operator==(const PixelRect &) const = default;
};

enum class EntityTag { kTime, kLocation, kFigure, kThing };

std::string_view ToString(EntityTag tag);
// Throws InvalidArgument on an unknown name.
EntityTag EntityTagFromString(std::string_view name);

// A tagged span of an inscription. Offsets count Unicode code points.
struct EntityMention {
  size_t start = 0;
  size_t end = 0;
  std::string surface;
  EntityTag tag = EntityTag::kThing;
  double confidence = 1.0;

  bool operator==(const EntityMention &) const = default;
};

// Horizontal region classes of a handscroll strip, annotated upstream.
enum class BlockKind { kCore, kText, kSilk, kOther, kPadding };

std::string_view ToString(BlockKind kind);
BlockKind BlockKindFromString(std::string_view name);

struct RegionAnnotation {
  int x = 0;
  int w = 0;
  BlockKind kind = BlockKind::kOther;
};

struct SealAnnotation {
  PixelRect box;
  std::optional<std::string> matched_seal_id;
  std::optional<std::string> sealer_id;
  FeatureVector feature;
  std::optional<int> timestamp_year;
  std::optional<std::string> date_expression;
};

struct InscriptionRecord {
  std::string id;
  std::optional<std::string> author_id;
  std::string text;
  std::vector<EntityMention> mentions;
  std::optional<int> timestamp_year;
  std::optional<std::string> date_expression;
};

struct HandscrollRecord {
  std::string id;
  std::string title;
  std::optional<std::string> painter_id;
  std::string image_ref;
  int image_width = 0;
  int image_height = 0;
  PixelRect core_region;
  std::vector<RegionAnnotation> regions;
  std::vector<SealAnnotation> seals;
  std::vector<InscriptionRecord> inscriptions;
  std::optional<FeatureVector> painting_feature;
  std::string theme_text;
  std::optional<int> creation_year;
  std::optional<std::string> dynasty;
};

enum class Identity { kCollector, kLiterati, kOfficial };

std::string_view ToString(Identity identity);
Identity IdentityFromString(std::string_view name);

struct IdentityHolding {
  Identity kind = Identity::kCollector;
  // Official position value 0..20; ignored for other identities.
  int rank = 0;
};

// How strongly a figure represents a painting school.
enum class SchoolRole { kNone, kRepresentative, kPioneer };

std::string_view ToString(SchoolRole role);
SchoolRole SchoolRoleFromString(std::string_view name);

struct PersonRecord {
  std::string id;
  std::string name;
  // Names and aliases keyed by the source store that lists them.
  std::map<std::string, std::vector<std::string>> names;
  std::optional<int> birth_year;
  std::optional<int> death_year;
  std::vector<IdentityHolding> identities;
  std::optional<std::string> dynasty;
  SchoolRole school_role = SchoolRole::kNone;
  int literature_mentions = 0;
};

struct PlaceRecord {
  std::string id;
  std::string name;
  std::map<std::string, std::vector<std::string>> names;
  std::string description;
};

struct EventRecord {
  std::string id;
  std::vector<std::string> participants;
  std::string type;
  std::optional<int> year;
  std::string description;
  std::string source;
};

struct SealGalleryEntry {
  std::string id;
  std::string sealer_id;
  std::string content;
  FeatureVector feature;
};

struct DynastyInfo {
  std::string name;
  std::optional<int> start_year;
  std::optional<int> end_year;
};

// An alias string resolved to one person or place in one source.
struct AliasHit {
  std::string id;
  std::string source;

  bool operator==(const AliasHit &) const = default;
};

// Five source-tagged reference stores behind one interface.
struct ReferenceDatabases {
  std::vector<DynastyInfo> dynasties;
  std::map<std::string, PersonRecord> persons;
  std::map<std::string, PlaceRecord> places;
  chrono::EraTable eras;
  std::vector<EventRecord> events;
  std::map<std::string, SealGalleryEntry> seal_gallery;
  uint32_t gallery_dim = 0;

  // Normalized alias -> hits, built by BuildIndexes().
  std::map<std::string, std::vector<AliasHit>> person_aliases;
  std::map<std::string, std::vector<AliasHit>> place_aliases;
  // Person id -> indexes into `events`.
  std::map<std::string, std::vector<size_t>> events_by_person;

  void BuildIndexes();

  const PersonRecord *FindPerson(std::string_view id) const;
  const DynastyInfo *FindDynasty(std::string_view name) const;
  // Position of the dynasty in the configured enumeration, or npos.
  size_t DynastyOrder(std::string_view name) const;
  // Alias hits for a lookup string (normalized internally).
  const std::vector<AliasHit> &PersonHits(std::string_view alias) const;
  const std::vector<AliasHit> &PlaceHits(std::string_view alias) const;
};

// Sealer of a seal annotation: the annotated sealer or, failing that, the
// sealer of the matched gallery seal.
std::optional<std::string> SealerOf(const SealAnnotation &seal,
                                    const ReferenceDatabases &dbs);

}  // namespace scrollbio

#endif  // SCROLLBIO_CORPUS_MODEL_H_
