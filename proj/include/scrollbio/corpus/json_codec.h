#ifndef SCROLLBIO_CORPUS_JSON_CODEC_H_
#define SCROLLBIO_CORPUS_JSON_CODEC_H_

#include <string>

#include "json.hpp"
#include "scrollbio/corpus/corpus.h"
#include "scrollbio/corpus/model.h"

namespace scrollbio::corpus {

// Record <-> JSON. Decoders throw LoadError naming the record id and field;
// the caller fills in the file name. Feature vectors are not part of the
// JSON: records carry a "feature_row" index into the matching .sfv file,
// which the *_row out-parameters report.
nlohmann::json ToJson(const PixelRect &r);
nlohmann::json ToJson(const EntityMention &m);
nlohmann::json ToJson(const PersonRecord &p);
nlohmann::json ToJson(const PlaceRecord &p);
nlohmann::json ToJson(const EventRecord &e);
nlohmann::json ToJson(const chrono::EraEntry &e);
nlohmann::json ToJson(const DynastyInfo &d);
nlohmann::json ToJson(const SealGalleryEntry &g, int feature_row);
// seal_row_base: feature row of the first seal; painting_row: -1 if none.
nlohmann::json ToJson(const HandscrollRecord &h, int seal_row_base,
                      int painting_row);
nlohmann::json ToJson(const ElementStats &stats);

EntityMention MentionFromJson(const nlohmann::json &j, const std::string &record);
PersonRecord PersonFromJson(const nlohmann::json &j);
PlaceRecord PlaceFromJson(const nlohmann::json &j);
EventRecord EventFromJson(const nlohmann::json &j);
chrono::EraEntry EraFromJson(const nlohmann::json &j);
DynastyInfo DynastyFromJson(const nlohmann::json &j);
SealGalleryEntry GalleryFromJson(const nlohmann::json &j, int *feature_row);
// seal_rows receives one feature row per seal; painting_row is -1 if absent.
HandscrollRecord HandscrollFromJson(const nlohmann::json &j,
                                    std::vector<int> *seal_rows,
                                    int *painting_row);

// Canonical single-line serialization used for every file and response.
std::string Canonical(const nlohmann::json &j);

}  // namespace scrollbio::corpus

#endif  // SCROLLBIO_CORPUS_JSON_CODEC_H_
