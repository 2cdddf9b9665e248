#ifndef SCROLLBIO_CORPUS_CORPUS_H_
#define SCROLLBIO_CORPUS_CORPUS_H_

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "scrollbio/corpus/model.h"

namespace scrollbio::corpus {

// File names inside a corpus directory. Every file is optional; a missing
// file is an empty store.
namespace files {
inline constexpr const char *kManifest = "manifest.json";
inline constexpr const char *kHandscrolls = "handscrolls.ndjson";
inline constexpr const char *kPersons = "persons.ndjson";
inline constexpr const char *kPlaces = "places.ndjson";
inline constexpr const char *kEras = "eras.ndjson";
inline constexpr const char *kEvents = "events.ndjson";
inline constexpr const char *kSealGallery = "seal_gallery.ndjson";
inline constexpr const char *kSealFeatures = "seal_features.sfv";
inline constexpr const char *kGalleryFeatures = "gallery_features.sfv";
inline constexpr const char *kPaintingFeatures = "painting_features.sfv";
}  // namespace files

class Corpus {
 public:
  Corpus(std::map<std::string, HandscrollRecord> handscrolls,
         ReferenceDatabases dbs);

  const std::map<std::string, HandscrollRecord> &handscrolls() const {
    return handscrolls_;
  }
  const ReferenceDatabases &dbs() const { return dbs_; }

  // Throws NotFound.
  const HandscrollRecord &handscroll(const std::string &id) const;
  const PersonRecord &person(const std::string &id) const;

  // Seals matched to the figure across every handscroll.
  int CorpusSealCount(const std::string &person_id) const;
  // Handscroll ids painted by the figure.
  const std::vector<std::string> &PaintingsBy(const std::string &person_id) const;
  // Handscroll ids on which the figure left a seal or an inscription.
  const std::vector<std::string> &PaintingsMarkedBy(
      const std::string &person_id) const;

  // Marks by others on paintings by the figure (seals + inscriptions).
  int AppreciationsReceived(const std::string &person_id) const;

  // Directory the corpus was loaded from; image refs resolve against it.
  const std::string &root() const { return root_; }
  void set_root(std::string root) { root_ = std::move(root); }

 private:
  std::map<std::string, HandscrollRecord> handscrolls_;
  ReferenceDatabases dbs_;
  std::map<std::string, int> corpus_seal_counts_;
  std::map<std::string, std::vector<std::string>> paintings_by_;
  std::map<std::string, std::vector<std::string>> marked_by_;
  std::map<std::string, int> appreciations_;
  std::string root_;
};

using CorpusHandle = std::shared_ptr<const Corpus>;

// Loads and validates a corpus directory. Throws LoadError on schema
// violations (naming file, record and field) or on dangling references
// (listing every dangling id).
CorpusHandle LoadCorpus(const std::string &dir);

// Validates an in-memory corpus the same way LoadCorpus does.
CorpusHandle MakeCorpus(std::map<std::string, HandscrollRecord> handscrolls,
                        ReferenceDatabases dbs);

// Writes canonical files: records sorted by id, keys sorted, absent
// optionals omitted, feature rows renumbered in record order.
void SaveCorpus(const Corpus &corpus, const std::string &dir);

struct SealerStats {
  std::string sealer_id;
  std::optional<std::string> dynasty;
  int seals_on_handscroll = 0;
  int seals_in_corpus = 0;
  int inscriptions_on_handscroll = 0;
};

// Word-cloud data for one handscroll.
struct ElementStats {
  std::string handscroll_id;
  // Grouped by dynasty (enumeration order, unknown last), then by
  // descending count and id.
  std::vector<SealerStats> sealers;
  int matched_seals = 0;
  int unmatched_seals = 0;
  std::map<EntityTag, std::map<std::string, int>> word_frequencies;
};

// Throws NotFound for an unknown handscroll.
ElementStats AggregateElementStats(const Corpus &corpus,
                                   const std::string &handscroll_id);

}  // namespace scrollbio::corpus

#endif  // SCROLLBIO_CORPUS_CORPUS_H_
