#ifndef SCROLLBIO_ENTITY_TAGGER_H_
#define SCROLLBIO_ENTITY_TAGGER_H_

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "scrollbio/corpus/model.h"
#include "scrollbio/util/error.h"

namespace scrollbio::entity {

// Any tagger: a text chunk in, mentions with code point offsets relative to
// the chunk out. Implementations must be safe to call concurrently when
// TagLongText runs with more than one thread.
using TaggerPort =
    std::function<std::vector<EntityMention>(std::string_view chunk)>;

// A tagger failed or returned spans outside its chunk. Offsets are code
// points into the full text.
class TaggerError : public Error {
 public:
  TaggerError(size_t chunk_start, size_t chunk_end, const std::string &what)
      : Error("tagger failed on chunk [" + std::to_string(chunk_start) + ", " +
              std::to_string(chunk_end) + "): " + what),
        chunk_start_(chunk_start),
        chunk_end_(chunk_end) {}
  size_t chunk_start() const { return chunk_start_; }
  size_t chunk_end() const { return chunk_end_; }

 private:
  size_t chunk_start_;
  size_t chunk_end_;
};

struct TagOptions {
  int window = 126;
  int stride = 63;
  // Concurrent tagger calls; 1 runs the chunks in order on this thread.
  int threads = 1;
};

// Tags text of any length by running the tagger over overlapping windows
// [i*stride, i*stride + window) and voting per character. A chunk that
// covers a character votes for its tag there, or for "none". Ties go to the
// chunk whose centre is nearest the character, then to the earlier chunk.
// Maximal runs of one tag become mentions; a run is split where the chunks
// backing it vote that a new mention begins. Throws InvalidArgument unless
// 0 < stride <= window, and TaggerError when a chunk fails.
std::vector<EntityMention> TagLongText(std::string_view text,
                                       const TaggerPort &tagger,
                                       const TagOptions &options = {});

// Dictionary tagger: longest exact match of any entry, scanning left to
// right. Matches are case-sensitive and never overlap.
class DictionaryTagger {
 public:
  struct Entry {
    std::string surface;
    EntityTag tag;
    double confidence = 0.9;
  };
  explicit DictionaryTagger(std::vector<Entry> entries);
  std::vector<EntityMention> operator()(std::string_view chunk) const;
  TaggerPort port() const;

 private:
  std::vector<Entry> entries_;
};

// Decodes a tagger response {mentions: [{start, end, tag, confidence}]}
// for a chunk of chunk_length code points; surfaces are filled from the
// chunk. Throws Error on malformed responses or out-of-range spans.
std::vector<EntityMention> ParseTaggerResponse(const nlohmann::json &response,
                                               std::string_view chunk);

// Tagger served over HTTP: POST {"text": chunk} to url (http://host:port/path).
TaggerPort HttpTagger(const std::string &url, int timeout_seconds = 30);

// Tagger run as a process per chunk: {"text": chunk} on stdin, the response
// JSON on stdout. The command goes through /bin/sh.
TaggerPort SubprocessTagger(const std::string &command);

}  // namespace scrollbio::entity

#endif  // SCROLLBIO_ENTITY_TAGGER_H_
