#ifndef SCROLLBIO_API_SESSION_H_
#define SCROLLBIO_API_SESSION_H_

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "scrollbio/biography/biography.h"
#include "scrollbio/corpus/corpus.h"
#include "scrollbio/layout/pipeline.h"
#include "scrollbio/similarity/lsh.h"
#include "scrollbio/similarity/theme.h"

namespace scrollbio::api {

struct SessionConfig {
  layout::LayoutConfig layout;
  biography::ScoringConfig scoring;
  similarity::LshParams lsh;
  // Biography versions persist here; empty keeps them in memory only.
  std::string state_dir;
  // Rendered rings are cached here; empty disables the disk cache.
  std::string cache_dir;
  int default_k = 10;
};

nlohmann::json ToJson(const SessionConfig &c);
// Reads {"layout":{..},"scoring":{..},"lsh":{"tables","bits","seed"},
// "state_dir","cache_dir","default_k"}. Missing keys keep defaults.
SessionConfig SessionConfigFromJson(const nlohmann::json &j);
SessionConfig LoadSessionConfig(const std::string &path);

// A customize request carried a version other than the current one.
class VersionConflict : public Error {
 public:
  VersionConflict(int expected, int current)
      : Error("biography version " + std::to_string(expected) + " is stale; current is " +
              std::to_string(current)),
        current_(current) {}
  int current() const { return current_; }

 private:
  int current_;
};

// Everything the service needs: the corpus, the indexes built over it, the
// biography version store and the configuration. Shared between the HTTP
// server and the batch command line. Reads are safe from any thread;
// biography writes are serialized per handscroll.
class Session {
 public:
  Session(corpus::CorpusHandle corpus, SessionConfig config);

  const corpus::Corpus &corpus() const { return *corpus_; }
  const SessionConfig &config() const { return config_; }
  // Stable hash of the layout configuration (hex).
  const std::string &layout_hash() const { return layout_hash_; }
  const similarity::LshIndex &gallery_index() const { return gallery_index_; }
  const similarity::LshIndex &painting_index() const { return painting_index_; }
  const similarity::ThemeIndex &theme_index() const { return theme_index_; }

  nlohmann::json Handscrolls() const;
  nlohmann::json Handscroll(const std::string &id) const;
  nlohmann::json Stats(const std::string &id) const;
  // Default target keeps the core at its natural width.
  int DefaultTarget(const std::string &id) const;
  nlohmann::json Layout(const std::string &id, std::optional<int> target) const;
  std::string RingPng(const std::string &id, std::optional<int> target) const;
  nlohmann::json Resolve(const nlohmann::json &request) const;
  nlohmann::json MatchSeal(const nlohmann::json &request) const;
  nlohmann::json Ego(const std::string &figure_id) const;
  nlohmann::json Cohort(const nlohmann::json &request) const;
  nlohmann::json Similar(const std::string &id, const std::string &mode,
                         std::optional<int> k) const;
  nlohmann::json Uncertain(const std::string &id) const;

  // Current version, or the requested one. Throws NotFound.
  biography::Biography GetBiography(const std::string &id,
                                    std::optional<int> version = std::nullopt) const;
  // {"version": n, "action": {...}}; the version must equal the current
  // one. Throws VersionConflict on a stale version.
  biography::Biography Customize(const std::string &id, const nlohmann::json &request);

 private:
  struct History {
    std::mutex mu;
    std::vector<biography::Biography> versions;
  };
  History &HistoryFor(const std::string &id) const;
  void Persist(const std::string &id, const std::vector<biography::Biography> &versions) const;
  std::shared_ptr<const layout::LayoutResult> LayoutResultFor(const std::string &id, int target) const;

  corpus::CorpusHandle corpus_;
  SessionConfig config_;
  std::string layout_hash_;
  similarity::LshIndex gallery_index_;
  similarity::LshIndex painting_index_;
  similarity::ThemeIndex theme_index_;

  mutable std::mutex histories_mu_;
  mutable std::map<std::string, std::unique_ptr<History>> histories_;
  mutable std::mutex layout_mu_;
  mutable std::map<std::pair<std::string, int>, std::shared_ptr<const layout::LayoutResult>> layouts_;
};

// Gallery and painting vectors in index order.
similarity::LshIndex::Entries GalleryEntries(const corpus::Corpus &corpus);
similarity::LshIndex::Entries PaintingEntries(const corpus::Corpus &corpus);

// Hex FNV-1a 64 of a string.
std::string StableHash(const std::string &s);

}  // namespace scrollbio::api

#endif  // SCROLLBIO_API_SESSION_H_
