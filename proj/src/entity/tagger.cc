#include "scrollbio/entity/tagger.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <optional>
#include <thread>

#include "scrollbio/util/utf8.h"

namespace scrollbio::entity {
namespace {

struct Chunk {
  size_t start = 0;
  size_t end = 0;
  std::vector<EntityMention> mentions;
};

std::vector<Chunk> MakeChunks(size_t length, size_t window, size_t stride) {
  std::vector<Chunk> chunks;
  for (size_t start = 0; start < length; start += stride) {
    chunks.push_back({start, std::min(length, start + window), {}});
    if (start + window >= length) break;
  }
  return chunks;
}

// Per chunk and character: the mention covering it, if any.
struct Cover {
  const EntityMention *mention = nullptr;
};

}  // namespace

std::vector<EntityMention> TagLongText(std::string_view text,
                                       const TaggerPort &tagger,
                                       const TagOptions &options) {
  if (options.stride <= 0 || options.stride > options.window) {
    throw InvalidArgument("need 0 < stride <= window");
  }
  const std::vector<std::string> chars = utf8::Characters(text);
  const size_t n = chars.size();
  std::vector<Chunk> chunks = MakeChunks(n, options.window, options.stride);

  auto run = [&](Chunk &c) {
    std::string sub;
    for (size_t i = c.start; i < c.end; ++i) sub += chars[i];
    try {
      c.mentions = tagger(sub);
    } catch (const std::exception &e) {
      throw TaggerError(c.start, c.end, e.what());
    }
    const size_t len = c.end - c.start;
    for (const auto &m : c.mentions) {
      if (!(m.start < m.end && m.end <= len)) {
        throw TaggerError(c.start, c.end,
                          "span [" + std::to_string(m.start) + ", " +
                              std::to_string(m.end) + ") outside the chunk");
      }
    }
  };
  const int threads = std::max(1, std::min<int>(options.threads, chunks.size()));
  if (threads == 1) {
    for (auto &c : chunks) run(c);
  } else {
    std::atomic<size_t> next{0};
    std::exception_ptr failure;
    size_t failed_at = chunks.size();
    std::mutex mu;
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (size_t i; (i = next++) < chunks.size();) {
          try {
            run(chunks[i]);
          } catch (...) {
            std::lock_guard<std::mutex> lock(mu);
            // Report the first failing chunk in text order.
            if (i < failed_at) {
              failed_at = i;
              failure = std::current_exception();
            }
          }
        }
      });
    }
    for (auto &th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
  }

  // Each chunk's view of every character it covers.
  std::vector<std::vector<Cover>> cover(chunks.size());
  for (size_t k = 0; k < chunks.size(); ++k) {
    cover[k].resize(chunks[k].end - chunks[k].start);
    for (const auto &m : chunks[k].mentions) {
      for (size_t i = m.start; i < m.end; ++i) {
        if (!cover[k][i].mention) cover[k][i].mention = &m;
      }
    }
  }

  // The voters at character i tagged `tag` (nullopt = none), in chunk order.
  std::vector<std::optional<EntityTag>> tag_at(n);
  std::vector<bool> begin_at(n, false);
  std::vector<double> conf_at(n, 0.0);
  for (size_t i = 0; i < n; ++i) {
    std::map<std::optional<EntityTag>, std::vector<size_t>> votes;
    for (size_t k = 0; k < chunks.size(); ++k) {
      if (i < chunks[k].start || i >= chunks[k].end) continue;
      const EntityMention *m = cover[k][i - chunks[k].start].mention;
      votes[m ? std::optional<EntityTag>(m->tag) : std::nullopt].push_back(k);
    }
    auto distance = [&](size_t k) {
      return std::abs((chunks[k].start + chunks[k].end) / 2.0 - (i + 0.5));
    };
    // Nearest-centre voter per option, for tie breaks.
    auto best_voter = [&](const std::vector<size_t> &ks) {
      size_t best = ks.front();
      for (size_t k : ks)
        if (distance(k) < distance(best)) best = k;
      return best;
    };
    const std::vector<size_t> *winner = nullptr;
    std::optional<EntityTag> winning_tag;
    for (const auto &[tag, ks] : votes) {
      bool better = !winner || ks.size() > winner->size();
      if (winner && ks.size() == winner->size()) {
        const size_t a = best_voter(ks), b = best_voter(*winner);
        better = distance(a) < distance(b) || (distance(a) == distance(b) && a < b);
      }
      if (better) {
        winner = &ks;
        winning_tag = tag;
      }
    }
    tag_at[i] = winning_tag;
    if (!winning_tag) continue;
    size_t begins = 0;
    double conf = 0, lo = 1, hi = 0;
    for (size_t k : *winner) {
      const EntityMention *m = cover[k][i - chunks[k].start].mention;
      conf += m->confidence;
      lo = std::min(lo, m->confidence);
      hi = std::max(hi, m->confidence);
      if (m->start == i - chunks[k].start) ++begins;
    }
    // Agreeing voters keep their exact confidence.
    conf_at[i] = lo == hi ? lo : conf / winner->size();
    const size_t rest = winner->size() - begins;
    if (begins != rest) {
      begin_at[i] = begins > rest;
    } else {
      const size_t k = best_voter(*winner);
      begin_at[i] = cover[k][i - chunks[k].start].mention->start == i - chunks[k].start;
    }
  }

  std::vector<EntityMention> out;
  for (size_t i = 0; i < n;) {
    if (!tag_at[i]) {
      ++i;
      continue;
    }
    size_t j = i + 1;
    while (j < n && tag_at[j] == tag_at[i] && !begin_at[j]) ++j;
    EntityMention m;
    m.start = i;
    m.end = j;
    m.tag = *tag_at[i];
    double conf = 0, lo = conf_at[i], hi = conf_at[i];
    for (size_t p = i; p < j; ++p) {
      m.surface += chars[p];
      conf += conf_at[p];
      lo = std::min(lo, conf_at[p]);
      hi = std::max(hi, conf_at[p]);
    }
    m.confidence = lo == hi ? lo : conf / (j - i);
    out.push_back(std::move(m));
    i = j;
  }
  return out;
}

DictionaryTagger::DictionaryTagger(std::vector<Entry> entries)
    : entries_(std::move(entries)) {
  // Longest first, so the first hit at a position is the longest one.
  std::stable_sort(entries_.begin(), entries_.end(), [](const Entry &a, const Entry &b) {
    return a.surface.size() > b.surface.size();
  });
  entries_.erase(std::remove_if(entries_.begin(), entries_.end(),
                                [](const Entry &e) { return e.surface.empty(); }),
                 entries_.end());
}

std::vector<EntityMention> DictionaryTagger::operator()(std::string_view chunk) const {
  std::vector<EntityMention> out;
  size_t cp = 0;
  for (size_t byte = 0; byte < chunk.size();) {
    const Entry *hit = nullptr;
    for (const auto &e : entries_) {
      if (chunk.substr(byte, e.surface.size()) == e.surface) {
        hit = &e;
        break;
      }
    }
    if (hit) {
      const size_t len = utf8::Length(hit->surface);
      out.push_back({cp, cp + len, hit->surface, hit->tag, hit->confidence});
      byte += hit->surface.size();
      cp += len;
    } else {
      byte += utf8::ByteOffset(chunk.substr(byte), 1);
      ++cp;
    }
  }
  return out;
}

TaggerPort DictionaryTagger::port() const {
  return [self = *this](std::string_view chunk) { return self(chunk); };
}

std::vector<EntityMention> ParseTaggerResponse(const nlohmann::json &response,
                                               std::string_view chunk) {
  if (!response.is_object() || !response.contains("mentions") ||
      !response["mentions"].is_array()) {
    throw Error("tagger response lacks a mentions array");
  }
  const size_t len = utf8::Length(chunk);
  std::vector<EntityMention> out;
  for (const auto &m : response["mentions"]) {
    try {
      EntityMention e;
      const long start = m.at("start").get<long>();
      const long end = m.at("end").get<long>();
      if (start < 0 || end <= start || static_cast<size_t>(end) > len) {
        throw Error("span [" + std::to_string(start) + ", " + std::to_string(end) +
                    ") outside the chunk");
      }
      e.start = static_cast<size_t>(start);
      e.end = static_cast<size_t>(end);
      e.tag = EntityTagFromString(m.at("tag").get<std::string>());
      e.confidence = m.value("confidence", 1.0);
      if (!(e.confidence >= 0 && e.confidence <= 1)) throw Error("confidence outside [0, 1]");
      e.surface = utf8::Substring(chunk, e.start, e.end);
      out.push_back(std::move(e));
    } catch (const nlohmann::json::exception &ex) {
      throw Error(std::string("malformed mention: ") + ex.what());
    }
  }
  std::sort(out.begin(), out.end(),
            [](const auto &a, const auto &b) { return a.start < b.start; });
  return out;
}

}  // namespace scrollbio::entity
