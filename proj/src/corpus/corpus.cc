#include "scrollbio/corpus/corpus.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>

#include "scrollbio/corpus/feature_file.h"
#include "scrollbio/corpus/json_codec.h"
#include "scrollbio/util/error.h"

namespace scrollbio::corpus {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char *kFormat = "scrollbio-corpus/1";

// Reads newline-delimited JSON, handing each record to `fn`. Errors raised
// by fn are re-raised with the file name filled in.
template <typename Fn>
void ReadNdjson(const fs::path &path, Fn fn) {
  const std::string name = path.filename().string();
  if (!fs::exists(path)) return;
  std::ifstream in(path);
  if (!in) throw LoadError(name, "", "", "cannot open");
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error &e) {
      throw LoadError(name, "line " + std::to_string(line_no), "", e.what());
    }
    try {
      fn(j);
    } catch (const LoadError &e) {
      if (!e.file().empty() || !e.dangling().empty()) throw;
      std::string record = e.record().empty()
                               ? "line " + std::to_string(line_no)
                               : e.record();
      throw LoadError(name, record, e.field(), e.message());
    }
  }
}

[[noreturn]] void Fail(const char *file, const std::string &record,
                       const std::string &field, const std::string &msg) {
  throw LoadError(file, record, field, msg);
}

// Resolves a date expression against the era table, filling the year when
// the record lacks one. Unknown eras are reported as dangling references.
void ResolveDate(const std::optional<std::string> &expression,
                 std::optional<int> &year, const ReferenceDatabases &dbs,
                 const std::optional<std::string> &dynasty,
                 const std::string &record, const std::string &field,
                 std::vector<std::string> &dangling) {
  if (!expression) return;
  // The figure's dynasty disambiguates homonymous eras; a figure living
  // across a dynastic change may still date by the other dynasty's eras.
  std::vector<std::optional<std::string>> hints = {dynasty};
  if (dynasty) hints.push_back(std::nullopt);
  chrono::DateResolution res;
  for (size_t i = 0; i < hints.size(); ++i) {
    try {
      res = chrono::ParseEraDate(*expression, dbs.eras, hints[i]);
      break;
    } catch (const chrono::UnknownEra &) {
      if (i + 1 == hints.size()) {
        dangling.push_back("era:" + *expression);
        return;
      }
    } catch (const Error &e) {
      Fail(files::kHandscrolls, record, field, e.what());
    }
  }
  if (!year) {
    year = res.year;
  } else if (std::find(res.alternatives.begin(), res.alternatives.end(),
                       *year) == res.alternatives.end()) {
    Fail(files::kHandscrolls, record, field,
         "timestamp_year " + std::to_string(*year) +
             " disagrees with date_expression '" + *expression + "'");
  }
}

void Validate(std::map<std::string, HandscrollRecord> &handscrolls,
              ReferenceDatabases &dbs) {
  auto check_dynasty = [&](const std::optional<std::string> &label,
                           const char *file, const std::string &record) {
    if (label && !dbs.FindDynasty(*label)) {
      Fail(file, record, "dynasty", "label '" + *label +
                                        "' is not in the dynasty enumeration");
    }
  };
  for (const auto &[id, p] : dbs.persons) {
    check_dynasty(p.dynasty, files::kPersons, id);
  }
  for (const auto &e : dbs.eras.entries()) {
    check_dynasty(e.dynasty, files::kEras, e.era_name);
  }
  for (const auto &[id, h] : handscrolls) {
    check_dynasty(h.dynasty, files::kHandscrolls, id);
  }

  std::set<std::string> dangling;
  auto person_ref = [&](const std::optional<std::string> &id) {
    if (id && !dbs.persons.count(*id)) dangling.insert(*id);
  };
  for (const auto &[id, g] : dbs.seal_gallery) {
    person_ref(g.sealer_id);
    if (dbs.gallery_dim && g.feature.dim() != dbs.gallery_dim) {
      Fail(files::kSealGallery, id, "feature_row", "feature dimension mismatch");
    }
  }
  for (const auto &e : dbs.events) {
    for (const auto &p : e.participants) person_ref(p);
  }

  // Dates are read in the dynasty of the figure who left the mark.
  auto dynasty_of = [&](const std::optional<std::string> &person) {
    std::optional<std::string> d;
    if (person) {
      auto it = dbs.persons.find(*person);
      if (it != dbs.persons.end()) d = it->second.dynasty;
    }
    return d;
  };
  std::vector<std::string> era_dangling;
  for (auto &[id, h] : handscrolls) {
    person_ref(h.painter_id);
    for (size_t i = 0; i < h.seals.size(); ++i) {
      auto &s = h.seals[i];
      const std::string field = "seals[" + std::to_string(i) + "]";
      person_ref(s.sealer_id);
      if (s.matched_seal_id && !dbs.seal_gallery.count(*s.matched_seal_id)) {
        dangling.insert(*s.matched_seal_id);
      }
      if (dbs.gallery_dim && s.feature.dim() != dbs.gallery_dim) {
        Fail(files::kHandscrolls, id, field + ".feature_row",
             "seal feature has dimension " + std::to_string(s.feature.dim()) +
                 ", gallery declares " + std::to_string(dbs.gallery_dim));
      }
      ResolveDate(s.date_expression, s.timestamp_year, dbs,
                  dynasty_of(SealerOf(s, dbs)), id,
                  field + ".date_expression", era_dangling);
    }
    for (auto &ins : h.inscriptions) {
      person_ref(ins.author_id);
      ResolveDate(ins.date_expression, ins.timestamp_year, dbs,
                  dynasty_of(ins.author_id), id,
                  "inscriptions." + ins.id + ".date_expression", era_dangling);
    }
  }
  dangling.insert(era_dangling.begin(), era_dangling.end());
  if (!dangling.empty()) {
    throw LoadError(std::vector<std::string>(dangling.begin(), dangling.end()),
                    "dangling references");
  }
  dbs.BuildIndexes();
}

std::vector<std::string> &Unique(std::vector<std::string> &v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

void WriteLines(const fs::path &path, const std::vector<json> &records) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  for (const auto &r : records) out << Canonical(r) << '\n';
}

}  // namespace

Corpus::Corpus(std::map<std::string, HandscrollRecord> handscrolls,
               ReferenceDatabases dbs)
    : handscrolls_(std::move(handscrolls)), dbs_(std::move(dbs)) {
  for (const auto &[id, h] : handscrolls_) {
    std::vector<std::string> marks;
    for (const auto &s : h.seals) {
      if (auto sealer = SealerOf(s, dbs_)) {
        ++corpus_seal_counts_[*sealer];
        marks.push_back(*sealer);
      }
    }
    for (const auto &ins : h.inscriptions) {
      if (ins.author_id) marks.push_back(*ins.author_id);
    }
    if (h.painter_id) {
      paintings_by_[*h.painter_id].push_back(id);
      for (const auto &m : marks) {
        if (m != *h.painter_id) ++appreciations_[*h.painter_id];
      }
    }
    for (const auto &m : marks) marked_by_[m].push_back(id);
  }
  for (auto &[p, list] : marked_by_) Unique(list);
}

const HandscrollRecord &Corpus::handscroll(const std::string &id) const {
  auto it = handscrolls_.find(id);
  if (it == handscrolls_.end()) throw NotFound("handscroll", id);
  return it->second;
}

const PersonRecord &Corpus::person(const std::string &id) const {
  const PersonRecord *p = dbs_.FindPerson(id);
  if (!p) throw NotFound("person", id);
  return *p;
}

int Corpus::CorpusSealCount(const std::string &person_id) const {
  auto it = corpus_seal_counts_.find(person_id);
  return it == corpus_seal_counts_.end() ? 0 : it->second;
}

const std::vector<std::string> &Corpus::PaintingsBy(
    const std::string &person_id) const {
  static const std::vector<std::string> none;
  auto it = paintings_by_.find(person_id);
  return it == paintings_by_.end() ? none : it->second;
}

const std::vector<std::string> &Corpus::PaintingsMarkedBy(
    const std::string &person_id) const {
  static const std::vector<std::string> none;
  auto it = marked_by_.find(person_id);
  return it == marked_by_.end() ? none : it->second;
}

int Corpus::AppreciationsReceived(const std::string &person_id) const {
  auto it = appreciations_.find(person_id);
  return it == appreciations_.end() ? 0 : it->second;
}

CorpusHandle MakeCorpus(std::map<std::string, HandscrollRecord> handscrolls,
                        ReferenceDatabases dbs) {
  Validate(handscrolls, dbs);
  return std::make_shared<const Corpus>(std::move(handscrolls), std::move(dbs));
}

CorpusHandle LoadCorpus(const std::string &dir) {
  const fs::path root(dir);
  if (!fs::is_directory(root)) {
    throw LoadError(dir, "", "", "corpus directory does not exist");
  }
  ReferenceDatabases dbs;

  const fs::path manifest = root / files::kManifest;
  if (fs::exists(manifest)) {
    std::ifstream in(manifest);
    json m;
    try {
      m = json::parse(in);
    } catch (const json::parse_error &e) {
      throw LoadError(files::kManifest, "", "", e.what());
    }
    if (!m.is_object()) throw LoadError(files::kManifest, "", "", "expected an object");
    if (m.contains("format") && m["format"] != kFormat) {
      throw LoadError(files::kManifest, "", "format",
                      "unsupported format " + m["format"].dump());
    }
    if (m.contains("dynasties")) {
      if (!m["dynasties"].is_array()) {
        throw LoadError(files::kManifest, "", "dynasties", "expected an array");
      }
      for (const auto &d : m["dynasties"]) {
        try {
          dbs.dynasties.push_back(DynastyFromJson(d));
        } catch (const LoadError &e) {
          throw LoadError(files::kManifest, "", "dynasties." + e.field(),
                          "bad dynasty entry");
        }
      }
    }
  }

  auto load_features = [&](const char *name) {
    const fs::path p = root / name;
    return fs::exists(p) ? ReadFeatureFile(p.string()) : FeatureMatrix{};
  };
  const FeatureMatrix seal_features = load_features(files::kSealFeatures);
  const FeatureMatrix gallery_features = load_features(files::kGalleryFeatures);
  const FeatureMatrix painting_features = load_features(files::kPaintingFeatures);
  dbs.gallery_dim = gallery_features.dim;

  auto row_of = [](const FeatureMatrix &m, int row, const char *file,
                   const std::string &record, const std::string &field) {
    if (row < 0 || static_cast<size_t>(row) >= m.rows.size()) {
      Fail(file, record, field,
           "feature row " + std::to_string(row) + " out of range (" +
               std::to_string(m.rows.size()) + " rows)");
    }
    return m.rows[row];
  };

  ReadNdjson(root / files::kPersons, [&](const json &j) {
    PersonRecord p = PersonFromJson(j);
    if (dbs.persons.count(p.id)) Fail("", p.id, "id", "duplicate person id");
    dbs.persons.emplace(p.id, std::move(p));
  });
  ReadNdjson(root / files::kPlaces, [&](const json &j) {
    PlaceRecord p = PlaceFromJson(j);
    if (dbs.places.count(p.id)) Fail("", p.id, "id", "duplicate place id");
    dbs.places.emplace(p.id, std::move(p));
  });
  std::vector<chrono::EraEntry> eras;
  ReadNdjson(root / files::kEras,
             [&](const json &j) { eras.push_back(EraFromJson(j)); });
  try {
    dbs.eras = chrono::EraTable(std::move(eras));
  } catch (const InvalidArgument &e) {
    throw LoadError(files::kEras, "", "era_name", e.what());
  }
  std::set<std::string> event_ids;
  ReadNdjson(root / files::kEvents, [&](const json &j) {
    EventRecord e = EventFromJson(j);
    if (!event_ids.insert(e.id).second) Fail("", e.id, "id", "duplicate event id");
    dbs.events.push_back(std::move(e));
  });
  ReadNdjson(root / files::kSealGallery, [&](const json &j) {
    int row = -1;
    SealGalleryEntry g = GalleryFromJson(j, &row);
    if (dbs.seal_gallery.count(g.id)) Fail("", g.id, "id", "duplicate seal id");
    g.feature = row_of(gallery_features, row, files::kSealGallery, g.id,
                       "feature_row");
    dbs.seal_gallery.emplace(g.id, std::move(g));
  });

  std::map<std::string, HandscrollRecord> handscrolls;
  ReadNdjson(root / files::kHandscrolls, [&](const json &j) {
    std::vector<int> seal_rows;
    int painting_row = -1;
    HandscrollRecord h = HandscrollFromJson(j, &seal_rows, &painting_row);
    if (handscrolls.count(h.id)) Fail("", h.id, "id", "duplicate handscroll id");
    for (size_t i = 0; i < h.seals.size(); ++i) {
      h.seals[i].feature =
          row_of(seal_features, seal_rows[i], files::kHandscrolls, h.id,
                 "seals[" + std::to_string(i) + "].feature_row");
    }
    if (painting_row >= 0) {
      h.painting_feature = row_of(painting_features, painting_row,
                                  files::kHandscrolls, h.id,
                                  "painting_feature_row");
    }
    handscrolls.emplace(h.id, std::move(h));
  });

  Validate(handscrolls, dbs);
  auto corpus = std::make_shared<Corpus>(std::move(handscrolls), std::move(dbs));
  corpus->set_root(fs::absolute(root).string());
  return corpus;
}

void SaveCorpus(const Corpus &corpus, const std::string &dir) {
  const fs::path root(dir);
  fs::create_directories(root);
  const ReferenceDatabases &dbs = corpus.dbs();

  json manifest = {{"format", kFormat}};
  json dynasties = json::array();
  for (const auto &d : dbs.dynasties) dynasties.push_back(ToJson(d));
  manifest["dynasties"] = std::move(dynasties);
  {
    std::ofstream out(root / files::kManifest, std::ios::trunc);
    out << Canonical(manifest) << '\n';
  }

  std::vector<json> lines;
  for (const auto &[id, p] : dbs.persons) lines.push_back(ToJson(p));
  WriteLines(root / files::kPersons, lines);

  lines.clear();
  for (const auto &[id, p] : dbs.places) lines.push_back(ToJson(p));
  WriteLines(root / files::kPlaces, lines);

  std::vector<chrono::EraEntry> eras = dbs.eras.entries();
  std::sort(eras.begin(), eras.end(), [](const auto &a, const auto &b) {
    return std::tie(a.era_name, a.dynasty) < std::tie(b.era_name, b.dynasty);
  });
  lines.clear();
  for (const auto &e : eras) lines.push_back(ToJson(e));
  WriteLines(root / files::kEras, lines);

  std::vector<EventRecord> events = dbs.events;
  std::sort(events.begin(), events.end(),
            [](const auto &a, const auto &b) { return a.id < b.id; });
  lines.clear();
  for (const auto &e : events) lines.push_back(ToJson(e));
  WriteLines(root / files::kEvents, lines);

  FeatureMatrix gallery{dbs.gallery_dim, {}};
  lines.clear();
  for (const auto &[id, g] : dbs.seal_gallery) {
    if (gallery.dim == 0) gallery.dim = static_cast<uint32_t>(g.feature.dim());
    lines.push_back(ToJson(g, static_cast<int>(gallery.rows.size())));
    gallery.rows.push_back(g.feature);
  }
  WriteLines(root / files::kSealGallery, lines);
  WriteFeatureFile((root / files::kGalleryFeatures).string(), gallery);

  FeatureMatrix seals{dbs.gallery_dim, {}};
  FeatureMatrix paintings{0, {}};
  lines.clear();
  for (const auto &[id, h] : corpus.handscrolls()) {
    int painting_row = -1;
    if (h.painting_feature) {
      if (paintings.dim == 0) {
        paintings.dim = static_cast<uint32_t>(h.painting_feature->dim());
      }
      painting_row = static_cast<int>(paintings.rows.size());
      paintings.rows.push_back(*h.painting_feature);
    }
    lines.push_back(ToJson(h, static_cast<int>(seals.rows.size()), painting_row));
    for (const auto &s : h.seals) {
      if (seals.dim == 0) seals.dim = static_cast<uint32_t>(s.feature.dim());
      seals.rows.push_back(s.feature);
    }
  }
  WriteLines(root / files::kHandscrolls, lines);
  WriteFeatureFile((root / files::kSealFeatures).string(), seals);
  WriteFeatureFile((root / files::kPaintingFeatures).string(), paintings);
}

ElementStats AggregateElementStats(const Corpus &corpus,
                                   const std::string &handscroll_id) {
  const HandscrollRecord &h = corpus.handscroll(handscroll_id);
  const ReferenceDatabases &dbs = corpus.dbs();
  ElementStats stats;
  stats.handscroll_id = h.id;

  std::map<std::string, SealerStats> by_sealer;
  for (const auto &s : h.seals) {
    auto sealer = SealerOf(s, dbs);
    if (!sealer) {
      ++stats.unmatched_seals;
      continue;
    }
    ++stats.matched_seals;
    ++by_sealer[*sealer].seals_on_handscroll;
  }
  for (const auto &ins : h.inscriptions) {
    if (ins.author_id && by_sealer.count(*ins.author_id)) {
      ++by_sealer[*ins.author_id].inscriptions_on_handscroll;
    }
    for (const auto &m : ins.mentions) ++stats.word_frequencies[m.tag][m.surface];
  }
  for (auto &[id, s] : by_sealer) {
    s.sealer_id = id;
    s.seals_in_corpus = corpus.CorpusSealCount(id);
    if (const PersonRecord *p = dbs.FindPerson(id)) s.dynasty = p->dynasty;
    stats.sealers.push_back(s);
  }
  auto order = [&](const SealerStats &s) {
    return s.dynasty ? dbs.DynastyOrder(*s.dynasty) : std::string::npos;
  };
  std::sort(stats.sealers.begin(), stats.sealers.end(),
            [&](const SealerStats &a, const SealerStats &b) {
              if (order(a) != order(b)) return order(a) < order(b);
              if (a.seals_on_handscroll != b.seals_on_handscroll) {
                return a.seals_on_handscroll > b.seals_on_handscroll;
              }
              return a.sealer_id < b.sealer_id;
            });
  return stats;
}

}  // namespace scrollbio::corpus
