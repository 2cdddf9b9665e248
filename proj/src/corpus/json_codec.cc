#include "scrollbio/corpus/json_codec.h"

#include <algorithm>

#include "scrollbio/util/error.h"
#include "scrollbio/util/utf8.h"

namespace scrollbio::corpus {

using nlohmann::json;

namespace {

// Field access with errors that name the record and field.
class Fields {
 public:
  Fields(const json &j, std::string record) : j_(j), record_(std::move(record)) {
    if (!j_.is_object()) Fail("", "expected a JSON object");
  }

  [[noreturn]] void Fail(const std::string &field, const std::string &msg) const {
    throw LoadError("", record_, field, msg);
  }

  bool Has(const char *field) const {
    return j_.contains(field) && !j_[field].is_null();
  }

  const json &At(const char *field) const {
    if (!Has(field)) Fail(field, "missing required field");
    return j_[field];
  }

  std::string String(const char *field) const {
    const json &v = At(field);
    if (!v.is_string()) Fail(field, "expected a string");
    return v.get<std::string>();
  }

  std::string StringOr(const char *field, std::string fallback) const {
    return Has(field) ? String(field) : fallback;
  }

  std::optional<std::string> OptString(const char *field) const {
    if (!Has(field)) return std::nullopt;
    return String(field);
  }

  int Int(const char *field) const {
    const json &v = At(field);
    if (!v.is_number_integer()) Fail(field, "expected an integer");
    return v.get<int>();
  }

  int IntOr(const char *field, int fallback) const {
    return Has(field) ? Int(field) : fallback;
  }

  std::optional<int> OptInt(const char *field) const {
    if (!Has(field)) return std::nullopt;
    return Int(field);
  }

  double Number(const char *field) const {
    const json &v = At(field);
    if (!v.is_number()) Fail(field, "expected a number");
    return v.get<double>();
  }

  const json &Array(const char *field) const {
    const json &v = At(field);
    if (!v.is_array()) Fail(field, "expected an array");
    return v;
  }

  const json &ArrayOrEmpty(const char *field) const {
    static const json empty = json::array();
    return Has(field) ? Array(field) : empty;
  }

  std::vector<std::string> Strings(const char *field) const {
    std::vector<std::string> out;
    for (const auto &v : ArrayOrEmpty(field)) {
      if (!v.is_string()) Fail(field, "expected an array of strings");
      out.push_back(v.get<std::string>());
    }
    return out;
  }

  std::map<std::string, std::vector<std::string>> SourceNames(
      const char *field) const {
    std::map<std::string, std::vector<std::string>> out;
    if (!Has(field)) return out;
    const json &v = j_[field];
    if (!v.is_object()) Fail(field, "expected an object of source -> names");
    for (auto it = v.begin(); it != v.end(); ++it) {
      if (!it.value().is_array()) Fail(field, "expected name arrays");
      for (const auto &n : it.value()) {
        if (!n.is_string()) Fail(field, "expected name strings");
        out[it.key()].push_back(n.get<std::string>());
      }
    }
    return out;
  }

  const std::string &record() const { return record_; }

 private:
  const json &j_;
  std::string record_;
};

std::string RecordId(const json &j) {
  if (j.is_object() && j.contains("id") && j["id"].is_string()) {
    return j["id"].get<std::string>();
  }
  return "";
}

PixelRect RectFromJson(const json &j, const Fields &parent, const char *field) {
  if (!j.is_object()) parent.Fail(field, "expected a rectangle object");
  PixelRect r;
  for (auto [key, dst] : {std::pair{"x", &r.x}, std::pair{"y", &r.y},
                          std::pair{"w", &r.w}, std::pair{"h", &r.h}}) {
    if (!j.contains(key) || !j[key].is_number_integer()) {
      parent.Fail(std::string(field) + "." + key, "expected an integer");
    }
    *dst = j[key].get<int>();
  }
  return r;
}

template <typename T>
void PutOpt(json &j, const char *key, const std::optional<T> &v) {
  if (v) j[key] = *v;
}

json NamesJson(const std::map<std::string, std::vector<std::string>> &names) {
  json j = json::object();
  for (const auto &[src, list] : names) j[src] = list;
  return j;
}

}  // namespace

std::string Canonical(const json &j) {
  return j.dump(-1, ' ', false, json::error_handler_t::strict);
}

json ToJson(const PixelRect &r) {
  return {{"x", r.x}, {"y", r.y}, {"w", r.w}, {"h", r.h}};
}

json ToJson(const EntityMention &m) {
  return {{"start", m.start},
          {"end", m.end},
          {"surface", m.surface},
          {"tag", ToString(m.tag)},
          {"confidence", m.confidence}};
}

json ToJson(const PersonRecord &p) {
  json j = {{"id", p.id},
            {"name", p.name},
            {"names", NamesJson(p.names)},
            {"school_role", ToString(p.school_role)},
            {"literature_mentions", p.literature_mentions}};
  PutOpt(j, "birth_year", p.birth_year);
  PutOpt(j, "death_year", p.death_year);
  PutOpt(j, "dynasty", p.dynasty);
  json ids = json::array();
  for (const auto &h : p.identities) {
    json e = {{"kind", ToString(h.kind)}};
    if (h.kind == Identity::kOfficial) e["rank"] = h.rank;
    ids.push_back(std::move(e));
  }
  j["identities"] = std::move(ids);
  return j;
}

json ToJson(const PlaceRecord &p) {
  return {{"id", p.id},
          {"name", p.name},
          {"names", NamesJson(p.names)},
          {"description", p.description}};
}

json ToJson(const EventRecord &e) {
  json j = {{"id", e.id},
            {"participants", e.participants},
            {"type", e.type},
            {"description", e.description},
            {"source", e.source}};
  PutOpt(j, "year", e.year);
  return j;
}

json ToJson(const chrono::EraEntry &e) {
  json j = {{"era_name", e.era_name},
            {"dynasty", e.dynasty},
            {"start_year", e.start_year},
            {"end_year", e.end_year}};
  if (!e.alt_names.empty()) j["alt_names"] = e.alt_names;
  return j;
}

json ToJson(const DynastyInfo &d) {
  json j = {{"name", d.name}};
  PutOpt(j, "start_year", d.start_year);
  PutOpt(j, "end_year", d.end_year);
  return j;
}

json ToJson(const SealGalleryEntry &g, int feature_row) {
  return {{"id", g.id},
          {"sealer_id", g.sealer_id},
          {"content", g.content},
          {"feature_row", feature_row}};
}

json ToJson(const HandscrollRecord &h, int seal_row_base, int painting_row) {
  json j = {{"id", h.id},
            {"title", h.title},
            {"image_ref", h.image_ref},
            {"image_width", h.image_width},
            {"image_height", h.image_height},
            {"core_region", ToJson(h.core_region)},
            {"theme_text", h.theme_text}};
  PutOpt(j, "painter_id", h.painter_id);
  PutOpt(j, "creation_year", h.creation_year);
  PutOpt(j, "dynasty", h.dynasty);
  if (painting_row >= 0) j["painting_feature_row"] = painting_row;

  json regions = json::array();
  for (const auto &r : h.regions) {
    regions.push_back({{"x", r.x}, {"w", r.w}, {"kind", ToString(r.kind)}});
  }
  j["regions"] = std::move(regions);

  json seals = json::array();
  int row = seal_row_base;
  for (const auto &s : h.seals) {
    json e = {{"box", ToJson(s.box)}};
    if (seal_row_base >= 0) e["feature_row"] = row++;
    PutOpt(e, "matched_seal_id", s.matched_seal_id);
    PutOpt(e, "sealer_id", s.sealer_id);
    PutOpt(e, "timestamp_year", s.timestamp_year);
    PutOpt(e, "date_expression", s.date_expression);
    seals.push_back(std::move(e));
  }
  j["seals"] = std::move(seals);

  json inscriptions = json::array();
  for (const auto &ins : h.inscriptions) {
    json e = {{"id", ins.id}, {"text", ins.text}};
    PutOpt(e, "author_id", ins.author_id);
    PutOpt(e, "timestamp_year", ins.timestamp_year);
    PutOpt(e, "date_expression", ins.date_expression);
    json mentions = json::array();
    for (const auto &m : ins.mentions) mentions.push_back(ToJson(m));
    e["mentions"] = std::move(mentions);
    inscriptions.push_back(std::move(e));
  }
  j["inscriptions"] = std::move(inscriptions);
  return j;
}

json ToJson(const ElementStats &stats) {
  json sealers = json::array();
  for (const auto &s : stats.sealers) {
    json e = {{"sealer_id", s.sealer_id},
              {"seals_on_handscroll", s.seals_on_handscroll},
              {"seals_in_corpus", s.seals_in_corpus},
              {"inscriptions_on_handscroll", s.inscriptions_on_handscroll}};
    e["dynasty"] = s.dynasty ? json(*s.dynasty) : json(nullptr);
    sealers.push_back(std::move(e));
  }
  json words = json::object();
  for (const auto &[tag, freq] : stats.word_frequencies) {
    words[std::string(ToString(tag))] = freq;
  }
  return {{"handscroll_id", stats.handscroll_id},
          {"sealers", std::move(sealers)},
          {"matched_seals", stats.matched_seals},
          {"unmatched_seals", stats.unmatched_seals},
          {"word_frequencies", std::move(words)}};
}

EntityMention MentionFromJson(const json &j, const std::string &record) {
  Fields f(j, record);
  EntityMention m;
  int start = f.Int("start");
  int end = f.Int("end");
  if (start < 0 || end < 0) f.Fail("start", "negative offset");
  m.start = static_cast<size_t>(start);
  m.end = static_cast<size_t>(end);
  m.surface = f.StringOr("surface", "");
  try {
    m.tag = EntityTagFromString(f.String("tag"));
  } catch (const InvalidArgument &e) {
    f.Fail("tag", e.what());
  }
  m.confidence = f.Has("confidence") ? f.Number("confidence") : 1.0;
  if (!(m.confidence >= 0.0 && m.confidence <= 1.0)) {
    f.Fail("confidence", "must lie in [0, 1]");
  }
  return m;
}

PersonRecord PersonFromJson(const json &j) {
  Fields f(j, RecordId(j));
  PersonRecord p;
  p.id = f.String("id");
  p.name = f.String("name");
  p.names = f.SourceNames("names");
  p.birth_year = f.OptInt("birth_year");
  p.death_year = f.OptInt("death_year");
  p.dynasty = f.OptString("dynasty");
  p.literature_mentions = f.IntOr("literature_mentions", 0);
  if (p.literature_mentions < 0) f.Fail("literature_mentions", "negative count");
  try {
    p.school_role = SchoolRoleFromString(f.StringOr("school_role", "none"));
  } catch (const InvalidArgument &e) {
    f.Fail("school_role", e.what());
  }
  for (const auto &e : f.ArrayOrEmpty("identities")) {
    Fields g(e, p.id);
    IdentityHolding h;
    try {
      h.kind = IdentityFromString(g.String("kind"));
    } catch (const InvalidArgument &err) {
      f.Fail("identities.kind", err.what());
    }
    if (h.kind == Identity::kOfficial) {
      h.rank = g.IntOr("rank", 0);
      if (h.rank < 0 || h.rank > 20) {
        f.Fail("identities.rank", "official rank must lie in [0, 20]");
      }
    }
    p.identities.push_back(h);
  }
  if (p.birth_year && p.death_year && *p.birth_year > *p.death_year) {
    f.Fail("death_year", "death before birth");
  }
  return p;
}

PlaceRecord PlaceFromJson(const json &j) {
  Fields f(j, RecordId(j));
  PlaceRecord p;
  p.id = f.String("id");
  p.name = f.String("name");
  p.names = f.SourceNames("names");
  p.description = f.StringOr("description", "");
  return p;
}

EventRecord EventFromJson(const json &j) {
  Fields f(j, RecordId(j));
  EventRecord e;
  e.id = f.String("id");
  e.participants = f.Strings("participants");
  e.type = f.String("type");
  e.year = f.OptInt("year");
  e.description = f.StringOr("description", "");
  e.source = f.StringOr("source", "");
  return e;
}

chrono::EraEntry EraFromJson(const json &j) {
  std::string record = j.is_object() && j.contains("era_name") &&
                               j["era_name"].is_string()
                           ? j["era_name"].get<std::string>()
                           : "";
  Fields f(j, record);
  chrono::EraEntry e;
  e.era_name = f.String("era_name");
  e.dynasty = f.String("dynasty");
  e.start_year = f.Int("start_year");
  e.end_year = f.Int("end_year");
  e.alt_names = f.Strings("alt_names");
  if (e.start_year > e.end_year) f.Fail("end_year", "era ends before it starts");
  return e;
}

DynastyInfo DynastyFromJson(const json &j) {
  if (j.is_string()) return {j.get<std::string>(), std::nullopt, std::nullopt};
  Fields f(j, "");
  DynastyInfo d;
  d.name = f.String("name");
  d.start_year = f.OptInt("start_year");
  d.end_year = f.OptInt("end_year");
  return d;
}

SealGalleryEntry GalleryFromJson(const json &j, int *feature_row) {
  Fields f(j, RecordId(j));
  SealGalleryEntry g;
  g.id = f.String("id");
  g.sealer_id = f.String("sealer_id");
  g.content = f.StringOr("content", "");
  *feature_row = f.Int("feature_row");
  if (*feature_row < 0) f.Fail("feature_row", "negative row");
  return g;
}

HandscrollRecord HandscrollFromJson(const json &j, std::vector<int> *seal_rows,
                                    int *painting_row) {
  Fields f(j, RecordId(j));
  HandscrollRecord h;
  h.id = f.String("id");
  h.title = f.StringOr("title", "");
  h.painter_id = f.OptString("painter_id");
  h.image_ref = f.String("image_ref");
  h.image_width = f.Int("image_width");
  h.image_height = f.Int("image_height");
  if (h.image_width < 1) f.Fail("image_width", "must be >= 1");
  if (h.image_height < 1) f.Fail("image_height", "must be >= 1");
  h.core_region = RectFromJson(f.At("core_region"), f, "core_region");
  h.theme_text = f.StringOr("theme_text", "");
  h.creation_year = f.OptInt("creation_year");
  h.dynasty = f.OptString("dynasty");
  *painting_row = f.IntOr("painting_feature_row", -1);

  auto in_bounds = [&](const PixelRect &r) {
    return r.x >= 0 && r.y >= 0 && r.w > 0 && r.h > 0 &&
           r.x + r.w <= h.image_width && r.y + r.h <= h.image_height;
  };
  if (!in_bounds(h.core_region)) {
    f.Fail("core_region", "rectangle outside image bounds or degenerate");
  }

  for (const auto &r : f.ArrayOrEmpty("regions")) {
    Fields g(r, h.id);
    RegionAnnotation a;
    a.x = g.Int("x");
    a.w = g.Int("w");
    try {
      a.kind = BlockKindFromString(g.String("kind"));
    } catch (const InvalidArgument &e) {
      f.Fail("regions.kind", e.what());
    }
    if (a.w <= 0 || a.x < 0 || a.x + a.w > h.image_width) {
      f.Fail("regions", "region outside image bounds or degenerate");
    }
    h.regions.push_back(a);
  }

  seal_rows->clear();
  const json &seals = f.ArrayOrEmpty("seals");
  for (size_t i = 0; i < seals.size(); ++i) {
    Fields g(seals[i], h.id);
    const std::string field = "seals[" + std::to_string(i) + "]";
    SealAnnotation s;
    s.box = RectFromJson(g.At("box"), f, (field + ".box").c_str());
    if (s.box.w <= 0 || s.box.h <= 0) f.Fail(field + ".box", "degenerate box");
    if (!in_bounds(s.box)) f.Fail(field + ".box", "box outside image bounds");
    s.matched_seal_id = g.OptString("matched_seal_id");
    s.sealer_id = g.OptString("sealer_id");
    s.timestamp_year = g.OptInt("timestamp_year");
    s.date_expression = g.OptString("date_expression");
    if (!g.Has("feature_row")) f.Fail(field + ".feature_row", "missing");
    int row = g.Int("feature_row");
    if (row < 0) f.Fail(field + ".feature_row", "negative row");
    seal_rows->push_back(row);
    h.seals.push_back(std::move(s));
  }

  for (const auto &ij : f.ArrayOrEmpty("inscriptions")) {
    Fields g(ij, h.id);
    InscriptionRecord ins;
    ins.id = g.String("id");
    ins.author_id = g.OptString("author_id");
    ins.text = g.String("text");
    ins.timestamp_year = g.OptInt("timestamp_year");
    ins.date_expression = g.OptString("date_expression");
    const size_t length = utf8::Length(ins.text);
    for (const auto &mj : g.ArrayOrEmpty("mentions")) {
      EntityMention m = MentionFromJson(mj, h.id);
      if (!(m.start < m.end && m.end <= length)) {
        f.Fail("inscriptions." + ins.id + ".mentions",
               "span [" + std::to_string(m.start) + ", " +
                   std::to_string(m.end) + ") outside text of length " +
                   std::to_string(length));
      }
      if (m.surface.empty()) m.surface = utf8::Substring(ins.text, m.start, m.end);
      ins.mentions.push_back(std::move(m));
    }
    std::sort(ins.mentions.begin(), ins.mentions.end(),
              [](const EntityMention &a, const EntityMention &b) {
                return a.start < b.start;
              });
    for (size_t k = 1; k < ins.mentions.size(); ++k) {
      if (ins.mentions[k].start < ins.mentions[k - 1].end) {
        f.Fail("inscriptions." + ins.id + ".mentions", "overlapping spans");
      }
    }
    h.inscriptions.push_back(std::move(ins));
  }
  return h;
}

}  // namespace scrollbio::corpus
