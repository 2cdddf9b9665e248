#include "fixtures.h"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <random>

#include "scrollbio/layout/raster.h"
#include "scrollbio/util/utf8.h"

namespace scrollbio::testing {
namespace {

constexpr int kDim = 16;

PersonRecord Person(std::string id, std::string name,
                    std::map<std::string, std::vector<std::string>> names,
                    std::optional<int> birth, std::optional<int> death,
                    std::optional<std::string> dynasty,
                    std::vector<IdentityHolding> identities = {},
                    SchoolRole role = SchoolRole::kNone, int mentions = 0) {
  PersonRecord p;
  p.id = std::move(id);
  p.name = std::move(name);
  p.names = std::move(names);
  p.birth_year = birth;
  p.death_year = death;
  p.dynasty = std::move(dynasty);
  p.identities = std::move(identities);
  p.school_role = role;
  p.literature_mentions = mentions;
  return p;
}

std::map<std::string, std::vector<std::string>> Cbdb(std::vector<std::string> names) {
  return {{std::string(source::kCbdb), std::move(names)}};
}

const IdentityHolding kCollector{Identity::kCollector, 0};
const IdentityHolding kLiterati{Identity::kLiterati, 0};
IdentityHolding Official(int rank) { return {Identity::kOfficial, rank}; }

FeatureVector RandomUnit(std::mt19937 &rng) {
  std::normal_distribution<float> n;
  FeatureVector v;
  v.values.resize(kDim);
  double norm = 0;
  for (auto &x : v.values) {
    x = n(rng);
    norm += x * x;
  }
  for (auto &x : v.values) x = static_cast<float>(x / std::sqrt(norm));
  return v;
}

FeatureVector Jitter(const FeatureVector &base, std::mt19937 &rng, float sigma) {
  std::normal_distribution<float> n(0, sigma);
  FeatureVector v = base;
  for (auto &x : v.values) x += n(rng);
  return v;
}

void AddEvent(ReferenceDatabases &dbs, std::string a, std::string b,
              std::string type, std::optional<int> year, std::string what) {
  EventRecord e;
  char buf[32];
  std::snprintf(buf, sizeof buf, "tad:%04zu", dbs.events.size() + 1);
  e.id = buf;
  e.participants = {std::move(a), std::move(b)};
  e.type = std::move(type);
  e.year = year;
  e.description = std::move(what);
  e.source = std::string(source::kTad);
  dbs.events.push_back(std::move(e));
}

InscriptionRecord Inscription(std::string id, std::optional<std::string> author,
                              std::string text,
                              std::vector<std::pair<std::string, EntityTag>> mentions,
                              std::optional<int> year = std::nullopt,
                              std::optional<std::string> expression = std::nullopt) {
  InscriptionRecord r;
  r.id = std::move(id);
  r.author_id = std::move(author);
  r.text = std::move(text);
  for (const auto &[needle, tag] : mentions) r.mentions.push_back(MentionOf(r.text, needle, tag));
  std::sort(r.mentions.begin(), r.mentions.end(),
            [](const auto &a, const auto &b) { return a.start < b.start; });
  r.timestamp_year = year;
  r.date_expression = std::move(expression);
  return r;
}

// Lays seals out in a grid over the text and silk regions of a 1200x120
// scroll, skipping the core.
PixelRect SealBox(int i) {
  static const int columns[] = {10, 40, 70, 100, 130, 160, 190, 220, 250,
                                720, 750, 780, 810, 840, 870, 900, 930, 960,
                                990, 1020, 1050, 1080, 1110, 1140, 1170};
  const int n = sizeof columns / sizeof columns[0];
  return {columns[i % n], 8 + 26 * ((i / n) % 4), 18, 18};
}

}  // namespace

EntityMention MentionOf(const std::string &text, const std::string &needle,
                        EntityTag tag, double confidence) {
  const size_t byte = text.find(needle);
  if (byte == std::string::npos) {
    std::cerr << "fixture: '" << needle << "' not in '" << text << "'\n";
    std::abort();
  }
  EntityMention m;
  m.start = utf8::Length(text.substr(0, byte));
  m.end = m.start + utf8::Length(needle);
  m.surface = needle;
  m.tag = tag;
  m.confidence = confidence;
  return m;
}

ReferenceDatabases CaseStudyDatabases() {
  ReferenceDatabases dbs;
  dbs.dynasties = {{"Tang", 618, 907},
                   {"Song", 960, 1279},
                   {"Yuan", 1271, 1368},
                   {"Ming", 1368, 1644},
                   {"Qing", 1644, 1912}};
  dbs.eras = chrono::EraTable({
      {"Yuanzhen", "Yuan", 1295, 1297, {"元貞"}},
      {"Zhiyuan", "Yuan", 1264, 1294, {"至元"}},
      {"Dade", "Yuan", 1297, 1307, {"大德"}},
      {"Zhengtong", "Ming", 1436, 1449, {"正統"}},
      {"Wanli", "Ming", 1573, 1620, {"萬曆"}},
      {"Kangxi", "Qing", 1662, 1722, {"康熙"}},
      {"Qianlong", "Qing", 1736, 1796, {"乾隆"}},
      {"Jiaqing", "Qing", 1796, 1820, {"嘉慶"}},
  });

  auto add = [&](PersonRecord p) { dbs.persons[p.id] = std::move(p); };
  // Figures of the main scroll.
  add(Person(ids::kZhaoMengfu, "Zhao Mengfu",
             {{std::string(source::kCbdb), {"Zhao Mengfu", "Zhao Zi'ang", "Songxue", "趙孟頫"}},
              {std::string(source::kPerad), {"Zhao Mengfu"}}},
             1254, 1322, "Yuan", {kLiterati, Official(18)}, SchoolRole::kPioneer, 120));
  add(Person("cbdb:0002", "Yang Zai", Cbdb({"Yang Zai", "Yang Zhonghong"}), 1271,
             1323, "Yuan", {kLiterati}, SchoolRole::kNone, 12));
  add(Person("cbdb:0003", "Fan Chun", Cbdb({"Fan Chun"}), 1272, 1330, "Yuan",
             {kLiterati, Official(6)}, SchoolRole::kNone, 5));
  add(Person(ids::kQianPu, "Qian Pu", Cbdb({"Qian Pu"}), 1408, 1488, "Ming",
             {Official(12)}, SchoolRole::kNone, 8));
  add(Person(ids::kDongQichang, "Dong Qichang", Cbdb({"Dong Qichang", "Xuanzai"}),
             1555, 1636, "Ming", {kLiterati, kCollector, Official(16)},
             SchoolRole::kPioneer, 95));
  add(Person(ids::kXiangYuanbian, "Xiang Yuanbian", Cbdb({"Xiang Yuanbian", "Molin"}),
             1525, 1590, "Ming", {kCollector}, SchoolRole::kNone, 30));
  add(Person("cbdb:0204", "Zhang Yi", Cbdb({"Zhang Yi"}), 1608, 1695, "Ming",
             {kCollector}, SchoolRole::kNone, 2));
  add(Person("cbdb:0205", "Wen Peng", Cbdb({"Wen Peng", "Sanqiao"}), 1498, 1573,
             "Ming", {kLiterati}, SchoolRole::kRepresentative, 25));
  add(Person(ids::kQianlong, "Qianlong Emperor",
             Cbdb({"Qianlong Emperor", "Hongli", "乾隆帝"}), 1711, 1799, "Qing",
             {kCollector, kLiterati, Official(20)}, SchoolRole::kNone, 200));
  add(Person("cbdb:0302", "Cao Rong", Cbdb({"Cao Rong", "Cao Qiuyue"}), 1613, 1685,
             "Qing", {kCollector, Official(14)}, SchoolRole::kNone, 10));
  add(Person("cbdb:0303", "Liang Qingbiao", Cbdb({"Liang Qingbiao", "Jiaolin"}), 1620,
             1691, "Qing", {kCollector, Official(17)}, SchoolRole::kNone, 18));
  add(Person("cbdb:0304", "Jiaqing Emperor", Cbdb({"Jiaqing Emperor", "Yongyan"}),
             1760, 1820, "Qing", {kCollector, Official(20)}, SchoolRole::kNone, 40));
  add(Person("cbdb:0305", "Xuantong Emperor", Cbdb({"Xuantong Emperor", "Puyi"}),
             1906, 1967, "Qing", {kCollector, Official(20)}, SchoolRole::kNone, 35));
  add(Person("cbdb:0306", "Wang Hongxu", Cbdb({"Wang Hongxu"}), 1645, 1723, "Qing",
             {Official(15)}, SchoolRole::kNone, 6));
  add(Person("cbdb:0307", "Nalan Xingde", Cbdb({"Nalan Xingde", "Na Lanxing"}), 1655,
             1685, "Qing", {kLiterati, Official(8)}, SchoolRole::kRepresentative, 22));

  // The Gong Jin homonyms.
  add(Person(ids::kZhouMi, "Zhou Mi",
             Cbdb({"Zhou Mi", "Gong Jin", "Bianyang Laoren", "Caochuang"}), 1232, 1298,
             "Song", {kLiterati, kCollector}, SchoolRole::kNone, 45));
  add(Person(ids::kLiKezhong, "Li Kezhong", Cbdb({"Li Kezhong", "Gong Jin"}), 1279,
             1345, "Yuan", {Official(4)}, SchoolRole::kNone, 1));
  add(Person("cbdb:0950", "Wang Heng", Cbdb({"Wang Heng"}), 1281, 1339, "Yuan"));
  static const char *kOthers[] = {
      "Chen Ying",  "Lu Dao",     "Sun Jie",    "He Qian",   "Gao Lin",
      "Xu Shan",    "Ma Wenbing", "Luo Ping",   "Tang Yuan", "Shen Du",
      "Cheng Kuo",  "Pan Xun",    "Wei Zhao",   "Feng Ke",   "Du Heng",
      "Yao Shou",   "Lin Bu",     "Song Lian",  "Hu Yan",    "Jiang Qi"};
  for (int i = 0; i < 20; ++i) {
    // Lifespans that never touch 1271-1368.
    const bool early = i % 2 == 0;
    const int birth = early ? 650 + 15 * i : 1420 + 12 * i;
    const char *dynasty = early ? "Tang" : (birth < 1600 ? "Ming" : "Qing");
    char id[16];
    std::snprintf(id, sizeof id, "cbdb:%04d", 910 + i);
    add(Person(id, kOthers[i], Cbdb({kOthers[i], "Gong Jin"}), birth, birth + 55,
               dynasty));
  }
  add(Person(ids::kQueenMother, "Queen Mother of the West",
             {{std::string(source::kPerad), {"Queen Mother of the West", "Jin Mu", "Xi Wangmu"}}},
             std::nullopt, std::nullopt, std::nullopt));

  auto place = [&](std::string id, std::string name,
                   std::map<std::string, std::vector<std::string>> names,
                   std::string what) {
    dbs.places[id] = {id, std::move(name), std::move(names), std::move(what)};
  };
  place("plaad:0001", "Qizhou",
        {{std::string(source::kPlaad), {"Qizhou", "齊州"}}, {std::string(source::kChgis), {"Qizhou"}}},
        "Prefecture around present-day Jinan");
  place("plaad:0002", "Que mountain", {{std::string(source::kPlaad), {"Que mountain", "Queshan"}}},
        "Hill north of Jinan");
  place("chgis:0003", "Hua Buzhu mountain",
        {{std::string(source::kPlaad), {"Hua Buzhu mountain", "Hua Buzhu"}},
         {std::string(source::kChgis), {"Hua Buzhu"}}},
        "Isolated peak east of Jinan");

  // Zhou Mi and Zhao Mengfu: 23 recorded events.
  for (int i = 0; i < 23; ++i) {
    AddEvent(dbs, ids::kZhouMi, ids::kZhaoMengfu, i < 15 ? "Social" : "Academic",
             1286 + i / 2, "Gathering " + std::to_string(i + 1));
  }
  // Li Kezhong only knew people outside the scroll.
  for (int i = 0; i < 4; ++i) {
    AddEvent(dbs, ids::kLiKezhong, "cbdb:0950", "Political", 1310 + i,
             "Court service " + std::to_string(i + 1));
  }
  AddEvent(dbs, ids::kDongQichang, ids::kXiangYuanbian, "Academic", 1580,
           "Viewed calligraphy together");
  AddEvent(dbs, ids::kDongQichang, ids::kXiangYuanbian, "Academic", 1585,
           "Discussed the Yuan masters");
  AddEvent(dbs, ids::kDongQichang, ids::kXiangYuanbian, "Social", 1588,
           "Banquet at Tianlaige");
  AddEvent(dbs, ids::kQianlong, "cbdb:0304", "Political", 1795,
           "Abdication in favour of the heir");
  AddEvent(dbs, "cbdb:0302", "cbdb:0303", "Social", std::nullopt,
           "Exchanged collections");

  std::mt19937 rng(20240611);
  dbs.gallery_dim = kDim;
  auto gallery = [&](const std::string &sealer, int count, const std::string &content) {
    for (int i = 0; i < count; ++i) {
      SealGalleryEntry g;
      g.id = "seal:" + sealer.substr(sealer.find(':') + 1) + "-" +
             static_cast<char>('a' + i);
      g.sealer_id = sealer;
      g.content = content + (i ? " " + std::to_string(i + 1) : "");
      g.feature = RandomUnit(rng);
      dbs.seal_gallery[g.id] = std::move(g);
    }
  };
  gallery(ids::kZhaoMengfu, 2, "Zhao shi Zi'ang");
  gallery("cbdb:0002", 1, "Yang Zai");
  gallery("cbdb:0003", 1, "Fan Chun");
  gallery(ids::kQianPu, 1, "Qian Pu");
  gallery(ids::kDongQichang, 2, "Dong Qichang yin");
  gallery(ids::kXiangYuanbian, 3, "Molin mi wan");
  gallery("cbdb:0204", 1, "Zhang Yi jian shang");
  gallery("cbdb:0205", 1, "Wen Peng");
  gallery(ids::kQianlong, 6, "Qianlong yu lan zhi bao");
  gallery("cbdb:0302", 2, "Qiuyue");
  gallery("cbdb:0303", 2, "Jiaolin shu wu");
  gallery("cbdb:0304", 1, "Jiaqing yu lan zhi bao");
  gallery("cbdb:0305", 1, "Xuantong yu lan zhi bao");
  gallery("cbdb:0306", 1, "Wang Hongxu yin");
  gallery("cbdb:0307", 1, "Chengde");
  gallery(ids::kZhouMi, 1, "Gong Jin");
  dbs.BuildIndexes();
  return dbs;
}

namespace {

HandscrollRecord BaseScroll(std::string id, std::string title, std::string slug) {
  HandscrollRecord h;
  h.id = std::move(id);
  h.title = std::move(title);
  h.image_ref = "images/" + slug + ".png";
  h.image_width = 1200;
  h.image_height = 120;
  h.core_region = {300, 0, 400, 120};
  h.regions = {{0, 150, BlockKind::kText},
               {150, 150, BlockKind::kSilk},
               {700, 300, BlockKind::kText},
               {1000, 200, BlockKind::kSilk}};
  return h;
}

void AddSeals(HandscrollRecord &h, const ReferenceDatabases &dbs, std::mt19937 &rng,
              const std::string &sealer, int count,
              const std::vector<std::optional<int>> &years = {}) {
  std::vector<const SealGalleryEntry *> own;
  for (const auto &[id, g] : dbs.seal_gallery)
    if (g.sealer_id == sealer) own.push_back(&g);
  for (int i = 0; i < count; ++i) {
    const SealGalleryEntry &g = *own[i % own.size()];
    SealAnnotation s;
    s.box = SealBox(static_cast<int>(h.seals.size()));
    s.matched_seal_id = g.id;
    s.feature = Jitter(g.feature, rng, 0.05f);
    if (i < static_cast<int>(years.size())) s.timestamp_year = years[i];
    h.seals.push_back(std::move(s));
  }
}

void AddUnmatchedSeal(HandscrollRecord &h, std::mt19937 &rng) {
  SealAnnotation s;
  s.box = SealBox(static_cast<int>(h.seals.size()));
  s.feature = RandomUnit(rng);
  h.seals.push_back(std::move(s));
}

std::map<std::string, HandscrollRecord> CaseStudyHandscrolls(
    const ReferenceDatabases &dbs) {
  std::mt19937 rng(1295);
  std::map<std::string, HandscrollRecord> out;
  using T = EntityTag;

  HandscrollRecord a = BaseScroll(ids::kAutumnColors,
                                  "Autumn Colors on the Qiao and Hua Mountains",
                                  "autumn-colors");
  a.painter_id = ids::kZhaoMengfu;
  a.creation_year = 1295;
  a.dynasty = "Yuan";
  a.theme_text =
      "autumn colors qiao hua mountains river marsh village fishermen trees "
      "blue green landscape";
  FeatureVector painting_base = RandomUnit(rng);
  a.painting_feature = painting_base;
  AddSeals(a, dbs, rng, ids::kZhaoMengfu, 2, {1295});
  AddSeals(a, dbs, rng, "cbdb:0002", 1, {1296});
  AddSeals(a, dbs, rng, "cbdb:0003", 1);
  AddSeals(a, dbs, rng, ids::kQianPu, 1, {1460});
  AddSeals(a, dbs, rng, ids::kDongQichang, 2, {1602});
  AddSeals(a, dbs, rng, ids::kXiangYuanbian, 5, {1570, 1575});
  AddSeals(a, dbs, rng, "cbdb:0204", 1);
  AddSeals(a, dbs, rng, "cbdb:0205", 1, {1550});
  AddSeals(a, dbs, rng, "cbdb:0302", 2, {1660});
  AddSeals(a, dbs, rng, "cbdb:0303", 3, {1670, 1672});
  std::vector<std::optional<int>> emperor_years;
  for (int i = 0; i < 33; ++i) {
    if (i % 3 == 2) {
      emperor_years.push_back(std::nullopt);
    } else {
      emperor_years.push_back(1746 + 2 * (i / 3));
    }
  }
  AddSeals(a, dbs, rng, ids::kQianlong, 33, emperor_years);
  AddSeals(a, dbs, rng, "cbdb:0304", 2, {1800});
  AddSeals(a, dbs, rng, "cbdb:0305", 2);
  AddSeals(a, dbs, rng, "cbdb:0306", 1, {1730});  // after his death: flagged
  AddSeals(a, dbs, rng, "cbdb:0307", 2, {1680});
  AddUnmatchedSeal(a, rng);
  AddUnmatchedSeal(a, rng);
  // A Qianlong seal dated by its era expression.
  a.seals[30].timestamp_year.reset();
  a.seals[30].date_expression = "Qianlong Wuchen";

  a.inscriptions.push_back(Inscription(
      "ins:ac-01", std::string(ids::kZhaoMengfu),
      "Gong Jin came home from Qizhou and spoke of Hua Buzhu and Que mountain, "
      "so I painted them for him.",
      {{"Gong Jin", T::kFigure}, {"Qizhou", T::kLocation},
       {"Hua Buzhu", T::kLocation}, {"Que mountain", T::kLocation}},
      std::nullopt, "Yuanzhen first year"));
  a.inscriptions.push_back(Inscription(
      "ins:ac-02", std::string("cbdb:0002"),
      "Yuanzhen second year, Yang Zai unrolled the scroll with friends.",
      {{"Yuanzhen second year", T::kTime}, {"Yang Zai", T::kFigure},
       {"scroll", T::kThing}},
      std::nullopt, "Yuanzhen second year"));
  a.inscriptions.push_back(Inscription(
      "ins:ac-03", std::string("cbdb:0003"),
      "Fan Chun of Qingjiang recalls Jin Mu and the western hills.",
      {{"Fan Chun", T::kFigure}, {"Qingjiang", T::kLocation}, {"Jin Mu", T::kFigure}}));
  a.inscriptions.push_back(Inscription(
      "ins:ac-04", std::string(ids::kDongQichang),
      "Han Lin Qian Pu once kept this scroll; Xiang Yuanbian showed it to me.",
      {{"Han Lin Qian Pu", T::kFigure}, {"Xiang Yuanbian", T::kFigure},
       {"scroll", T::kThing}},
      1589));
  a.inscriptions.push_back(Inscription(
      "ins:ac-05", std::string(ids::kDongQichang),
      "Wanli thirtieth year, I compared Zhao Mengfu with Mo Shilong by the lamp.",
      {{"Wanli thirtieth year", T::kTime}, {"Zhao Mengfu", T::kFigure},
       {"Mo Shilong", T::kFigure}, {"lamp", T::kThing}},
      std::nullopt, "Wanli thirtieth year"));
  static const char *kPoems[] = {
      "Qianlong Wuchen, a poem on the peaks of Qizhou.",
      "Autumn light on Que mountain, again I write a poem.",
      "Reeds and boats; Zhao Mengfu knew this river.",
      "A second poem beside the first, for the mountains of Qizhou.",
      "Snow outside the hall, I unroll the scroll once more.",
      "Hua Buzhu stands alone, a poem for the lone peak.",
      "The fishermen row home; a poem on old age.",
      "Tenth viewing of the scroll, the colors have not faded.",
      "Without date, a verse on the pines by the river."};
  const std::optional<int> poem_years[] = {std::nullopt, 1750, 1752, 1755, 1758,
                                           1762, 1766, 1770, std::nullopt};
  for (int i = 0; i < 9; ++i) {
    const std::string text = kPoems[i];
    std::vector<std::pair<std::string, EntityTag>> mentions;
    for (const char *place : {"Qizhou", "Que mountain", "Hua Buzhu"})
      if (text.find(place) != std::string::npos) mentions.push_back({place, T::kLocation});
    if (text.find("Zhao Mengfu") != std::string::npos) mentions.push_back({"Zhao Mengfu", T::kFigure});
    if (text.find("poem") != std::string::npos) mentions.push_back({"poem", T::kThing});
    if (text.find("scroll") != std::string::npos) mentions.push_back({"scroll", T::kThing});
    std::optional<std::string> expression;
    if (i == 0) {
      mentions.push_back({"Qianlong Wuchen", T::kTime});
      expression = "Qianlong Wuchen";
    }
    a.inscriptions.push_back(Inscription("ins:ac-q" + std::to_string(i + 1),
                                         std::string(ids::kQianlong), text,
                                         mentions, poem_years[i], expression));
  }
  out[a.id] = std::move(a);

  HandscrollRecord w = BaseScroll(ids::kWaterVillage, "Water Village", "water-village");
  w.painter_id = ids::kZhaoMengfu;
  w.creation_year = 1302;
  w.dynasty = "Yuan";
  w.theme_text = "water village river marsh fishermen trees quiet landscape";
  w.painting_feature = Jitter(painting_base, rng, 0.3f);
  AddSeals(w, dbs, rng, ids::kZhaoMengfu, 1, {1302});
  AddSeals(w, dbs, rng, ids::kQianlong, 2, {1760});
  AddSeals(w, dbs, rng, ids::kXiangYuanbian, 1);
  w.inscriptions.push_back(Inscription(
      "ins:wv-01", std::string(ids::kZhaoMengfu),
      "Dade sixth year, painted for Qian Deping.",
      {{"Dade sixth year", T::kTime}, {"Qian Deping", T::kFigure}}, std::nullopt,
      "Dade sixth year"));
  out[w.id] = std::move(w);

  HandscrollRecord n = BaseScroll(ids::kAnonymousAutumn, "Autumn Mountains",
                                  "anonymous-autumn");
  n.theme_text = "autumn mountains trees river landscape";
  n.painting_feature = Jitter(painting_base, rng, 0.2f);
  AddSeals(n, dbs, rng, "cbdb:0303", 1);
  AddUnmatchedSeal(n, rng);
  out[n.id] = std::move(n);

  HandscrollRecord d = BaseScroll(ids::kDongLandscape, "Landscape after Dong Yuan",
                                  "dong-landscape");
  d.painter_id = ids::kDongQichang;
  d.creation_year = 1617;
  d.dynasty = "Ming";
  d.theme_text = "ink landscape after dong yuan mountains pines";
  d.painting_feature = RandomUnit(rng);
  AddSeals(d, dbs, rng, ids::kDongQichang, 1, {1617});
  AddSeals(d, dbs, rng, ids::kQianlong, 1);
  out[d.id] = std::move(d);
  return out;
}

}  // namespace

corpus::CorpusHandle CaseStudyCorpus() {
  ReferenceDatabases dbs = CaseStudyDatabases();
  auto handscrolls = CaseStudyHandscrolls(dbs);
  return corpus::MakeCorpus(std::move(handscrolls), std::move(dbs));
}

void WriteCaseStudyCorpus(const std::string &dir) {
  corpus::CorpusHandle c = CaseStudyCorpus();
  corpus::SaveCorpus(*c, dir);
  for (const auto &[id, h] : c->handscrolls()) {
    RenderHandscrollImage(h, (std::filesystem::path(dir) / h.image_ref).string());
  }
}

void RenderHandscrollImage(const HandscrollRecord &h, const std::string &path) {
  using layout::Rgb;
  layout::RasterImage img(h.image_width, h.image_height, {226, 212, 178});
  uint32_t seed = 0;
  for (char c : h.id) seed = seed * 31 + static_cast<unsigned char>(c);
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> jitter(-12, 12);
  for (const auto &r : h.regions) {
    if (r.kind != BlockKind::kText) continue;
    // Vertical columns of glyph strokes.
    for (int x = r.x + 6; x + 6 < r.x + r.w; x += 14) {
      for (int y = 10; y + 10 < h.image_height; y += 12) {
        if (rng() % 5 == 0) continue;
        for (int dy = 0; dy < 8; ++dy)
          for (int dx = 0; dx < 6; ++dx)
            if ((dx + dy + static_cast<int>(rng() % 3)) % 3 != 0) img.set(x + dx, y + dy, {40, 34, 30});
      }
    }
  }
  const PixelRect &c = h.core_region;
  for (int y = c.y; y < c.y + c.h; ++y) {
    for (int x = c.x; x < c.x + c.w; ++x) {
      const double u = static_cast<double>(x - c.x) / c.w;
      const double v = static_cast<double>(y - c.y) / c.h;
      const double ridge = 0.55 + 0.25 * std::sin(u * 9.0) + 0.1 * std::sin(u * 31.0);
      Rgb px;
      if (v < ridge - 0.2) {
        px = {200, 210, 220};
      } else if (v < ridge) {
        px = {static_cast<uint8_t>(60 + jitter(rng)), static_cast<uint8_t>(120 + jitter(rng)),
              static_cast<uint8_t>(130 + jitter(rng))};
      } else {
        px = {static_cast<uint8_t>(170 + jitter(rng)), static_cast<uint8_t>(120 + jitter(rng)),
              static_cast<uint8_t>(60 + jitter(rng))};
      }
      img.set(x, y, px);
    }
  }
  for (const auto &s : h.seals) {
    for (int y = s.box.y; y < s.box.y + s.box.h; ++y)
      for (int x = s.box.x; x < s.box.x + s.box.w; ++x) {
        const bool border = y < s.box.y + 2 || y >= s.box.y + s.box.h - 2 ||
                            x < s.box.x + 2 || x >= s.box.x + s.box.w - 2;
        if (border || (x + y) % 4 == 0) img.set(x, y, {190, 30, 30});
      }
  }
  std::filesystem::create_directories(std::filesystem::path(path).parent_path());
  layout::WritePng(img, path);
}

}  // namespace scrollbio::testing
