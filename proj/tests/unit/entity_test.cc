#include <cctype>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <random>
#include <thread>

#include <gtest/gtest.h>

#include "fixtures.h"
#include "httplib.h"
#include "scrollbio/entity/resolve.h"
#include "scrollbio/entity/tagger.h"
#include "scrollbio/util/utf8.h"

namespace scrollbio {
void PrintTo(const EntityMention &m, std::ostream *os) {
  *os << "[" << m.start << "," << m.end << ") " << ToString(m.tag) << " '" << m.surface
      << "' " << m.confidence;
}
}  // namespace scrollbio

namespace scrollbio::entity {
namespace {

namespace ids = testing::ids;
using testing::CaseStudyCorpus;
using testing::CaseStudyDatabases;

EntityMention M(size_t start, size_t end, EntityTag tag, std::string surface = "",
                double confidence = 1.0) {
  return {start, end, std::move(surface), tag, confidence};
}

// ---- segmentation ----

TEST(NameSegments, FourSyllableExample) {
  EXPECT_EQ(GenerateNameSegments("Han Lin Qian Pu"),
            (std::vector<std::string>{"Lin Qian Pu", "Han Lin Qian", "Qian Pu",
                                      "Lin Qian", "Han Lin"}));
}

TEST(NameSegments, ShortNames) {
  EXPECT_TRUE(GenerateNameSegments("Qian Pu").empty());
  EXPECT_TRUE(GenerateNameSegments("錢溥").empty());
  EXPECT_EQ(GenerateNameSegments("A B C"), (std::vector<std::string>{"B C", "A B"}));
  EXPECT_EQ(GenerateNameSegments("翰林錢溥"),
            (std::vector<std::string>{"林錢溥", "翰林錢", "錢溥", "林錢", "翰林"}));
}

TEST(NameSegments, OrderingProperty) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + rng() % 9;
    std::vector<std::string> syl;
    std::string name;
    for (int i = 0; i < n; ++i) {
      syl.push_back("s" + std::to_string(i));
      name += (i ? " " : "") + syl.back();
    }
    auto segs = GenerateNameSegments(name);
    EXPECT_EQ(segs.size(), static_cast<size_t>(n >= 3 ? (n - 1) * n / 2 - 1 : 0));
    int prev_len = n, prev_start = n;
    for (const auto &s : segs) {
      // Distinct syllables let each segment be located uniquely.
      const int start = std::stoi(s.substr(1, s.find(' ') - 1));
      const int len = static_cast<int>(std::count(s.begin(), s.end(), ' ')) + 1;
      EXPECT_LE(len, prev_len);
      EXPECT_GE(len, 2);
      EXPECT_LT(len, n);
      if (len == prev_len) EXPECT_LT(start, prev_start);
      prev_len = len;
      prev_start = start;
      EXPECT_NE(name.find(s), std::string::npos);
    }
  }
}

// ---- voting ----

TaggerPort Scripted(std::function<std::vector<EntityMention>(std::string_view)> f) {
  return f;
}

TEST(TagLongText, SingleChunkPassesThrough) {
  DictionaryTagger tagger({{"Zhao Mengfu", EntityTag::kFigure, 0.8},
                           {"Qizhou", EntityTag::kLocation, 0.7}});
  const std::string text = "Zhao Mengfu went to Qizhou.";
  auto direct = tagger(text);
  auto voted = TagLongText(text, tagger.port(), {200, 100});
  EXPECT_EQ(voted, direct);
  ASSERT_EQ(voted.size(), 2u);
  EXPECT_EQ(voted[1].surface, "Qizhou");
}

TEST(TagLongText, AdjacentMentionsStaySeparate) {
  auto tagger = Scripted([](std::string_view) {
    return std::vector<EntityMention>{M(0, 2, EntityTag::kFigure, "ab", 0.5),
                                      M(2, 4, EntityTag::kFigure, "cd", 0.9)};
  });
  auto out = TagLongText("abcd", tagger, {10, 5});
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0].surface, "ab");
  EXPECT_DOUBLE_EQ(out[1].confidence, 0.9);
}

TEST(TagLongText, StrideEqualsWindowIsConcatenation) {
  std::mt19937 rng(12);
  std::vector<DictionaryTagger::Entry> entries = {{"Dong Qichang", EntityTag::kFigure},
                                                  {"Qizhou", EntityTag::kLocation},
                                                  {"poem", EntityTag::kThing},
                                                  {"Wanli", EntityTag::kTime}};
  DictionaryTagger tagger(entries);
  const char *words[] = {"Dong Qichang", "Qizhou", "poem", "Wanli", "and", "the", "hills", " "};
  for (int trial = 0; trial < 50; ++trial) {
    std::string text;
    for (int i = 0; i < 40; ++i) text += words[rng() % 8] + std::string(" ");
    const int window = 5 + rng() % 30;
    auto voted = TagLongText(text, tagger.port(), {window, window});
    std::vector<EntityMention> concat;
    const size_t n = utf8::Length(text);
    for (size_t s = 0; s < n; s += window) {
      for (auto m : tagger(utf8::Substring(text, s, std::min(n, s + window)))) {
        m.start += s;
        m.end += s;
        concat.push_back(m);
      }
    }
    ASSERT_EQ(voted, concat) << "window " << window;
  }
}

TEST(TagLongText, MajorityOfThreeChunks) {
  // Window 6, stride 2 over 10 characters: chunks start at 0, 2, 4 and all
  // three cover "XY". The chunk that begins with it calls it a location.
  auto tagger = Scripted([](std::string_view chunk) {
    std::vector<EntityMention> out;
    const size_t at = std::string(chunk).find("XY");
    if (at != std::string::npos) {
      out.push_back(M(at, at + 2, at == 0 ? EntityTag::kLocation : EntityTag::kFigure, "XY"));
    }
    return out;
  });
  auto out = TagLongText("abcdXYefgh", tagger, {6, 2});
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].start, 4u);
  EXPECT_EQ(out[0].end, 6u);
  EXPECT_EQ(out[0].tag, EntityTag::kFigure);
}

TEST(TagLongText, TieGoesToNearestChunkCentre) {
  auto tagger = Scripted([](std::string_view chunk) {
    std::vector<EntityMention> out;
    if (chunk == "abcd") out.push_back(M(2, 4, EntityTag::kFigure, "cd"));
    if (chunk == "cdef") out.push_back(M(0, 2, EntityTag::kLocation, "cd"));
    return out;
  });
  auto out = TagLongText("abcdef", tagger, {4, 2});
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0].tag, EntityTag::kFigure);
  EXPECT_EQ(out[0].surface, "c");
  EXPECT_EQ(out[1].tag, EntityTag::kLocation);
  EXPECT_EQ(out[1].surface, "d");
}

TEST(TagLongText, UnanimousMatchesSingleChunk) {
  // Every chunk tags each digit as a one-character Time mention, so all
  // covering chunks agree everywhere.
  auto digits = Scripted([](std::string_view chunk) {
    std::vector<EntityMention> out;
    for (size_t i = 0; i < chunk.size(); ++i)
      if (std::isdigit(static_cast<unsigned char>(chunk[i])))
        out.push_back(M(i, i + 1, EntityTag::kTime, std::string(1, chunk[i]), 0.7));
    return out;
  });
  const std::string text = "in 1748 and 1750 the emperor wrote 9 poems";
  auto whole = digits(text);
  EXPECT_EQ(TagLongText(text, digits, {8, 3}), whole);
  EXPECT_EQ(TagLongText(text, digits, {20, 7}), whole);
}

TEST(TagLongText, CompletionOrderDoesNotMatter) {
  std::mt19937 rng(9);
  const char *vocab[] = {"Qianlong", "Qizhou", "Que mountain", "poem", "x", "yy", " "};
  DictionaryTagger dict({{"Qianlong", EntityTag::kTime},
                         {"Qizhou", EntityTag::kLocation},
                         {"Que mountain", EntityTag::kLocation},
                         {"poem", EntityTag::kThing}});
  // Chunks answer after random delays and with position-dependent noise.
  auto noisy = Scripted([&dict](std::string_view chunk) {
    std::this_thread::sleep_for(std::chrono::microseconds(std::hash<std::string_view>{}(chunk) % 500));
    auto out = dict(chunk);
    if (!out.empty() && chunk.size() % 3 == 0) out.front().tag = EntityTag::kFigure;
    return out;
  });
  for (int trial = 0; trial < 10; ++trial) {
    std::string text;
    for (int i = 0; i < 60; ++i) text += vocab[rng() % 7];
    auto serial = TagLongText(text, noisy, {24, 8, 1});
    auto parallel = TagLongText(text, noisy, {24, 8, 6});
    EXPECT_EQ(serial, parallel);
    for (const auto &m : serial) {
      EXPECT_LT(m.start, m.end);
      EXPECT_EQ(m.surface, utf8::Substring(text, m.start, m.end));
    }
  }
}

TEST(TagLongText, ChunkFailureCarriesOffsets) {
  auto bad = Scripted([](std::string_view chunk) -> std::vector<EntityMention> {
    if (chunk.find('!') != std::string_view::npos) throw std::runtime_error("boom");
    return {};
  });
  try {
    TagLongText("aaaaaaaaaa!aaaaaaa", bad, {8, 8});
    FAIL();
  } catch (const TaggerError &e) {
    EXPECT_EQ(e.chunk_start(), 8u);
    EXPECT_EQ(e.chunk_end(), 16u);
  }
  auto out_of_range = Scripted([](std::string_view) {
    return std::vector<EntityMention>{M(0, 99, EntityTag::kThing)};
  });
  EXPECT_THROW(TagLongText("abc", out_of_range, {8, 8}), TaggerError);
  EXPECT_THROW(TagLongText("abc", out_of_range, {4, 5}), InvalidArgument);
  EXPECT_THROW(TagLongText("abc", out_of_range, {4, 0}), InvalidArgument);
}

TEST(TagLongText, CodePointOffsets) {
  DictionaryTagger tagger({{"錢溥", EntityTag::kFigure}, {"齊州", EntityTag::kLocation}});
  auto out = TagLongText("翰林錢溥到齊州", tagger.port(), {4, 2});
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0].start, 2u);
  EXPECT_EQ(out[0].surface, "錢溥");
  EXPECT_EQ(out[1].start, 5u);
}

// ---- adapters ----

TEST(Adapters, ParseResponseValidatesSpans) {
  auto ok = ParseTaggerResponse(
      nlohmann::json::parse(R"({"mentions":[{"start":0,"end":2,"tag":"Figure","confidence":0.5}]})"),
      "錢溥公");
  ASSERT_EQ(ok.size(), 1u);
  EXPECT_EQ(ok[0].surface, "錢溥");
  EXPECT_THROW(ParseTaggerResponse(nlohmann::json::parse(R"({"mentions":[{"start":0,"end":9,"tag":"Figure"}]})"), "abc"),
               Error);
  EXPECT_THROW(ParseTaggerResponse(nlohmann::json::parse(R"({"mentions":[{"start":0,"end":1,"tag":"Person"}]})"), "abc"),
               Error);
  EXPECT_THROW(ParseTaggerResponse(nlohmann::json::parse(R"({})"), "abc"), Error);
}

TEST(Adapters, SubprocessTagger) {
  const std::string script = ::testing::TempDir() + "/tagger.sh";
  std::ofstream(script) << "#!/bin/sh\n"
                           "grep -q Qizhou && echo '{\"mentions\":[{\"start\":0,\"end\":6,\"tag\":\"Location\"}]}' "
                           "|| echo '{\"mentions\":[]}'\n";
  std::filesystem::permissions(script, std::filesystem::perms::owner_all);
  TaggerPort port = SubprocessTagger(script);
  auto out = TagLongText("Qizhou hills", port, {50, 25});
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].surface, "Qizhou");
  EXPECT_TRUE(TagLongText("nothing", port).empty());
  EXPECT_THROW(TagLongText("x", SubprocessTagger("exit 3")), TaggerError);
}

TEST(Adapters, HttpTagger) {
  httplib::Server server;
  DictionaryTagger dict({{"Jin Mu", EntityTag::kFigure}});
  server.Post("/tag", [&](const httplib::Request &req, httplib::Response &res) {
    const std::string text = nlohmann::json::parse(req.body)["text"];
    nlohmann::json mentions = nlohmann::json::array();
    for (const auto &m : dict(text)) {
      mentions.push_back({{"start", m.start}, {"end", m.end}, {"tag", "Figure"}, {"confidence", 0.6}});
    }
    res.set_content(nlohmann::json{{"mentions", mentions}}.dump(), "application/json");
  });
  const int port = server.bind_to_any_port("127.0.0.1");
  std::thread th([&] { server.listen_after_bind(); });
  server.wait_until_ready();
  TaggerPort tagger = HttpTagger("http://127.0.0.1:" + std::to_string(port) + "/tag");
  auto out = TagLongText("recalls Jin Mu of the west", tagger, {16, 8, 3});
  server.stop();
  th.join();
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].surface, "Jin Mu");
  EXPECT_DOUBLE_EQ(out[0].confidence, 0.6);
  EXPECT_THROW(TagLongText("x", HttpTagger("http://127.0.0.1:1/tag", 1)), TaggerError);
}

// ---- resolution ----

TEST(ResolvePerson, DirectInBothSources) {
  ReferenceDatabases dbs = CaseStudyDatabases();
  ResolvedFigure r = ResolvePerson("Zhao Mengfu", dbs);
  ASSERT_TRUE(r.resolved());
  EXPECT_EQ(*r.person_id, ids::kZhaoMengfu);
  EXPECT_EQ(r.method, Method::kDirect);
  EXPECT_EQ(r.sources, (std::set<std::string>{"cbdb", "perad"}));
}

TEST(ResolvePerson, PeradOnly) {
  ReferenceDatabases dbs = CaseStudyDatabases();
  ResolvedFigure r = ResolvePerson("Jin Mu", dbs);
  ASSERT_TRUE(r.resolved());
  EXPECT_EQ(*r.person_id, ids::kQueenMother);
  EXPECT_EQ(r.canonical_name, "Queen Mother of the West");
  EXPECT_EQ(r.sources, (std::set<std::string>{"perad"}));
  EXPECT_EQ(r.method, Method::kDirect);
}

TEST(ResolvePerson, UnknownIsUnresolved) {
  ReferenceDatabases dbs = CaseStudyDatabases();
  ResolvedFigure r = ResolvePerson("Xq Zzv Wrr", dbs);
  EXPECT_FALSE(r.resolved());
  EXPECT_TRUE(r.candidates.empty());
}

TEST(ResolvePerson, SegmentFallback) {
  ReferenceDatabases dbs = CaseStudyDatabases();
  ResolvedFigure r = ResolvePerson("Han Lin Qian Pu", dbs);
  ASSERT_TRUE(r.resolved());
  EXPECT_EQ(*r.person_id, ids::kQianPu);
  EXPECT_EQ(r.method, Method::kSegment);
  EXPECT_EQ(r.matched_alias, "Qian Pu");
  EXPECT_NE(std::string("Han Lin Qian Pu").find(r.matched_alias), std::string::npos);
}

TEST(ResolvePerson, SegmentAliasIsAlwaysASubstring) {
  ReferenceDatabases dbs = CaseStudyDatabases();
  std::mt19937 rng(2);
  const char *syl[] = {"Han", "Lin", "Qian", "Pu", "Zhou", "Mi", "Wen", "Peng", "Gong", "Jin"};
  for (int trial = 0; trial < 300; ++trial) {
    std::string s;
    const int n = 2 + rng() % 5;
    for (int i = 0; i < n; ++i) s += (i ? " " : "") + std::string(syl[rng() % 10]);
    ResolvedFigure r = ResolvePerson(s, dbs);
    if (!r.resolved()) continue;
    EXPECT_NE(s.find(r.matched_alias), std::string::npos) << s;
    EXPECT_FALSE(dbs.PersonHits(r.matched_alias).empty());
    if (r.method == Method::kSegment) EXPECT_NE(r.matched_alias, s);
    if (r.method == Method::kDirect) EXPECT_EQ(r.matched_alias, s);
  }
}

TEST(Disambiguate, GongJinResolvesToZhouMiBySocialRank) {
  corpus::CorpusHandle c = CaseStudyCorpus();
  const HandscrollRecord &h = c->handscroll(ids::kAutumnColors);
  ResolvedFigure r = ResolvePersonOnHandscroll("Gong Jin", *c, h, std::string("Yuan"));
  ASSERT_TRUE(r.resolved());
  EXPECT_EQ(*r.person_id, ids::kZhouMi);
  EXPECT_EQ(r.method, Method::kSocialRank);
  EXPECT_FALSE(r.ambiguous);
  EXPECT_GT(r.candidates.size(), 20u);
  std::set<std::string> in_era;
  for (const auto &cand : r.candidates) {
    if (cand.in_era) in_era.insert(cand.person_id);
  }
  EXPECT_EQ(in_era, (std::set<std::string>{ids::kZhouMi, ids::kLiKezhong}));
  EXPECT_EQ(r.candidates[0].connections, 23);
  EXPECT_EQ(r.candidates[1].person_id, ids::kLiKezhong);
  EXPECT_EQ(r.candidates[1].connections, 0);
}

TEST(Disambiguate, SingleCandidate) {
  ReferenceDatabases dbs = CaseStudyDatabases();
  ResolvedFigure r = DisambiguateSameName({ids::kLiKezhong}, std::string("Yuan"), {}, dbs);
  EXPECT_EQ(*r.person_id, ids::kLiKezhong);
  EXPECT_EQ(r.method, Method::kEraFilter);
  EXPECT_FALSE(r.ambiguous);
}

TEST(Disambiguate, TieIsFlaggedWithSmallestId) {
  ReferenceDatabases dbs = CaseStudyDatabases();
  ResolvedFigure r = DisambiguateSameName({"cbdb:0003", "cbdb:0002"}, std::string("Yuan"),
                                          {{"cbdb:0002", 4}, {"cbdb:0003", 4}}, dbs);
  EXPECT_TRUE(r.ambiguous);
  EXPECT_EQ(*r.person_id, "cbdb:0002");
}

TEST(Disambiguate, EraFilterDroppedWhenItEmptiesTheSet) {
  ReferenceDatabases dbs = CaseStudyDatabases();
  ResolvedFigure r = DisambiguateSameName({"cbdb:0910", "cbdb:0911"}, std::string("Yuan"),
                                          {{"cbdb:0911", 1}}, dbs);
  EXPECT_TRUE(r.era_filter_dropped);
  EXPECT_EQ(*r.person_id, "cbdb:0911");
  EXPECT_EQ(r.method, Method::kSocialRank);
}

TEST(Disambiguate, DeterministicTotalOrder) {
  ReferenceDatabases dbs = CaseStudyDatabases();
  std::vector<std::string> all;
  for (const auto &hit : dbs.PersonHits("Gong Jin")) all.push_back(hit.id);
  std::mt19937 rng(4);
  ConnectionCounts counts;
  for (const auto &id : all) counts[id] = rng() % 3;
  ResolvedFigure first = DisambiguateSameName(all, std::string("Ming"), counts, dbs);
  for (int trial = 0; trial < 20; ++trial) {
    std::shuffle(all.begin(), all.end(), rng);
    ResolvedFigure again = DisambiguateSameName(all, std::string("Ming"), counts, dbs);
    EXPECT_EQ(ToJson(again), ToJson(first));
  }
  EXPECT_THROW(DisambiguateSameName({}, std::nullopt, {}, dbs), InvalidArgument);
  EXPECT_THROW(DisambiguateSameName({"cbdb:nobody"}, std::nullopt, {}, dbs), InvalidArgument);
}

TEST(SelectCandidate, ManualOverride) {
  corpus::CorpusHandle c = CaseStudyCorpus();
  ResolvedFigure r = ResolvePersonOnHandscroll("Gong Jin", *c, c->handscroll(ids::kAutumnColors));
  ResolvedFigure m = SelectCandidate(r, ids::kLiKezhong, c->dbs());
  EXPECT_EQ(*m.person_id, ids::kLiKezhong);
  EXPECT_EQ(m.method, Method::kManual);
  EXPECT_EQ(m.candidates.size(), r.candidates.size());
  EXPECT_THROW(SelectCandidate(r, ids::kQianlong, c->dbs()), InvalidArgument);
}

TEST(ResolveLocation, Provenance) {
  ReferenceDatabases dbs = CaseStudyDatabases();
  ResolvedPlace q = ResolveLocation("Qizhou", dbs);
  ASSERT_TRUE(q.resolved());
  EXPECT_EQ(q.sources, (std::set<std::string>{"chgis", "plaad"}));
  ResolvedPlace que = ResolveLocation("Que mountain", dbs);
  ASSERT_TRUE(que.resolved());
  EXPECT_EQ(que.sources, (std::set<std::string>{"plaad"}));
  EXPECT_FALSE(ResolveLocation("Atlantis", dbs).resolved());
}

TEST(LinkMentions, ThingsStayRaw) {
  corpus::CorpusHandle c = CaseStudyCorpus();
  auto links = LinkMentions(*c, c->handscroll(ids::kAutumnColors));
  int things = 0, unresolved_figures = 0;
  for (const auto &l : links) {
    if (l.mention.tag == EntityTag::kThing || l.mention.tag == EntityTag::kTime) {
      EXPECT_FALSE(l.figure || l.place);
      ++things;
    }
    if (l.figure && !l.figure->resolved()) ++unresolved_figures;
    if (l.mention.surface == "Gong Jin") EXPECT_EQ(*l.figure->person_id, ids::kZhouMi);
  }
  EXPECT_GT(things, 0);
  EXPECT_EQ(unresolved_figures, 1);
}

// ---- F1 ----

TEST(EvaluateF1, Examples) {
  std::vector<EntityMention> gold = {M(0, 2, EntityTag::kFigure), M(5, 7, EntityTag::kLocation)};
  F1Score perfect = EvaluateF1(gold, gold);
  EXPECT_EQ(perfect.precision, 1.0);
  EXPECT_EQ(perfect.recall, 1.0);
  EXPECT_EQ(perfect.f1, 1.0);
  F1Score none = EvaluateF1({M(10, 12, EntityTag::kFigure)}, gold);
  EXPECT_EQ(none.f1, 0.0);
  EXPECT_EQ(none.precision, 0.0);
  F1Score half = EvaluateF1({M(0, 2, EntityTag::kFigure), M(5, 7, EntityTag::kFigure)}, gold);
  EXPECT_DOUBLE_EQ(half.precision, 0.5);
  EXPECT_DOUBLE_EQ(half.recall, 0.5);
  EXPECT_DOUBLE_EQ(half.f1, 0.5);
  EXPECT_EQ(EvaluateF1({}, {}).f1, 0.0);
  // A gold mention matches once.
  F1Score dup = EvaluateF1({gold[0], gold[0]}, gold);
  EXPECT_DOUBLE_EQ(dup.precision, 0.5);
}

}  // namespace
}  // namespace scrollbio::entity
