#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "scrollbio/chrono/era_date.h"
#include "scrollbio/chrono/sexagenary.h"

namespace scrollbio::chrono {
namespace {

// Walks the cycle one year at a time from 1984, a Jiazi year, advancing
// stem and branch counters independently.
SexagenaryName WalkFrom1984(int year) {
  int stem = 0, branch = 0;
  int step = year >= 1984 ? 1 : -1;
  for (int y = 1984; y != year; y += step) {
    stem = (stem + step + kStems) % kStems;
    branch = (branch + step + kBranches) % kBranches;
  }
  return {stem, branch};
}

EraTable SampleEras() {
  return EraTable({
      {"Yuanzhen", "Yuan", 1295, 1297, {"元貞"}},
      {"Qianlong", "Qing", 1736, 1796, {"乾隆"}},
      {"Kangxi", "Qing", 1662, 1722, {"康熙"}},
      {"Jingtai", "Ming", 1450, 1457, {}},
  });
}

TEST(SexagenaryTest, CycleOrigin) {
  EXPECT_EQ(SexagenaryIndex({0, 0}), 0);
}

TEST(SexagenaryTest, Wuchen) {
  EXPECT_EQ(SexagenaryIndex({4, 4}), 4);
  SexagenaryName walked = WalkFrom1984(1748);
  EXPECT_EQ(walked, (SexagenaryName{4, 4}));
  EXPECT_EQ(CycleIndexOfYear(1748), 4);
}

TEST(SexagenaryTest, ParityMismatchRejected) {
  EXPECT_THROW(SexagenaryIndex({0, 1}), InvalidArgument);
  EXPECT_THROW(SexagenaryIndex({10, 0}), InvalidArgument);
  EXPECT_THROW(SexagenaryIndex({0, -1}), InvalidArgument);
}

TEST(SexagenaryTest, FullCycleRoundTrip) {
  for (int n = 0; n < kCycleLength; ++n) {
    SexagenaryName name{n % kStems, n % kBranches};
    EXPECT_EQ(SexagenaryIndex(name), n);
    EXPECT_EQ(SexagenaryFromIndex(n), name);
  }
}

TEST(SexagenaryTest, YearIndexAgreesWithWalk) {
  for (int y = 1500; y < 2100; y += 7) {
    EXPECT_EQ(SexagenaryFromIndex(CycleIndexOfYear(y)), WalkFrom1984(y)) << y;
  }
  EXPECT_EQ(CycleIndexOfYear(-3), CycleIndexOfYear(57));
}

TEST(CycleNamesTest, ParsesSpellings) {
  const CycleNames &names = CycleNames::Default();
  EXPECT_EQ(names.Parse("Wuchen"), (SexagenaryName{4, 4}));
  EXPECT_EQ(names.Parse("wu-chen"), (SexagenaryName{4, 4}));
  EXPECT_EQ(names.Parse("戊辰"), (SexagenaryName{4, 4}));
  EXPECT_EQ(names.Parse("Wuwu"), (SexagenaryName{4, 6}));
  EXPECT_EQ(names.Parse("Renyin"), (SexagenaryName{8, 2}));
  EXPECT_FALSE(names.Parse("Wu").has_value());
  EXPECT_FALSE(names.Parse("second year").has_value());
  EXPECT_EQ(names.Display({4, 4}), "Wuchen");
}

TEST(CycleNamesTest, FromJsonConfig) {
  auto config = nlohmann::json::parse(R"({
    "stems": ["A","B","C","D","E","F","G","H","I","J"],
    "branches": ["a","b","c","d","e","f","g","h","i","j","k","l"]})");
  CycleNames names = CycleNames::FromJson(config);
  EXPECT_EQ(names.Parse("Ee"), (SexagenaryName{4, 4}));
  EXPECT_THROW(CycleNames::FromJson(nlohmann::json::parse(R"({"stems":[]})")),
               InvalidArgument);
}

TEST(OrdinalTest, Phrases) {
  EXPECT_EQ(ParseOrdinalYear("first year"), 1);
  EXPECT_EQ(ParseOrdinalYear("Second Year"), 2);
  EXPECT_EQ(ParseOrdinalYear("twenty-first year"), 21);
  EXPECT_EQ(ParseOrdinalYear("thirtieth year"), 30);
  EXPECT_EQ(ParseOrdinalYear("13th year"), 13);
  EXPECT_EQ(ParseOrdinalYear("year 7"), 7);
  EXPECT_EQ(ParseOrdinalYear("元年"), 1);
  EXPECT_EQ(ParseOrdinalYear("二年"), 2);
  EXPECT_EQ(ParseOrdinalYear("十三年"), 13);
  EXPECT_EQ(ParseOrdinalYear("二十一年"), 21);
  EXPECT_EQ(ParseOrdinalYear("廿年"), 20);
  EXPECT_FALSE(ParseOrdinalYear("second").has_value());
  EXPECT_FALSE(ParseOrdinalYear("year").has_value());
}

TEST(EraDateTest, OrdinalForm) {
  DateResolution r = ParseEraDate("Yuanzhen second year", SampleEras());
  EXPECT_EQ(r.year, 1296);
  EXPECT_FALSE(r.ambiguous);
  EXPECT_EQ(r.alternatives, std::vector<int>{1296});
  EXPECT_EQ(r.era_name, "Yuanzhen");
  EXPECT_EQ(r.dynasty, "Yuan");
  EXPECT_EQ(ParseEraDate("元貞二年", SampleEras()).year, 1296);
}

TEST(EraDateTest, FirstYearIsStart) {
  EXPECT_EQ(ParseEraDate("Jingtai first year", SampleEras()).year, 1450);
  EXPECT_EQ(ParseEraDate("Qianlong first year", SampleEras()).year, 1736);
}

TEST(EraDateTest, CycleForm) {
  DateResolution r = ParseEraDate("Qianlong Wuchen", SampleEras());
  EXPECT_EQ(r.year, 1748);
  EXPECT_FALSE(r.ambiguous);
  EXPECT_EQ(ParseEraDate("乾隆戊辰", SampleEras()).year, 1748);
  EXPECT_EQ(ParseEraDate("Qianlong Wuchen year", SampleEras()).year, 1748);
}

TEST(EraDateTest, LongEraCycleIsAmbiguous) {
  // (y - 4) mod 60 == 38 within 1662..1722.
  std::vector<int> oracle;
  for (int y = 1662; y <= 1722; ++y) {
    if (((y - 4) % 60 + 60) % 60 == 38) oracle.push_back(y);
  }
  ASSERT_EQ(oracle, (std::vector<int>{1662, 1722}));
  DateResolution r = ParseEraDate("Kangxi Renyin", SampleEras());
  EXPECT_TRUE(r.ambiguous);
  EXPECT_EQ(r.alternatives, oracle);
  EXPECT_EQ(r.year, 1662);
}

TEST(EraDateTest, Errors) {
  EXPECT_THROW(ParseEraDate("Zhiyuan second year", SampleEras()), UnknownEra);
  EXPECT_THROW(ParseEraDate("Yuanzhen fifth year", SampleEras()), DateOutOfRange);
  // Jiazi index 0: (y-4) mod 60 == 0 needs y = 1444 or 1504, outside Jingtai.
  EXPECT_THROW(ParseEraDate("Jingtai Jiazi", SampleEras()), DateOutOfRange);
  EXPECT_THROW(ParseEraDate("Qianlong spring", SampleEras()), DateSyntaxError);
  EXPECT_THROW(ParseEraDate("Qianlong Jiachou", SampleEras()), InvalidArgument);
}

TEST(EraDateTest, HomonymsNeedDynastyHint) {
  EraTable eras({{"Jianwu", "Eastern Han", 25, 56, {}},
                 {"Jianwu", "Eastern Jin", 317, 318, {}}});
  try {
    ParseEraDate("Jianwu second year", eras);
    FAIL() << "expected UnknownEra";
  } catch (const UnknownEra &e) {
    EXPECT_EQ(e.homonyms(),
              (std::vector<std::string>{"Eastern Han", "Eastern Jin"}));
  }
  EXPECT_EQ(ParseEraDate("Jianwu second year", eras, "Eastern Jin").year, 318);
  EXPECT_THROW(ParseEraDate("Jianwu second year", eras, "Tang"), UnknownEra);
}

TEST(EraDateTest, LongestPrefixWins) {
  EraTable eras({{"Yuan", "Test", 1000, 1010, {}},
                 {"Yuanzhen", "Yuan", 1295, 1297, {}}});
  EXPECT_EQ(ParseEraDate("Yuanzhen second year", eras).year, 1296);
  EXPECT_EQ(ParseEraDate("Yuan second year", eras).year, 1001);
}

TEST(EraTableTest, RejectsBadEntries) {
  EXPECT_THROW(EraTable({{"A", "X", 10, 5, {}}}), InvalidArgument);
  EXPECT_THROW(EraTable({{"A", "X", 1, 5, {}}, {"A", "X", 6, 9, {}}}),
               InvalidArgument);
  EXPECT_NO_THROW(EraTable({{"A", "X", 1, 5, {}}, {"A", "Y", 6, 9, {}}}));
}

TEST(EraDatePropertyTest, OrdinalMatchesStartPlusOffset) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    int start = std::uniform_int_distribution<int>(-200, 1900)(rng);
    int len = std::uniform_int_distribution<int>(0, 70)(rng);
    EraTable eras({{"Testera", "X", start, start + len, {}}});
    for (int k = 1; start + k - 1 <= start + len && k <= 99; ++k) {
      EXPECT_EQ(ParseEraDate("Testera year " + std::to_string(k), eras).year,
                start + k - 1);
    }
  }
}

TEST(EraDatePropertyTest, CycleYearsMatchBruteForce) {
  std::mt19937 rng(11);
  const CycleNames &names = CycleNames::Default();
  for (int trial = 0; trial < 500; ++trial) {
    int start = std::uniform_int_distribution<int>(-500, 1900)(rng);
    int len = std::uniform_int_distribution<int>(0, 130)(rng);
    int index = std::uniform_int_distribution<int>(0, 59)(rng);
    EraTable eras({{"Testera", "X", start, start + len, {}}});
    std::string text = "Testera " + names.Display(SexagenaryFromIndex(index));

    // Brute force: step through the cycle from the oracle walk.
    std::vector<int> expected;
    for (int y = start; y <= start + len; ++y) {
      SexagenaryName n = WalkFrom1984(y);
      if (n.stem == index % 10 && n.branch == index % 12) expected.push_back(y);
    }
    if (expected.empty()) {
      EXPECT_THROW(ParseEraDate(text, eras), DateOutOfRange);
      continue;
    }
    DateResolution r = ParseEraDate(text, eras);
    EXPECT_EQ(r.alternatives, expected);
    EXPECT_EQ(r.year, expected.front());
    EXPECT_EQ(r.ambiguous, expected.size() > 1);
    EXPECT_TRUE(std::is_sorted(r.alternatives.begin(), r.alternatives.end()));
  }
}

}  // namespace
}  // namespace scrollbio::chrono
