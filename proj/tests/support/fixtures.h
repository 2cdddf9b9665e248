#ifndef SCROLLBIO_TESTS_SUPPORT_FIXTURES_H_
#define SCROLLBIO_TESTS_SUPPORT_FIXTURES_H_

#include <map>
#include <string>

#include "scrollbio/corpus/corpus.h"

namespace scrollbio::testing {

// Ids used by the case-study fixture.
namespace ids {
inline constexpr const char *kAutumnColors = "hs:autumn-colors";
inline constexpr const char *kWaterVillage = "hs:water-village";
inline constexpr const char *kAnonymousAutumn = "hs:anonymous-autumn";
inline constexpr const char *kDongLandscape = "hs:dong-landscape";

inline constexpr const char *kZhaoMengfu = "cbdb:0001";
inline constexpr const char *kQianlong = "cbdb:0301";
inline constexpr const char *kDongQichang = "cbdb:0202";
inline constexpr const char *kXiangYuanbian = "cbdb:0203";
inline constexpr const char *kQianPu = "cbdb:0201";
inline constexpr const char *kZhouMi = "cbdb:0900";
inline constexpr const char *kLiKezhong = "cbdb:0901";
inline constexpr const char *kQueenMother = "perad:0001";
}  // namespace ids

// Dynasties, eras, places and the person store shared by the fixtures.
ReferenceDatabases CaseStudyDatabases();

// A corpus built around a handscroll collected or appreciated by fifteen
// figures across Yuan, Ming and Qing; one emperor left 33 seals and nine
// inscriptions. Also holds three further paintings for similarity queries.
// With image_root set, images are rendered there as PNG files.
corpus::CorpusHandle CaseStudyCorpus();

// Writes the case-study corpus and its images into dir.
void WriteCaseStudyCorpus(const std::string &dir);

// Synthetic strip image: silk background, a colorful core painting, dark
// glyph rows inside text regions and red seal boxes.
void RenderHandscrollImage(const HandscrollRecord &h, const std::string &path);

// Code point offsets of `needle` in `text`; aborts if absent.
EntityMention MentionOf(const std::string &text, const std::string &needle,
                        EntityTag tag, double confidence = 0.9);

}  // namespace scrollbio::testing

#endif  // SCROLLBIO_TESTS_SUPPORT_FIXTURES_H_
