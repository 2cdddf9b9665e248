#ifndef SCROLLBIO_SIMILARITY_THEME_H_
#define SCROLLBIO_SIMILARITY_THEME_H_

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "scrollbio/similarity/lsh.h"

namespace scrollbio::similarity {

// Unigrams and adjacent bigrams. An ASCII word (letters and digits,
// lowercased) is one unit; every CJK code point is one unit. Punctuation and
// other symbols end a run, and bigrams never cross a run boundary; spaces
// separate ASCII words but do not end a run.
std::vector<std::string> ThemeTokens(std::string_view text);

// TF-IDF over painting texts: tf = 1 + ln(count), idf = ln((1+N)/(1+df)) + 1,
// document vectors L2-normalized.
class ThemeIndex {
 public:
  using SparseVector = std::map<std::string, double>;

  explicit ThemeIndex(const std::map<std::string, std::string> &documents);

  size_t size() const { return vectors_.size(); }
  const std::map<std::string, int> &document_frequency() const { return df_; }
  double Idf(const std::string &token) const;
  // Throws NotFound.
  const SparseVector &Vector(const std::string &id) const;
  double Similarity(const std::string &a, const std::string &b) const;
  // Top k other documents by cosine, descending, ties by id. Throws NotFound.
  std::vector<Neighbor> Similar(const std::string &id, size_t k) const;

 private:
  size_t documents_ = 0;
  std::map<std::string, int> df_;
  std::map<std::string, SparseVector> vectors_;
};

}  // namespace scrollbio::similarity

#endif  // SCROLLBIO_SIMILARITY_THEME_H_
