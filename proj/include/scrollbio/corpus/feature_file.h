#ifndef SCROLLBIO_CORPUS_FEATURE_FILE_H_
#define SCROLLBIO_CORPUS_FEATURE_FILE_H_

#include <string>
#include <vector>

#include "scrollbio/util/feature_vector.h"

namespace scrollbio::corpus {

// Binary feature matrix: magic "SFV1", u32 count, u32 dim, then count * dim
// little-endian IEEE-754 floats, row major.
struct FeatureMatrix {
  uint32_t dim = 0;
  std::vector<FeatureVector> rows;
};

// Throws LoadError on a bad magic, truncated payload or non-finite value.
FeatureMatrix ReadFeatureFile(const std::string &path);

void WriteFeatureFile(const std::string &path, const FeatureMatrix &matrix);

}  // namespace scrollbio::corpus

#endif  // SCROLLBIO_CORPUS_FEATURE_FILE_H_
