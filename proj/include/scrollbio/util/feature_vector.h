#ifndef SCROLLBIO_UTIL_FEATURE_VECTOR_H_
#define SCROLLBIO_UTIL_FEATURE_VECTOR_H_

#include <vector>

namespace scrollbio {

// Image embedding produced upstream (seal or painting encoder).
struct FeatureVector {
  std::vector<float> values;

  size_t dim() const { return values.size(); }
  bool operator==(const FeatureVector &) const = default;
};

}  // namespace scrollbio

#endif  // SCROLLBIO_UTIL_FEATURE_VECTOR_H_
