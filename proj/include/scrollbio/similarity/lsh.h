#ifndef SCROLLBIO_SIMILARITY_LSH_H_
#define SCROLLBIO_SIMILARITY_LSH_H_

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "scrollbio/util/error.h"
#include "scrollbio/util/feature_vector.h"

namespace scrollbio::similarity {

// Cosine of a zero vector.
class UndefinedSimilarity : public Error {
 public:
  using Error::Error;
};

// dot(a, b) / (|a| |b|), accumulated in double. Throws InvalidArgument on a
// dimension mismatch and UndefinedSimilarity if either vector is zero.
double CosineSimilarity(const FeatureVector &a, const FeatureVector &b);

struct Neighbor {
  std::string id;
  double similarity = 0;
  bool operator==(const Neighbor &) const = default;
};

struct LshParams {
  int tables = 8;
  int bits = 16;
  uint64_t seed = 1;
};

// Random-hyperplane LSH for cosine similarity. Each table hashes a vector to
// the sign pattern of its projections on `bits` hyperplanes; a query takes
// the union of its buckets over all tables and re-ranks it exactly.
// Immutable once built; queries may run concurrently.
class LshIndex {
 public:
  using Entries = std::vector<std::pair<std::string, FeatureVector>>;

  // Throws InvalidArgument on bad parameters, a duplicate id or a
  // dimension mismatch (naming the offending id).
  static LshIndex Build(const Entries &vectors, const LshParams &params);
  static LshIndex Build(const std::map<std::string, FeatureVector> &vectors,
                        const LshParams &params);

  // Top k candidates by exact cosine, descending, ties by id. Throws
  // UndefinedSimilarity on a zero query, InvalidArgument on k < 1 or a
  // query of the wrong dimension.
  std::vector<Neighbor> Query(const FeatureVector &query, size_t k) const;
  // Indexes into ids() of the bucket union, ascending.
  std::vector<size_t> Candidates(const FeatureVector &query) const;
  uint64_t Hash(size_t table, const FeatureVector &v) const;

  const LshParams &params() const { return params_; }
  uint32_t dim() const { return dim_; }
  size_t size() const { return ids_.size(); }
  const std::vector<std::string> &ids() const { return ids_; }
  const std::vector<std::vector<double>> &hyperplanes() const { return planes_; }
  const std::vector<std::unordered_map<uint64_t, std::vector<uint32_t>>> &buckets() const {
    return buckets_;
  }

  // Binary file: "LSH1", u64 seed, u32 tables, u32 bits, u32 dim, u32 count,
  // count ids (u32 length + bytes), then per table u32 bucket count and per
  // bucket u64 code, u32 size, size u32 member indexes. Little endian.
  void Save(const std::string &path) const;
  // Reads a saved index; the vectors are supplied again and must match the
  // saved ids and buckets. Throws Error on corrupt or mismatched input.
  static LshIndex Load(const std::string &path, const Entries &vectors);

 private:
  void Init(const LshParams &params, uint32_t dim);

  LshParams params_;
  uint32_t dim_ = 0;
  std::vector<std::string> ids_;
  std::vector<FeatureVector> vectors_;
  std::vector<double> norms_;
  // tables * bits rows of dim values.
  std::vector<std::vector<double>> planes_;
  std::vector<std::unordered_map<uint64_t, std::vector<uint32_t>>> buckets_;
};

// Exact top-k by cosine over all entries (for small sets and checks).
std::vector<Neighbor> ExactNearest(const LshIndex::Entries &vectors,
                                   const FeatureVector &query, size_t k);

}  // namespace scrollbio::similarity

#endif  // SCROLLBIO_SIMILARITY_LSH_H_
