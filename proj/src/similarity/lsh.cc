#include "scrollbio/similarity/lsh.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numbers>
#include <random>
#include <set>

namespace scrollbio::similarity {
namespace {

double Norm(const FeatureVector &v) {
  double s = 0;
  for (float x : v.values) s += double(x) * double(x);
  return std::sqrt(s);
}

double Dot(const FeatureVector &a, const FeatureVector &b) {
  double s = 0;
  for (size_t i = 0; i < a.values.size(); ++i) s += double(a.values[i]) * double(b.values[i]);
  return s;
}

// Uniform in (0, 1].
double Unit(std::mt19937_64 &rng) {
  return (double(rng() >> 11) + 1.0) * 0x1.0p-53;
}

// Standard normals by Box-Muller so that planes are the same on every
// standard library (std::normal_distribution is implementation defined).
std::vector<double> Gaussians(std::mt19937_64 &rng, size_t n) {
  std::vector<double> out;
  out.reserve(n + 1);
  while (out.size() < n) {
    double u1 = Unit(rng), u2 = Unit(rng);
    double r = std::sqrt(-2.0 * std::log(u1));
    out.push_back(r * std::cos(2 * std::numbers::pi * u2));
    out.push_back(r * std::sin(2 * std::numbers::pi * u2));
  }
  out.resize(n);
  return out;
}

bool AllFinite(const FeatureVector &v) {
  return std::all_of(v.values.begin(), v.values.end(), [](float x) { return std::isfinite(x); });
}

void SortNeighbors(std::vector<Neighbor> &out) {
  std::sort(out.begin(), out.end(), [](const Neighbor &a, const Neighbor &b) {
    if (a.similarity != b.similarity) return a.similarity > b.similarity;
    return a.id < b.id;
  });
}

template <typename T>
void Put(std::ofstream &out, T v) {
  unsigned char buf[sizeof(T)];
  for (size_t i = 0; i < sizeof(T); ++i) buf[i] = static_cast<unsigned char>(uint64_t(v) >> (8 * i));
  out.write(reinterpret_cast<const char *>(buf), sizeof(T));
}

template <typename T>
T Get(std::ifstream &in, const std::string &path) {
  unsigned char buf[sizeof(T)];
  if (!in.read(reinterpret_cast<char *>(buf), sizeof(T))) throw Error(path + ": truncated index file");
  uint64_t v = 0;
  for (size_t i = 0; i < sizeof(T); ++i) v |= uint64_t(buf[i]) << (8 * i);
  return static_cast<T>(v);
}

}  // namespace

double CosineSimilarity(const FeatureVector &a, const FeatureVector &b) {
  if (a.dim() != b.dim())
    throw InvalidArgument("cosine: dimension mismatch " + std::to_string(a.dim()) + " vs " +
                          std::to_string(b.dim()));
  double na = Norm(a), nb = Norm(b);
  if (na == 0 || nb == 0) throw UndefinedSimilarity("cosine: zero vector");
  return std::clamp(Dot(a, b) / (na * nb), -1.0, 1.0);
}

void LshIndex::Init(const LshParams &params, uint32_t dim) {
  if (params.tables < 1) throw InvalidArgument("lsh: tables must be >= 1");
  if (params.bits < 1 || params.bits > 64) throw InvalidArgument("lsh: bits must be in [1, 64]");
  params_ = params;
  dim_ = dim;
  std::mt19937_64 rng(params.seed);
  size_t rows = size_t(params.tables) * size_t(params.bits);
  planes_.assign(rows, {});
  for (auto &p : planes_) {
    p = Gaussians(rng, dim);
    double n = 0;
    for (double x : p) n += x * x;
    n = std::sqrt(n);
    if (n > 0)
      for (double &x : p) x /= n;
  }
  buckets_.assign(size_t(params.tables), {});
}

uint64_t LshIndex::Hash(size_t table, const FeatureVector &v) const {
  uint64_t code = 0;
  size_t bits = size_t(params_.bits);
  for (size_t b = 0; b < bits; ++b) {
    const auto &p = planes_[table * bits + b];
    double s = 0;
    for (size_t i = 0; i < dim_; ++i) s += p[i] * double(v.values[i]);
    if (s >= 0) code |= uint64_t(1) << b;
  }
  return code;
}

LshIndex LshIndex::Build(const Entries &vectors, const LshParams &params) {
  LshIndex idx;
  uint32_t dim = vectors.empty() ? 0 : uint32_t(vectors.front().second.dim());
  idx.Init(params, dim);
  std::set<std::string> seen;
  for (const auto &[id, v] : vectors) {
    if (v.dim() != dim)
      throw InvalidArgument("lsh: dimension mismatch for " + id + ": " + std::to_string(v.dim()) +
                            " vs " + std::to_string(dim));
    if (!AllFinite(v)) throw InvalidArgument("lsh: non-finite value in " + id);
    if (!seen.insert(id).second) throw InvalidArgument("lsh: duplicate id " + id);
    if (Norm(v) == 0) throw InvalidArgument("lsh: zero vector for " + id);
    auto n = uint32_t(idx.ids_.size());
    idx.ids_.push_back(id);
    idx.vectors_.push_back(v);
    idx.norms_.push_back(Norm(v));
    for (size_t t = 0; t < idx.buckets_.size(); ++t) idx.buckets_[t][idx.Hash(t, v)].push_back(n);
  }
  return idx;
}

LshIndex LshIndex::Build(const std::map<std::string, FeatureVector> &vectors,
                         const LshParams &params) {
  return Build(Entries(vectors.begin(), vectors.end()), params);
}

std::vector<size_t> LshIndex::Candidates(const FeatureVector &query) const {
  if (ids_.empty()) return {};
  if (query.dim() != dim_)
    throw InvalidArgument("lsh: query dimension " + std::to_string(query.dim()) + ", index " +
                          std::to_string(dim_));
  std::vector<size_t> out;
  for (size_t t = 0; t < buckets_.size(); ++t) {
    auto it = buckets_[t].find(Hash(t, query));
    if (it == buckets_[t].end()) continue;
    out.insert(out.end(), it->second.begin(), it->second.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Neighbor> LshIndex::Query(const FeatureVector &query, size_t k) const {
  if (k < 1) throw InvalidArgument("lsh: k must be >= 1");
  double qn = Norm(query);
  if (qn == 0) throw UndefinedSimilarity("lsh: zero query vector");
  std::vector<Neighbor> out;
  for (size_t i : Candidates(query)) {
    double sim = std::clamp(Dot(query, vectors_[i]) / (qn * norms_[i]), -1.0, 1.0);
    out.push_back({ids_[i], sim});
  }
  SortNeighbors(out);
  if (out.size() > k) out.resize(k);
  return out;
}

void LshIndex::Save(const std::string &path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path);
  out.write("LSH1", 4);
  Put<uint64_t>(out, params_.seed);
  Put<uint32_t>(out, uint32_t(params_.tables));
  Put<uint32_t>(out, uint32_t(params_.bits));
  Put<uint32_t>(out, dim_);
  Put<uint32_t>(out, uint32_t(ids_.size()));
  for (const auto &id : ids_) {
    Put<uint32_t>(out, uint32_t(id.size()));
    out.write(id.data(), std::streamsize(id.size()));
  }
  for (const auto &table : buckets_) {
    std::vector<uint64_t> codes;
    for (const auto &[code, members] : table) codes.push_back(code);
    std::sort(codes.begin(), codes.end());
    Put<uint32_t>(out, uint32_t(codes.size()));
    for (uint64_t code : codes) {
      const auto &members = table.at(code);
      Put<uint64_t>(out, code);
      Put<uint32_t>(out, uint32_t(members.size()));
      for (uint32_t m : members) Put<uint32_t>(out, m);
    }
  }
  if (!out) throw Error("write failed: " + path);
}

LshIndex LshIndex::Load(const std::string &path, const Entries &vectors) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, "LSH1", 4) != 0)
    throw Error(path + ": not an LSH1 index");
  LshParams params;
  params.seed = Get<uint64_t>(in, path);
  params.tables = int(Get<uint32_t>(in, path));
  params.bits = int(Get<uint32_t>(in, path));
  uint32_t dim = Get<uint32_t>(in, path);
  uint32_t count = Get<uint32_t>(in, path);
  if (count != vectors.size())
    throw Error(path + ": index has " + std::to_string(count) + " ids, " +
                std::to_string(vectors.size()) + " vectors supplied");
  LshIndex idx;
  idx.Init(params, dim);
  for (uint32_t i = 0; i < count; ++i) {
    uint32_t len = Get<uint32_t>(in, path);
    if (len > (1u << 20)) throw Error(path + ": corrupt id length");
    std::string id(len, '\0');
    if (!in.read(id.data(), len)) throw Error(path + ": truncated index file");
    const auto &[vid, v] = vectors[i];
    if (vid != id) throw Error(path + ": id " + id + " does not match supplied " + vid);
    if (v.dim() != dim) throw Error(path + ": dimension mismatch for " + id);
    idx.ids_.push_back(id);
    idx.vectors_.push_back(v);
    idx.norms_.push_back(Norm(v));
    if (idx.norms_.back() == 0) throw Error(path + ": zero vector for " + id);
  }
  for (auto &table : idx.buckets_) {
    uint32_t nb = Get<uint32_t>(in, path);
    for (uint32_t b = 0; b < nb; ++b) {
      uint64_t code = Get<uint64_t>(in, path);
      uint32_t size = Get<uint32_t>(in, path);
      if (size > count) throw Error(path + ": corrupt bucket");
      auto &members = table[code];
      for (uint32_t m = 0; m < size; ++m) {
        uint32_t j = Get<uint32_t>(in, path);
        if (j >= count) throw Error(path + ": bucket member out of range");
        members.push_back(j);
      }
    }
  }
  for (size_t t = 0; t < idx.buckets_.size(); ++t) {
    std::vector<int> hits(count, 0);
    for (const auto &[code, members] : idx.buckets_[t])
      for (uint32_t m : members) {
        if (idx.Hash(t, idx.vectors_[m]) != code)
          throw Error(path + ": stale bucket for " + idx.ids_[m]);
        ++hits[m];
      }
    for (uint32_t m = 0; m < count; ++m)
      if (hits[m] != 1) throw Error(path + ": " + idx.ids_[m] + " not in exactly one bucket");
  }
  return idx;
}

std::vector<Neighbor> ExactNearest(const LshIndex::Entries &vectors, const FeatureVector &query,
                                   size_t k) {
  std::vector<Neighbor> out;
  for (const auto &[id, v] : vectors) out.push_back({id, CosineSimilarity(query, v)});
  SortNeighbors(out);
  if (out.size() > k) out.resize(k);
  return out;
}

}  // namespace scrollbio::similarity
