#include "scrollbio/corpus/feature_file.h"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>

#include "scrollbio/util/error.h"

namespace scrollbio::corpus {
namespace {

static_assert(std::endian::native == std::endian::little,
              "feature files are read by reinterpretation on little-endian "
              "hosts only");

constexpr char kMagic[4] = {'S', 'F', 'V', '1'};

uint32_t ReadU32(std::istream &in) {
  unsigned char b[4];
  in.read(reinterpret_cast<char *>(b), 4);
  return static_cast<uint32_t>(b[0]) | (static_cast<uint32_t>(b[1]) << 8) |
         (static_cast<uint32_t>(b[2]) << 16) |
         (static_cast<uint32_t>(b[3]) << 24);
}

void WriteU32(std::ostream &out, uint32_t v) {
  unsigned char b[4] = {static_cast<unsigned char>(v & 0xFF),
                        static_cast<unsigned char>((v >> 8) & 0xFF),
                        static_cast<unsigned char>((v >> 16) & 0xFF),
                        static_cast<unsigned char>((v >> 24) & 0xFF)};
  out.write(reinterpret_cast<const char *>(b), 4);
}

}  // namespace

FeatureMatrix ReadFeatureFile(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError(path, "", "", "cannot open feature file");
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0) {
    throw LoadError(path, "", "", "bad magic, expected SFV1");
  }
  const uint32_t count = ReadU32(in);
  FeatureMatrix m;
  m.dim = ReadU32(in);
  if (!in) throw LoadError(path, "", "", "truncated header");
  m.rows.resize(count);
  for (uint32_t r = 0; r < count; ++r) {
    auto &values = m.rows[r].values;
    values.resize(m.dim);
    in.read(reinterpret_cast<char *>(values.data()),
            static_cast<std::streamsize>(m.dim * sizeof(float)));
    if (!in) {
      throw LoadError(path, "row " + std::to_string(r), "",
                      "truncated payload");
    }
    for (float v : values) {
      if (!std::isfinite(v)) {
        throw LoadError(path, "row " + std::to_string(r), "",
                        "non-finite feature value");
      }
    }
  }
  return m;
}

void WriteFeatureFile(const std::string &path, const FeatureMatrix &matrix) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write feature file: " + path);
  out.write(kMagic, 4);
  WriteU32(out, static_cast<uint32_t>(matrix.rows.size()));
  WriteU32(out, matrix.dim);
  for (const auto &row : matrix.rows) {
    if (row.dim() != matrix.dim) {
      throw InvalidArgument("feature row dimension " +
                            std::to_string(row.dim()) + " != " +
                            std::to_string(matrix.dim));
    }
    out.write(reinterpret_cast<const char *>(row.values.data()),
              static_cast<std::streamsize>(row.dim() * sizeof(float)));
  }
  if (!out) throw Error("short write to feature file: " + path);
}

}  // namespace scrollbio::corpus
