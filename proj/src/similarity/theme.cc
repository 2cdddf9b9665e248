#include "scrollbio/similarity/theme.h"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "scrollbio/util/utf8.h"

namespace scrollbio::similarity {
namespace {

struct Unit {
  std::string text;
  bool cjk = false;
};

void EmitRun(const std::vector<Unit> &run, std::vector<std::string> &out) {
  for (const auto &u : run) out.push_back(u.text);
  for (size_t i = 1; i < run.size(); ++i) {
    bool joined = run[i - 1].cjk && run[i].cjk;
    out.push_back(run[i - 1].text + (joined ? "" : " ") + run[i].text);
  }
}

}  // namespace

std::vector<std::string> ThemeTokens(std::string_view text) {
  std::vector<std::string> out;
  std::vector<Unit> run;
  std::string word;
  auto flush_word = [&] {
    if (!word.empty()) run.push_back({utf8::AsciiLower(word), false});
    word.clear();
  };
  auto end_run = [&] {
    flush_word();
    EmitRun(run, out);
    run.clear();
  };
  for (const auto &ch : utf8::Characters(text)) {
    unsigned char c = static_cast<unsigned char>(ch[0]);
    if (ch.size() == 1 && std::isalnum(c)) {
      word += ch;
    } else if (ch.size() == 1 && std::isspace(c)) {
      flush_word();
    } else if (utf8::IsCjk(ch)) {
      flush_word();
      run.push_back({ch, true});
    } else {
      end_run();
    }
  }
  end_run();
  return out;
}

ThemeIndex::ThemeIndex(const std::map<std::string, std::string> &documents)
    : documents_(documents.size()) {
  std::map<std::string, std::map<std::string, int>> counts;
  for (const auto &[id, text] : documents) {
    auto &c = counts[id];
    for (const auto &tok : ThemeTokens(text)) ++c[tok];
    for (const auto &[tok, n] : c) ++df_[tok];
  }
  for (const auto &[id, c] : counts) {
    SparseVector v;
    double norm = 0;
    for (const auto &[tok, n] : c) {
      double w = (1.0 + std::log(double(n))) * Idf(tok);
      v[tok] = w;
      norm += w * w;
    }
    norm = std::sqrt(norm);
    if (norm > 0)
      for (auto &[tok, w] : v) w /= norm;
    vectors_[id] = std::move(v);
  }
}

double ThemeIndex::Idf(const std::string &token) const {
  auto it = df_.find(token);
  double df = it == df_.end() ? 0 : it->second;
  return std::log((1.0 + double(documents_)) / (1.0 + df)) + 1.0;
}

const ThemeIndex::SparseVector &ThemeIndex::Vector(const std::string &id) const {
  auto it = vectors_.find(id);
  if (it == vectors_.end()) throw NotFound("handscroll", id);
  return it->second;
}

double ThemeIndex::Similarity(const std::string &a, const std::string &b) const {
  const auto &va = Vector(a), &vb = Vector(b);
  double s = 0;
  auto i = va.begin();
  auto j = vb.begin();
  while (i != va.end() && j != vb.end()) {
    if (i->first < j->first) {
      ++i;
    } else if (j->first < i->first) {
      ++j;
    } else {
      s += i->second * j->second;
      ++i;
      ++j;
    }
  }
  return std::min(s, 1.0);
}

std::vector<Neighbor> ThemeIndex::Similar(const std::string &id, size_t k) const {
  Vector(id);
  std::vector<Neighbor> out;
  for (const auto &[other, v] : vectors_)
    if (other != id) out.push_back({other, Similarity(id, other)});
  std::sort(out.begin(), out.end(), [](const Neighbor &a, const Neighbor &b) {
    if (a.similarity != b.similarity) return a.similarity > b.similarity;
    return a.id < b.id;
  });
  if (out.size() > k) out.resize(k);
  return out;
}

}  // namespace scrollbio::similarity
