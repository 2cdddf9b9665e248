#include "scrollbio/chrono/sexagenary.h"

#include <fstream>

#include "scrollbio/util/error.h"
#include "scrollbio/util/utf8.h"

namespace scrollbio::chrono {
namespace {

// Lowercased with spaces, hyphens and apostrophes removed.
std::string Squash(std::string_view s) {
  std::string out;
  for (char c : utf8::AsciiLower(s)) {
    if (c == ' ' || c == '-' || c == '\'' || c == '\t') continue;
    out.push_back(c);
  }
  return out;
}

}  // namespace

int SexagenaryIndex(SexagenaryName name) {
  if (name.stem < 0 || name.stem >= kStems || name.branch < 0 ||
      name.branch >= kBranches) {
    throw InvalidArgument("sexagenary label out of range: stem " +
                          std::to_string(name.stem) + ", branch " +
                          std::to_string(name.branch));
  }
  for (int n = name.stem; n < kCycleLength; n += kStems) {
    if (n % kBranches == name.branch) return n;
  }
  throw InvalidArgument("stem " + std::to_string(name.stem) + " and branch " +
                        std::to_string(name.branch) +
                        " differ in parity and name no cycle year");
}

SexagenaryName SexagenaryFromIndex(int index) {
  if (index < 0 || index >= kCycleLength) {
    throw InvalidArgument("cycle index out of range: " + std::to_string(index));
  }
  return {index % kStems, index % kBranches};
}

int CycleIndexOfYear(int year) {
  int r = (year - 4) % kCycleLength;
  return r < 0 ? r + kCycleLength : r;
}

CycleNames::CycleNames(std::vector<std::vector<std::string>> stems,
                       std::vector<std::vector<std::string>> branches)
    : stems_(std::move(stems)), branches_(std::move(branches)) {
  if (stems_.size() != kStems || branches_.size() != kBranches) {
    throw InvalidArgument("cycle names need 10 stems and 12 branches");
  }
  for (const auto *list : {&stems_, &branches_}) {
    for (const auto &spellings : *list) {
      if (spellings.empty()) throw InvalidArgument("empty spelling list");
    }
  }
}

const CycleNames &CycleNames::Default() {
  static const CycleNames names(
      {{"Jia", "甲"}, {"Yi", "乙"}, {"Bing", "丙"}, {"Ding", "丁"},
       {"Wu", "戊"}, {"Ji", "己"}, {"Geng", "庚"}, {"Xin", "辛"},
       {"Ren", "壬"}, {"Gui", "癸"}},
      {{"Zi", "子"}, {"Chou", "丑"}, {"Yin", "寅"}, {"Mao", "卯"},
       {"Chen", "辰"}, {"Si", "巳"}, {"Wu", "午"}, {"Wei", "未"},
       {"Shen", "申"}, {"You", "酉"}, {"Xu", "戌"}, {"Hai", "亥"}});
  return names;
}

CycleNames CycleNames::FromJson(const nlohmann::json &config) {
  auto read = [&](const char *key) {
    if (!config.contains(key) || !config[key].is_array()) {
      throw InvalidArgument(std::string("cycle name config lacks array '") +
                            key + "'");
    }
    std::vector<std::vector<std::string>> out;
    for (const auto &entry : config[key]) {
      if (entry.is_string()) {
        out.push_back({entry.get<std::string>()});
      } else {
        out.push_back(entry.get<std::vector<std::string>>());
      }
    }
    return out;
  };
  return CycleNames(read("stems"), read("branches"));
}

CycleNames CycleNames::FromFile(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open cycle name config: " + path);
  return FromJson(nlohmann::json::parse(in));
}

std::optional<SexagenaryName> CycleNames::Parse(std::string_view text) const {
  const std::string key = Squash(text);
  if (key.empty()) return std::nullopt;
  for (int s = 0; s < kStems; ++s) {
    for (const auto &stem : stems_[s]) {
      const std::string sk = Squash(stem);
      if (key.size() <= sk.size() || key.compare(0, sk.size(), sk) != 0) {
        continue;
      }
      const std::string rest = key.substr(sk.size());
      for (int b = 0; b < kBranches; ++b) {
        for (const auto &branch : branches_[b]) {
          if (rest == Squash(branch)) return SexagenaryName{s, b};
        }
      }
    }
  }
  return std::nullopt;
}

std::string CycleNames::Display(SexagenaryName name) const {
  std::string branch = branches_.at(name.branch).front();
  return stems_.at(name.stem).front() + utf8::AsciiLower(branch);
}

}  // namespace scrollbio::chrono
