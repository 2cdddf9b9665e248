#include "scrollbio/chrono/era_date.h"

#include <algorithm>
#include <map>
#include <set>

#include "scrollbio/util/utf8.h"

namespace scrollbio::chrono {
namespace {

const std::map<std::string, int> &OrdinalWords() {
  static const std::map<std::string, int> words = [] {
    const char *units[] = {"first", "second", "third", "fourth", "fifth",
                           "sixth", "seventh", "eighth", "ninth"};
    const char *teens[] = {"tenth",       "eleventh",   "twelfth",
                           "thirteenth",  "fourteenth", "fifteenth",
                           "sixteenth",   "seventeenth", "eighteenth",
                           "nineteenth"};
    const char *tens_ordinal[] = {"twentieth", "thirtieth", "fortieth",
                                  "fiftieth",  "sixtieth",  "seventieth",
                                  "eightieth", "ninetieth"};
    const char *tens_cardinal[] = {"twenty", "thirty",  "forty",  "fifty",
                                   "sixty",  "seventy", "eighty", "ninety"};
    std::map<std::string, int> m;
    for (int i = 0; i < 9; ++i) m[units[i]] = i + 1;
    for (int i = 0; i < 10; ++i) m[teens[i]] = i + 10;
    for (int t = 0; t < 8; ++t) {
      m[tens_ordinal[t]] = (t + 2) * 10;
      for (int u = 0; u < 9; ++u) {
        int value = (t + 2) * 10 + u + 1;
        m[std::string(tens_cardinal[t]) + "-" + units[u]] = value;
        m[std::string(tens_cardinal[t]) + " " + units[u]] = value;
      }
    }
    return m;
  }();
  return words;
}

std::optional<int> ParseDigits(std::string_view s) {
  if (s.empty() || s.size() > 4) return std::nullopt;
  int v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') return std::nullopt;
    v = v * 10 + (c - '0');
  }
  return v;
}

// "2nd", "21st", "3rd", "4th".
std::optional<int> ParseNumericOrdinal(std::string_view s) {
  if (s.size() < 3) return std::nullopt;
  std::string_view suffix = s.substr(s.size() - 2);
  if (suffix != "st" && suffix != "nd" && suffix != "rd" && suffix != "th") {
    return std::nullopt;
  }
  return ParseDigits(s.substr(0, s.size() - 2));
}

int ChineseDigit(const std::string &ch) {
  static const std::map<std::string, int> digits = {
      {"一", 1}, {"二", 2}, {"三", 3}, {"四", 4}, {"五", 5},
      {"六", 6}, {"七", 7}, {"八", 8}, {"九", 9}};
  auto it = digits.find(ch);
  return it == digits.end() ? 0 : it->second;
}

// Chinese numerals 1..99 in the forms N, 十, 十N, N十, N十M, 廿N, 卅N.
std::optional<int> ParseChineseNumber(std::string_view s) {
  std::vector<std::string> chars = utf8::Characters(s);
  if (chars.empty() || chars.size() > 3) return std::nullopt;
  int tens = 0;
  size_t pos = 0;
  if (chars.size() >= 2 && ChineseDigit(chars[0]) && chars[1] == "十") {
    tens = ChineseDigit(chars[0]);
    pos = 2;
  } else if (chars[0] == "十") {
    tens = 1;
    pos = 1;
  } else if (chars[0] == "廿") {
    tens = 2;
    pos = 1;
  } else if (chars[0] == "卅") {
    tens = 3;
    pos = 1;
  }
  if (tens == 0) {
    if (chars.size() != 1 || !ChineseDigit(chars[0])) return std::nullopt;
    return ChineseDigit(chars[0]);
  }
  if (pos == chars.size()) return tens * 10;
  if (pos + 1 != chars.size() || !ChineseDigit(chars[pos])) return std::nullopt;
  return tens * 10 + ChineseDigit(chars[pos]);
}

bool StripSuffix(std::string &s, std::string_view suffix) {
  if (s.size() < suffix.size() ||
      s.compare(s.size() - suffix.size(), suffix.size(), suffix) != 0) {
    return false;
  }
  s.resize(s.size() - suffix.size());
  s = std::string(utf8::Trim(s));
  return true;
}

std::optional<SexagenaryName> ParseCycleRemainder(std::string rest,
                                                  const CycleNames &names) {
  if (!StripSuffix(rest, "年")) StripSuffix(rest, " year");
  return names.Parse(rest);
}

}  // namespace

EraTable::EraTable(std::vector<EraEntry> entries) : entries_(std::move(entries)) {
  std::set<std::pair<std::string, std::string>> seen;
  for (const auto &e : entries_) {
    if (e.era_name.empty()) throw InvalidArgument("era with empty name");
    if (e.start_year > e.end_year) {
      throw InvalidArgument("era " + e.era_name + " (" + e.dynasty +
                            ") starts after it ends");
    }
    if (!seen.emplace(utf8::NormalizeKey(e.era_name), e.dynasty).second) {
      throw InvalidArgument("duplicate era " + e.era_name + " (" + e.dynasty +
                            ")");
    }
  }
}

std::vector<const EraEntry *> EraTable::Lookup(std::string_view name) const {
  const std::string key = utf8::NormalizeKey(name);
  std::vector<const EraEntry *> out;
  for (const auto &e : entries_) {
    bool match = utf8::NormalizeKey(e.era_name) == key;
    for (const auto &alt : e.alt_names) match |= utf8::NormalizeKey(alt) == key;
    if (match) out.push_back(&e);
  }
  return out;
}

UnknownEra::UnknownEra(const std::string &expression,
                       std::vector<std::string> homonyms)
    : Error([&] {
        if (homonyms.empty()) return "unknown era in '" + expression + "'";
        std::string s = "era in '" + expression +
                        "' is ambiguous across dynasties:";
        for (const auto &d : homonyms) s += " " + d;
        return s;
      }()),
      homonyms_(std::move(homonyms)) {}

std::optional<int> ParseOrdinalYear(std::string_view text) {
  std::string s = utf8::NormalizeKey(text);
  if (s == "元年") return 1;
  if (std::string t = s; StripSuffix(t, "年")) {
    if (auto n = ParseChineseNumber(t)) return n;
    return ParseDigits(t);
  }
  if (s.rfind("year ", 0) == 0) return ParseDigits(s.substr(5));
  if (!StripSuffix(s, " year")) return std::nullopt;
  auto it = OrdinalWords().find(s);
  if (it != OrdinalWords().end()) return it->second;
  return ParseNumericOrdinal(s);
}

DateResolution ParseEraDate(std::string_view text, const EraTable &eras,
                            const std::optional<std::string> &dynasty_hint,
                            const CycleNames &names) {
  const std::string expression(utf8::Trim(text));
  const std::string key = utf8::NormalizeKey(expression);

  // Longest era spelling that prefixes the expression, among entries that
  // pass the dynasty hint.
  size_t best_len = 0;
  std::vector<const EraEntry *> best;
  for (const auto &e : eras.entries()) {
    std::vector<std::string> spellings = {e.era_name};
    spellings.insert(spellings.end(), e.alt_names.begin(), e.alt_names.end());
    for (const auto &spelling : spellings) {
      const std::string sk = utf8::NormalizeKey(spelling);
      if (sk.empty() || key.compare(0, sk.size(), sk) != 0) continue;
      if (dynasty_hint && e.dynasty != *dynasty_hint) continue;
      if (sk.size() > best_len) {
        best_len = sk.size();
        best.clear();
      }
      if (sk.size() == best_len &&
          std::find(best.begin(), best.end(), &e) == best.end()) {
        best.push_back(&e);
      }
    }
  }
  if (best.empty()) throw UnknownEra(expression, {});
  if (best.size() > 1) {
    std::vector<std::string> dynasties;
    for (const auto *e : best) dynasties.push_back(e->dynasty);
    std::sort(dynasties.begin(), dynasties.end());
    throw UnknownEra(expression, dynasties);
  }
  const EraEntry &era = *best.front();
  const std::string rest(utf8::Trim(std::string_view(key).substr(best_len)));

  DateResolution res;
  res.source_expression = expression;
  res.era_name = era.era_name;
  res.dynasty = era.dynasty;

  if (auto ordinal = ParseOrdinalYear(rest)) {
    if (*ordinal < 1 || era.start_year + *ordinal - 1 > era.end_year) {
      throw DateOutOfRange("year " + std::to_string(*ordinal) + " of era " +
                           era.era_name + " lies outside " +
                           std::to_string(era.start_year) + "-" +
                           std::to_string(era.end_year));
    }
    res.year = era.start_year + *ordinal - 1;
    res.alternatives = {res.year};
    return res;
  }

  if (auto cycle = ParseCycleRemainder(rest, names)) {
    const int index = SexagenaryIndex(*cycle);
    for (int y = era.start_year; y <= era.end_year; ++y) {
      if (CycleIndexOfYear(y) == index) res.alternatives.push_back(y);
    }
    if (res.alternatives.empty()) {
      throw DateOutOfRange("no " + names.Display(*cycle) + " year within era " +
                           era.era_name + " (" +
                           std::to_string(era.start_year) + "-" +
                           std::to_string(era.end_year) + ")");
    }
    res.year = res.alternatives.front();
    res.ambiguous = res.alternatives.size() > 1;
    return res;
  }

  throw DateSyntaxError("cannot parse '" + rest + "' after era " +
                        era.era_name + " in '" + expression + "'");
}

}  // namespace scrollbio::chrono
