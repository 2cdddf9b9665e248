#ifndef SCROLLBIO_CHRONO_ERA_DATE_H_
#define SCROLLBIO_CHRONO_ERA_DATE_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scrollbio/chrono/sexagenary.h"
#include "scrollbio/util/error.h"

namespace scrollbio::chrono {

struct EraEntry {
  std::string era_name;
  std::string dynasty;
  int start_year = 0;
  int end_year = 0;
  // Additional spellings, e.g. the name in original script.
  std::vector<std::string> alt_names;
};

// Reign periods. Era names may repeat across dynasties but (name, dynasty)
// is unique.
class EraTable {
 public:
  EraTable() = default;
  // Throws InvalidArgument when start > end or (name, dynasty) repeats.
  explicit EraTable(std::vector<EraEntry> entries);

  const std::vector<EraEntry> &entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

  // All entries whose name or alternate spelling matches (case-insensitive).
  std::vector<const EraEntry *> Lookup(std::string_view name) const;

 private:
  std::vector<EraEntry> entries_;
};

struct DateResolution {
  int year = 0;
  bool ambiguous = false;
  // Every year the expression can denote, ascending. Contains `year`.
  std::vector<int> alternatives;
  std::string source_expression;
  std::string era_name;
  std::string dynasty;
};

class UnknownEra : public Error {
 public:
  UnknownEra(const std::string &expression, std::vector<std::string> homonyms);
  // Dynasties sharing the era name when the failure is an unresolved
  // homonym; empty when the name is absent from the table.
  const std::vector<std::string> &homonyms() const { return homonyms_; }

 private:
  std::vector<std::string> homonyms_;
};

class DateOutOfRange : public Error {
 public:
  using Error::Error;
};

class DateSyntaxError : public Error {
 public:
  using Error::Error;
};

// Resolves "<era> <ordinal> year" or "<era> <stem><branch>" to a Gregorian
// year. The era is the longest table name prefixing the text; the remainder
// must be exactly an ordinal phrase or a cycle name.
DateResolution ParseEraDate(std::string_view text, const EraTable &eras,
                            const std::optional<std::string> &dynasty_hint = {},
                            const CycleNames &names = CycleNames::Default());

// Parses ordinal phrases such as "second year", "2nd year", "year 2",
// "twenty-first year", "元年", "二十一年". Returns nullopt otherwise.
std::optional<int> ParseOrdinalYear(std::string_view text);

}  // namespace scrollbio::chrono

#endif  // SCROLLBIO_CHRONO_ERA_DATE_H_
