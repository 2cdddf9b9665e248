#ifndef SCROLLBIO_CHRONO_SEXAGENARY_H_
#define SCROLLBIO_CHRONO_SEXAGENARY_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace scrollbio::chrono {

inline constexpr int kStems = 10;
inline constexpr int kBranches = 12;
inline constexpr int kCycleLength = 60;

// A heavenly stem / earthly branch pair. Only pairs with equal parity name a
// year of the cycle.
struct SexagenaryName {
  int stem = 0;    // 0..9
  int branch = 0;  // 0..11

  bool operator==(const SexagenaryName &) const = default;
};

// Position 0..59 of the pair in the cycle (0 = Jiazi). Throws
// InvalidArgument on out-of-range labels or a parity mismatch.
int SexagenaryIndex(SexagenaryName name);

// Inverse of SexagenaryIndex.
SexagenaryName SexagenaryFromIndex(int index);

// Cycle index of a Gregorian year: (year - 4) mod 60, always in 0..59.
int CycleIndexOfYear(int year);

// Spellings of the stems and branches. Each position holds every accepted
// spelling (romanized and original script); the first is used for display.
class CycleNames {
 public:
  CycleNames(std::vector<std::vector<std::string>> stems,
             std::vector<std::vector<std::string>> branches);

  // Pinyin plus the Chinese characters.
  static const CycleNames &Default();

  // {"stems": [["Jia","甲"], ...], "branches": [["Zi","子"], ...]}
  static CycleNames FromJson(const nlohmann::json &config);
  static CycleNames FromFile(const std::string &path);

  // Parses a full name such as "Wuchen", "wu chen", "Wu-chen" or "戊辰".
  // Returns nullopt if the text is not exactly one stem followed by one
  // branch. A parity mismatch still parses; SexagenaryIndex rejects it.
  std::optional<SexagenaryName> Parse(std::string_view text) const;

  std::string Display(SexagenaryName name) const;

 private:
  std::vector<std::vector<std::string>> stems_;
  std::vector<std::vector<std::string>> branches_;
};

}  // namespace scrollbio::chrono

#endif  // SCROLLBIO_CHRONO_SEXAGENARY_H_
