#include "scrollbio/util/utf8.h"

#include <cctype>

namespace scrollbio::utf8 {
namespace {

size_t SequenceLength(unsigned char lead) {
  if (lead < 0x80) return 1;
  if ((lead >> 5) == 0x6) return 2;
  if ((lead >> 4) == 0xE) return 3;
  if ((lead >> 3) == 0x1E) return 4;
  return 1;
}

// Length of the code point at text[i], clamped to the remaining bytes and
// falling back to 1 on malformed continuation bytes.
size_t CharLength(std::string_view text, size_t i) {
  size_t n = SequenceLength(static_cast<unsigned char>(text[i]));
  if (i + n > text.size()) return 1;
  for (size_t k = 1; k < n; ++k) {
    if ((static_cast<unsigned char>(text[i + k]) & 0xC0) != 0x80) return 1;
  }
  return n;
}

char32_t Decode(std::string_view ch) {
  auto b = [&](size_t i) { return static_cast<unsigned char>(ch[i]); };
  switch (ch.size()) {
    case 1: return b(0);
    case 2: return ((b(0) & 0x1F) << 6) | (b(1) & 0x3F);
    case 3: return ((b(0) & 0x0F) << 12) | ((b(1) & 0x3F) << 6) | (b(2) & 0x3F);
    case 4:
      return ((b(0) & 0x07) << 18) | ((b(1) & 0x3F) << 12) |
             ((b(2) & 0x3F) << 6) | (b(3) & 0x3F);
    default: return 0;
  }
}

}  // namespace

std::vector<std::string> Characters(std::string_view text) {
  std::vector<std::string> out;
  for (size_t i = 0; i < text.size();) {
    size_t n = CharLength(text, i);
    out.emplace_back(text.substr(i, n));
    i += n;
  }
  return out;
}

size_t Length(std::string_view text) {
  size_t count = 0;
  for (size_t i = 0; i < text.size(); i += CharLength(text, i)) ++count;
  return count;
}

size_t ByteOffset(std::string_view text, size_t pos) {
  size_t i = 0;
  for (size_t k = 0; k < pos && i < text.size(); ++k) i += CharLength(text, i);
  return i;
}

std::string Substring(std::string_view text, size_t begin, size_t end) {
  if (end <= begin) return {};
  size_t b = ByteOffset(text, begin);
  size_t e = ByteOffset(text, end);
  return std::string(text.substr(b, e - b));
}

bool IsCjk(std::string_view ch) {
  if (ch.empty()) return false;
  std::string_view first = ch.substr(0, CharLength(ch, 0));
  char32_t c = Decode(first);
  return (c >= 0x4E00 && c <= 0x9FFF) || (c >= 0x3400 && c <= 0x4DBF) ||
         (c >= 0x20000 && c <= 0x2FA1F) || (c >= 0xF900 && c <= 0xFAFF);
}

std::string AsciiLower(std::string_view s) {
  std::string out(s);
  for (char &c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::string_view Trim(std::string_view s) {
  auto space = [](char c) { return std::isspace(static_cast<unsigned char>(c)); };
  while (!s.empty() && space(s.front())) s.remove_prefix(1);
  while (!s.empty() && space(s.back())) s.remove_suffix(1);
  return s;
}

std::string NormalizeKey(std::string_view s) {
  std::string out;
  bool pending_space = false;
  for (char c : Trim(s)) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      pending_space = true;
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a') : c);
  }
  return out;
}

}  // namespace scrollbio::utf8
