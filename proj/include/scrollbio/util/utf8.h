#ifndef SCROLLBIO_UTIL_UTF8_H_
#define SCROLLBIO_UTIL_UTF8_H_

#include <string>
#include <string_view>
#include <vector>

namespace scrollbio::utf8 {

// Splits a UTF-8 string into code points, each returned as its own UTF-8
// substring. Invalid bytes are passed through one byte at a time.
std::vector<std::string> Characters(std::string_view text);

// Number of code points in text.
size_t Length(std::string_view text);

// Substring by code point offsets [begin, end).
std::string Substring(std::string_view text, size_t begin, size_t end);

// Byte offset of the code point at index `pos`, or text.size() if past the
// end.
size_t ByteOffset(std::string_view text, size_t pos);

// True if the code point starting at s is in a CJK ideograph block.
bool IsCjk(std::string_view ch);

// ASCII lowercase; non-ASCII bytes untouched.
std::string AsciiLower(std::string_view s);

// Trims ASCII whitespace from both ends.
std::string_view Trim(std::string_view s);

// Collapses runs of ASCII whitespace to single spaces, trims, and
// lowercases ASCII letters. Used as the key form for alias lookups.
std::string NormalizeKey(std::string_view s);

}  // namespace scrollbio::utf8

#endif  // SCROLLBIO_UTIL_UTF8_H_
