#pragma once

// Minimal UTF-8 handling for the text pipeline. Invalid bytes decode as
// U+FFFD with length 1.

#include <cstddef>
#include <string>
#include <string_view>

namespace fieldscope::utf8 {

struct Decoded {
  char32_t cp;
  std::size_t len;
};

inline Decoded decode(std::string_view s, std::size_t pos) {
  auto b = static_cast<unsigned char>(s[pos]);
  if (b < 0x80) return {b, 1};
  std::size_t len = (b >> 5) == 0x6 ? 2 : (b >> 4) == 0xE ? 3 : (b >> 3) == 0x1E ? 4 : 0;
  if (len == 0 || pos + len > s.size()) return {0xFFFD, 1};
  char32_t cp = len == 2 ? (b & 0x1F) : len == 3 ? (b & 0x0F) : (b & 0x07);
  for (std::size_t k = 1; k < len; ++k) {
    auto c = static_cast<unsigned char>(s[pos + k]);
    if ((c >> 6) != 0x2) return {0xFFFD, 1};
    cp = (cp << 6) | (c & 0x3F);
  }
  return {cp, len};
}

inline void append(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

inline bool is_space(char32_t cp) {
  return cp == ' ' || (cp >= 0x09 && cp <= 0x0D) || cp == 0x85 || cp == 0xA0 || cp == 0x1680 ||
         (cp >= 0x2000 && cp <= 0x200A) || cp == 0x2028 || cp == 0x2029 || cp == 0x202F ||
         cp == 0x205F || cp == 0x3000;
}

enum class CharClass { word, hyphen, symbol };

inline CharClass classify(char32_t cp) {
  if (cp < 0x80) {
    if ((cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z') || (cp >= '0' && cp <= '9')) {
      return CharClass::word;
    }
    return cp == '-' ? CharClass::hyphen : CharClass::symbol;
  }
  if (cp <= 0xBF) {
    // Latin-1 punctuation and signs; keep the three letter-like ones.
    return (cp == 0xAA || cp == 0xB5 || cp == 0xBA) ? CharClass::word : CharClass::symbol;
  }
  if (cp == 0xD7 || cp == 0xF7 || cp == 0xFFFD) return CharClass::symbol;
  if ((cp >= 0x2000 && cp <= 0x2BFF) || (cp >= 0x3000 && cp <= 0x303F) ||
      (cp >= 0xFE30 && cp <= 0xFE4F) || (cp >= 0xFF00 && cp <= 0xFF0F)) {
    return CharClass::symbol;
  }
  return CharClass::word;
}

inline bool is_digit(char32_t cp) { return cp >= '0' && cp <= '9'; }

}  // namespace fieldscope::utf8
