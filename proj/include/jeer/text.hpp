// SPDX-License-Identifier: Apache-2.0
#ifndef JEER_TEXT_HPP_
#define JEER_TEXT_HPP_

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace jeer {

// Heterogeneous-lookup hash so unordered maps keyed by std::string can be
// probed with string_view without allocating.
struct StringHash {
  using is_transparent = void;
  size_t operator()(std::string_view s) const noexcept {
    return std::hash<std::string_view>{}(s);
  }
};
struct StringEq {
  using is_transparent = void;
  bool operator()(std::string_view a, std::string_view b) const noexcept { return a == b; }
};

namespace text {

// Decodes one UTF-8 codepoint at byte offset i, advancing i. Invalid
// sequences decode as U+FFFD one byte at a time so offsets stay sane.
inline char32_t decode_utf8(std::string_view s, size_t& i) {
  unsigned char b0 = static_cast<unsigned char>(s[i]);
  if (b0 < 0x80) {
    ++i;
    return b0;
  }
  int len = 0;
  char32_t cp = 0;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    ++i;
    return 0xFFFD;
  }
  if (i + len > s.size()) {
    ++i;
    return 0xFFFD;
  }
  for (int k = 1; k < len; ++k) {
    unsigned char b = static_cast<unsigned char>(s[i + k]);
    if ((b & 0xC0) != 0x80) {
      ++i;
      return 0xFFFD;
    }
    cp = (cp << 6) | (b & 0x3F);
  }
  i += len;
  return cp;
}

inline bool is_ascii_letter(char32_t cp) {
  return (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z');
}

inline bool is_ascii_digit(char32_t cp) { return cp >= '0' && cp <= '9'; }

// Symbol/emoji ranges that separate words instead of joining them.
inline bool is_symbol_cp(char32_t cp) {
  return (cp >= 0x2000 && cp <= 0x2BFF)     // punctuation, arrows, dingbats
         || (cp >= 0x1F000 && cp <= 0x1FAFF)  // emoji planes
         || (cp >= 0xFE00 && cp <= 0xFE0F)    // variation selectors
         || cp == 0xFFFD;
}

// Word characters: ASCII letters plus any non-ASCII codepoint outside the
// symbol ranges (accented Latin, Greek, Cyrillic, ...). Digits are handled
// separately because digit runs form their own tokens.
inline bool is_letter_cp(char32_t cp) {
  if (cp < 0x80) return is_ascii_letter(cp);
  return !is_symbol_cp(cp);
}

inline char ascii_lower(char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

inline std::string to_lower(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) out.push_back(ascii_lower(c));
  return out;
}

inline std::string_view trim(std::string_view s) {
  size_t b = 0, e = s.size();
  auto is_space = [](char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v';
  };
  while (b < e && is_space(s[b])) ++b;
  while (e > b && is_space(s[e - 1])) --e;
  return s.substr(b, e - b);
}

}  // namespace text
}  // namespace jeer

#endif  // JEER_TEXT_HPP_
