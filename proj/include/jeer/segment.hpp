// SPDX-License-Identifier: Apache-2.0
#ifndef JEER_SEGMENT_HPP_
#define JEER_SEGMENT_HPP_

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "jeer/error.hpp"
#include "jeer/text.hpp"

namespace jeer {

enum class TokenOrigin : std::uint8_t { plain, hashtag, mention, url };

struct Token {
  std::string surface;  // lowercase
  TokenOrigin origin = TokenOrigin::plain;
  std::uint32_t begin = 0;  // byte span in the original text, [begin, end)
  std::uint32_t end = 0;
};

struct TokenStream {
  std::vector<Token> tokens;
};

// Word list used to split hashtag bodies. Entries are lowercase.
class SegmentationDict {
 public:
  SegmentationDict() = default;

  explicit SegmentationDict(std::initializer_list<std::string_view> words) {
    for (auto w : words) add(w);
  }

  void add(std::string_view word) {
    auto t = text::trim(word);
    if (t.empty()) return;
    auto [it, inserted] = words_.insert(text::to_lower(t));
    if (inserted) max_len_ = std::max(max_len_, it->size());
  }

  bool contains(std::string_view word) const { return words_.find(word) != words_.end(); }
  size_t max_word_len() const { return max_len_; }
  size_t size() const { return words_.size(); }
  bool empty() const { return words_.empty(); }

  // One word per line, UTF-8, '#' comment lines allowed.
  static SegmentationDict load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open wordlist: " + path);
    SegmentationDict dict;
    std::string line;
    while (std::getline(in, line)) {
      auto t = text::trim(line);
      if (t.empty() || t.front() == '#') continue;
      dict.add(t);
    }
    if (dict.empty()) throw DataError("wordlist is empty: " + path);
    return dict;
  }

 private:
  std::unordered_set<std::string, StringHash, StringEq> words_;
  size_t max_len_ = 0;
};

namespace detail {

inline bool is_digit_byte(char c) { return c >= '0' && c <= '9'; }
inline bool is_letter_byte(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         static_cast<unsigned char>(c) >= 0x80;
}

}  // namespace detail

// Splits a hashtag body into dictionary words. The split with the fewest
// words wins; ties prefer the longest first word, then the lexicographically
// smallest word sequence. Digit runs are atomic words and never consult the
// dictionary. Returns nothing when no full segmentation exists.
inline std::optional<std::vector<std::string>> segment_hashtag(std::string_view body,
                                                               const SegmentationDict& dict) {
  const size_t n = body.size();
  if (n == 0) return std::nullopt;
  for (char c : body)
    if (!detail::is_digit_byte(c) && !detail::is_letter_byte(c)) return std::nullopt;

  constexpr std::uint32_t kInf = std::numeric_limits<std::uint32_t>::max();
  const size_t max_len = std::max<size_t>(dict.max_word_len(), 1);

  // words[i] = minimum word count for the suffix starting at byte i
  std::vector<std::uint32_t> words(n + 1, kInf);
  words[n] = 0;
  for (size_t i = n; i-- > 0;) {
    if (detail::is_digit_byte(body[i])) {
      size_t k = i;
      while (k < n && detail::is_digit_byte(body[k])) ++k;
      if (words[k] != kInf) words[i] = words[k] + 1;
      continue;
    }
    for (size_t j = i + 1; j <= n && j - i <= max_len; ++j) {
      if (detail::is_digit_byte(body[j - 1])) break;
      if (words[j] == kInf) continue;
      if (dict.contains(body.substr(i, j - i)))
        words[i] = std::min(words[i], words[j] + 1);
    }
  }
  if (words[0] == kInf) return std::nullopt;

  std::vector<std::string> out;
  out.reserve(words[0]);
  size_t pos = 0;
  bool first = true;
  while (pos < n) {
    if (detail::is_digit_byte(body[pos])) {
      size_t k = pos;
      while (k < n && detail::is_digit_byte(body[k])) ++k;
      out.emplace_back(body.substr(pos, k - pos));
      pos = k;
      first = false;
      continue;
    }
    size_t chosen = 0;
    for (size_t j = pos + 1; j <= n && j - pos <= max_len; ++j) {
      if (detail::is_digit_byte(body[j - 1])) break;
      if (words[j] == kInf || words[j] + 1 != words[pos]) continue;
      if (!dict.contains(body.substr(pos, j - pos))) continue;
      chosen = j - pos;
      if (!first) break;  // shortest continuation; for the first word keep extending
    }
    out.emplace_back(body.substr(pos, chosen));
    pos += chosen;
    first = false;
  }
  return out;
}

namespace detail {

inline bool has_prefix_ci(std::string_view s, size_t pos, std::string_view prefix) {
  if (pos + prefix.size() > s.size()) return false;
  for (size_t i = 0; i < prefix.size(); ++i)
    if (text::ascii_lower(s[pos + i]) != prefix[i]) return false;
  return true;
}

inline bool is_handle_byte(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || is_digit_byte(c) || c == '_';
}

}  // namespace detail

// Tweet-text tokenizer. Splits on whitespace and punctuation, lowercases,
// keeps URLs whole, tags mentions, and expands hashtags: the '#'-stripped
// body is emitted, followed by its dictionary segmentation when one exists
// and differs from the body itself. Letter runs and digit runs are separate
// tokens.
inline TokenStream tokenize(std::string_view input, const SegmentationDict* dict = nullptr) {
  TokenStream out;
  const size_t n = input.size();
  size_t i = 0;
  bool prev_word = false;  // previous codepoint was a letter/digit

  auto emit = [&](std::string surface, TokenOrigin origin, size_t begin, size_t end) {
    out.tokens.push_back(Token{std::move(surface), origin,
                               static_cast<std::uint32_t>(begin),
                               static_cast<std::uint32_t>(end)});
  };

  while (i < n) {
    const size_t start = i;
    size_t peek = i;
    const char32_t cp = text::decode_utf8(input, peek);

    // URLs swallow everything to the next whitespace, '#' fragments included.
    if (!prev_word &&
        (detail::has_prefix_ci(input, i, "http://") || detail::has_prefix_ci(input, i, "https://") ||
         detail::has_prefix_ci(input, i, "www."))) {
      size_t j = i;
      while (j < n && !std::isspace(static_cast<unsigned char>(input[j]))) ++j;
      emit(text::to_lower(input.substr(i, j - i)), TokenOrigin::url, i, j);
      i = j;
      prev_word = true;
      continue;
    }

    if (cp == '@' && !prev_word && peek < n && detail::is_handle_byte(input[peek])) {
      size_t j = peek;
      while (j < n && detail::is_handle_byte(input[j])) ++j;
      emit(text::to_lower(input.substr(peek, j - peek)), TokenOrigin::mention, start, j);
      i = j;
      prev_word = true;
      continue;
    }

    if (cp == '#' && !prev_word && peek < n &&
        (detail::is_letter_byte(input[peek]) || detail::is_digit_byte(input[peek]) || input[peek] == '_')) {
      size_t j = peek;
      while (j < n && (detail::is_letter_byte(input[j]) || detail::is_digit_byte(input[j]) || input[j] == '_'))
        ++j;
      std::string body = text::to_lower(input.substr(peek, j - peek));
      // '_' is an explicit separator inside a hashtag
      size_t p = 0;
      while (p < body.size()) {
        size_t q = body.find('_', p);
        if (q == std::string::npos) q = body.size();
        if (q > p) {
          std::string part = body.substr(p, q - p);
          emit(part, TokenOrigin::hashtag, start, j);
          if (dict != nullptr) {
            auto seg = segment_hashtag(part, *dict);
            if (seg && !(seg->size() == 1 && (*seg)[0] == part))
              for (auto& w : *seg) emit(std::move(w), TokenOrigin::hashtag, start, j);
          }
        }
        p = q + 1;
      }
      i = j;
      prev_word = true;
      continue;
    }

    if (text::is_ascii_digit(cp)) {
      size_t j = i;
      while (j < n && detail::is_digit_byte(input[j])) ++j;
      emit(std::string(input.substr(i, j - i)), TokenOrigin::plain, i, j);
      i = j;
      prev_word = true;
      continue;
    }

    if (text::is_letter_cp(cp)) {
      size_t j = peek;
      while (j < n) {
        size_t next = j;
        char32_t c2 = text::decode_utf8(input, next);
        if (!text::is_letter_cp(c2)) break;
        j = next;
      }
      emit(text::to_lower(input.substr(i, j - i)), TokenOrigin::plain, i, j);
      i = j;
      prev_word = true;
      continue;
    }

    i = peek;
    prev_word = false;
  }
  return out;
}

// Lowercased letter/digit runs of a phrase, matching what tokenize() emits
// for plain text. Used to normalize lexicon term surfaces.
inline std::vector<std::string> split_plain_words(std::string_view s) {
  std::vector<std::string> words;
  size_t i = 0;
  const size_t n = s.size();
  while (i < n) {
    if (detail::is_digit_byte(s[i])) {
      size_t j = i;
      while (j < n && detail::is_digit_byte(s[j])) ++j;
      words.emplace_back(s.substr(i, j - i));
      i = j;
    } else if (detail::is_letter_byte(s[i])) {
      size_t j = i;
      while (j < n && detail::is_letter_byte(s[j])) ++j;
      words.push_back(text::to_lower(s.substr(i, j - i)));
      i = j;
    } else {
      ++i;
    }
  }
  return words;
}

}  // namespace jeer

#endif  // JEER_SEGMENT_HPP_
