// SPDX-License-Identifier: Apache-2.0
#ifndef JEER_CSV_HPP_
#define JEER_CSV_HPP_

#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace jeer {

// RFC-4180-ish reader: quoted fields, "" escapes, embedded commas and
// newlines inside quotes, CRLF tolerated. Optionally skips blank lines
// and lines whose first character is '#' (term-list comment convention).
class CsvReader {
 public:
  explicit CsvReader(std::istream& in, bool skip_comments = false)
      : in_(in), skip_comments_(skip_comments) {}

  std::optional<std::vector<std::string>> next() {
    int c = in_.get();
    while (c != EOF) {
      if (c == '\n') {
        ++line_;
        c = in_.get();
        continue;
      }
      if (c == '\r') {
        c = in_.get();
        continue;
      }
      if (skip_comments_ && c == '#') {
        while (c != EOF && c != '\n') c = in_.get();
        continue;
      }
      break;
    }
    if (c == EOF) return std::nullopt;

    record_line_ = line_;
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    while (true) {
      if (c == EOF) {
        fields.push_back(std::move(cur));
        return fields;
      }
      char ch = static_cast<char>(c);
      if (quoted) {
        if (ch == '"') {
          int peek = in_.get();
          if (peek == '"') {
            cur.push_back('"');
          } else {
            quoted = false;
            c = peek;
            continue;
          }
        } else {
          if (ch == '\n') ++line_;
          cur.push_back(ch);
        }
      } else if (ch == '"' && cur.empty()) {
        quoted = true;
      } else if (ch == ',') {
        fields.push_back(std::move(cur));
        cur.clear();
      } else if (ch == '\n') {
        ++line_;
        fields.push_back(std::move(cur));
        return fields;
      } else if (ch != '\r') {
        cur.push_back(ch);
      }
      c = in_.get();
    }
  }

  // 1-based line number where the last record started.
  size_t record_line() const { return record_line_; }

 private:
  std::istream& in_;
  bool skip_comments_;
  size_t line_ = 1;
  size_t record_line_ = 1;
};

inline std::string csv_escape(std::string_view field) {
  bool needs_quotes = field.find_first_of(",\"\n\r") != std::string_view::npos;
  if (!needs_quotes) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out.push_back('"');
  return out;
}

inline void write_csv_row(std::ostream& out, const std::vector<std::string>& fields) {
  for (size_t i = 0; i < fields.size(); ++i) {
    if (i) out.put(',');
    out << csv_escape(fields[i]);
  }
  out.put('\n');
}

}  // namespace jeer

#endif  // JEER_CSV_HPP_
