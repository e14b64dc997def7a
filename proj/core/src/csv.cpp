#include "peerscope/csv.hpp"

#include "peerscope/error.hpp"

namespace peerscope::csv {

Reader::Reader(std::istream& in, std::string name) : in_(in), name_(std::move(name)) {}

bool Reader::next(Row& row) {
  row.fields.clear();
  row.line = line_;
  if (in_.peek() == std::char_traits<char>::eof()) return false;

  std::string field;
  bool quoted = false;
  bool field_was_quoted = false;
  for (;;) {
    int c = in_.get();
    if (c == std::char_traits<char>::eof()) {
      if (quoted) {
        throw ValidationError(name_, row.line, "", "unterminated quoted field");
      }
      row.fields.push_back(std::move(field));
      return true;
    }
    if (quoted) {
      if (c == '"') {
        if (in_.peek() == '"') {
          in_.get();
          field.push_back('"');
        } else {
          quoted = false;
        }
      } else {
        if (c == '\n') ++line_;
        field.push_back(static_cast<char>(c));
      }
      continue;
    }
    switch (c) {
      case '"':
        if (!field.empty() || field_was_quoted) {
          throw ValidationError(name_, line_, "", "stray quote inside unquoted field");
        }
        quoted = true;
        field_was_quoted = true;
        break;
      case ',':
        row.fields.push_back(std::move(field));
        field.clear();
        field_was_quoted = false;
        break;
      case '\r':
        if (in_.peek() != '\n') field.push_back('\r');
        break;
      case '\n':
        ++line_;
        row.fields.push_back(std::move(field));
        return true;
      default:
        field.push_back(static_cast<char>(c));
    }
  }
}

void Reader::expect_header(const std::vector<std::string>& expected) {
  Row row;
  if (!next(row)) throw ValidationError(name_, 1, "", "missing header row");
  if (!row.fields.empty() && row.fields[0].starts_with("\xEF\xBB\xBF")) {
    row.fields[0].erase(0, 3);
  }
  if (row.fields != expected) {
    throw ValidationError(name_, row.line, "", "header must be: " + join(expected, ','));
  }
}

std::string escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

void write_row(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out << ',';
    out << escape(fields[i]);
  }
  out << '\n';
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> parts;
  if (s.empty()) return parts;
  std::size_t start = 0;
  for (;;) {
    std::size_t pos = s.find(sep, start);
    parts.emplace_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::string join(const std::vector<std::string>& parts, char sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out.push_back(sep);
    out += parts[i];
  }
  return out;
}

}  // namespace peerscope::csv
