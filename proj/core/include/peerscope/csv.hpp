#pragma once

#include <cstddef>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace peerscope::csv {

struct Row {
  std::size_t line = 0;  // 1-based line on which the record starts
  std::vector<std::string> fields;
};

/// RFC 4180 reader: quoted fields may contain separators, doubled quotes and
/// line breaks. A trailing '\r' before '\n' is dropped.
class Reader {
 public:
  Reader(std::istream& in, std::string name);

  /// Returns false at end of input.
  bool next(Row& row);

  /// Reads the first record and checks it equals `expected` exactly.
  void expect_header(const std::vector<std::string>& expected);

  const std::string& name() const noexcept { return name_; }

 private:
  std::istream& in_;
  std::string name_;
  std::size_t line_ = 1;
};

std::string escape(std::string_view field);

void write_row(std::ostream& out, const std::vector<std::string>& fields);

/// Splits on a single-character separator; an empty input yields no parts.
std::vector<std::string> split(std::string_view s, char sep);
std::string join(const std::vector<std::string>& parts, char sep);

}  // namespace peerscope::csv
