#pragma once

#include <charconv>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "peerscope/error.hpp"
#include "peerscope/model.hpp"

namespace peerscope::detail {

template <typename T>
T read_value(std::istream& in, const char* what) {
  T v{};
  if (!(in >> v)) throw Error(std::string("model stream: cannot read ") + what);
  return v;
}

inline double read_double(std::istream& in) {
  auto token = read_value<std::string>(in, "number");
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw Error("model stream: bad number '" + token + "'");
  }
  return v;
}

inline void expect_token(std::istream& in, std::string_view expected) {
  auto token = read_value<std::string>(in, "token");
  if (token != expected) {
    throw Error("model stream: expected '" + std::string(expected) + "', got '" + token + "'");
  }
}

inline void write_header(std::ostream& out, std::string_view kind,
                         const std::vector<std::string>& names) {
  out << kModelMagic << ' ' << kModelFormatVersion << "\nkind " << kind << "\nfeatures "
      << names.size();
  for (const auto& name : names) out << ' ' << name;
  out << '\n';
}

}  // namespace peerscope::detail
