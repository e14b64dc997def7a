#pragma once

#include <json.hpp>
#include <optional>
#include <string>

#include "peerscope/evaluation.hpp"
#include "peerscope/format.hpp"

namespace peerscope::detail {

using Json = nlohmann::ordered_json;

/// Rounded through fixed notation so files are byte-stable across libms.
inline Json number(std::optional<double> v, int precision = 12) {
  return v ? Json(std::stod(format_fixed(*v, precision))) : Json(nullptr);
}

Json eval_json(const EvalReport& report);

}  // namespace peerscope::detail
