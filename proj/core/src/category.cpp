#include "peerscope/category.hpp"

namespace peerscope {

std::string_view to_string(Category c) noexcept {
  switch (c) {
    case Category::High: return "High";
    case Category::Mid: return "Mid";
    case Category::Low: return "Low";
  }
  return "?";
}

std::optional<Category> parse_category(std::string_view s) noexcept {
  if (s == "High" || s == "high") return Category::High;
  if (s == "Mid" || s == "mid") return Category::Mid;
  if (s == "Low" || s == "low") return Category::Low;
  return std::nullopt;
}

}  // namespace peerscope
