#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace peerscope {

/// Three-way author acceptance category. The numeric order is used as the
/// class index by the classifiers.
enum class Category : int { High = 0, Mid = 1, Low = 2 };

inline constexpr std::size_t kCategoryCount = 3;
inline constexpr std::array<Category, kCategoryCount> kAllCategories = {
    Category::High, Category::Mid, Category::Low};

std::string_view to_string(Category c) noexcept;
std::optional<Category> parse_category(std::string_view s) noexcept;

constexpr std::size_t index_of(Category c) noexcept {
  return static_cast<std::size_t>(c);
}

/// author id -> category
using Labels = std::map<std::string, Category, std::less<>>;

}  // namespace peerscope
