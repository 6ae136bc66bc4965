#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace layoutgt {

// Layout categories, in the order used for COCO category ids (1..5).
enum class LayoutCategory { Text, Title, List, Table, Figure };

inline constexpr std::array<LayoutCategory, 5> kAllCategories = {
    LayoutCategory::Text, LayoutCategory::Title, LayoutCategory::List, LayoutCategory::Table,
    LayoutCategory::Figure};

std::string_view to_string(LayoutCategory category) noexcept;
std::optional<LayoutCategory> parse_category(std::string_view name) noexcept;

inline int coco_category_id(LayoutCategory category) noexcept {
  return static_cast<int>(category) + 1;
}
std::optional<LayoutCategory> category_from_coco_id(int id) noexcept;

// Categories whose instances are text regions (and define the main text box).
inline bool is_text_category(LayoutCategory category) noexcept {
  return category == LayoutCategory::Text || category == LayoutCategory::Title ||
         category == LayoutCategory::List;
}

}  // namespace layoutgt
