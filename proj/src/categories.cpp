#include "layoutgt/categories.hpp"

namespace layoutgt {

std::string_view to_string(LayoutCategory category) noexcept {
  switch (category) {
    case LayoutCategory::Text: return "text";
    case LayoutCategory::Title: return "title";
    case LayoutCategory::List: return "list";
    case LayoutCategory::Table: return "table";
    case LayoutCategory::Figure: return "figure";
  }
  return "text";
}

std::optional<LayoutCategory> parse_category(std::string_view name) noexcept {
  for (auto c : kAllCategories) {
    if (to_string(c) == name) return c;
  }
  return std::nullopt;
}

std::optional<LayoutCategory> category_from_coco_id(int id) noexcept {
  if (id < 1 || id > static_cast<int>(kAllCategories.size())) return std::nullopt;
  return kAllCategories[static_cast<std::size_t>(id - 1)];
}

}  // namespace layoutgt
