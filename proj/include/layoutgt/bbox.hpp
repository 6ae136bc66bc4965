#pragma once

#include <optional>
#include <span>
#include <string>

namespace layoutgt {

// Axis-aligned box in page points, origin at the bottom-left of the page.
struct BBox {
  double x0 = 0.0;
  double y0 = 0.0;
  double x1 = 0.0;
  double y1 = 0.0;

  double width() const noexcept { return x1 - x0; }
  double height() const noexcept { return y1 - y0; }
  double area() const noexcept { return width() * height(); }

  // x0 <= x1, y0 <= y1, all coordinates finite.
  bool valid() const noexcept;

  friend bool operator==(const BBox&, const BBox&) = default;
};

std::string to_string(const BBox& box);

// Smallest box enclosing every input. Throws std::invalid_argument on empty input.
BBox union_bbox(std::span<const BBox> boxes);
BBox union_bbox(const BBox& a, const BBox& b);

std::optional<BBox> intersection(const BBox& a, const BBox& b);
double overlap_area(const BBox& a, const BBox& b);

// Length of the overlap of the horizontal extents (0 when disjoint).
double horizontal_overlap(const BBox& a, const BBox& b);

BBox expanded(const BBox& box, double margin);
BBox translated(const BBox& box, double dx, double dy);

// True when `inner` lies inside `outer` grown by `tol` on every side.
bool contains(const BBox& outer, const BBox& inner, double tol = 0.0);

// Share of `element` lying inside `region`: by area for boxes with area, by
// length for degenerate segments, and 0/1 for points.
double fraction_inside(const BBox& element, const BBox& region);

// Area of the part of `box` covered by the union of `cover` rectangles.
double covered_area(const BBox& box, std::span<const BBox> cover);

}  // namespace layoutgt
