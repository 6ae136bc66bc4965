#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "layoutgt/bbox.hpp"
#include "layoutgt/categories.hpp"
#include "layoutgt/elements.hpp"

namespace layoutgt {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

// Closed loop of axis-parallel edges. Vertices run clockwise (y up) starting
// at the top-left corner; the closing edge is implicit.
struct RectilinearPolygon {
  std::vector<Point> vertices;

  BBox bounding_box() const;
  double area() const;  // shoelace, always non-negative
  bool contains(Point p, double tol = 1e-9) const;

  static RectilinearPolygon from_box(const BBox& box);
};

// Empty iff the polygon is closed, simple, has an even vertex count >= 4 and
// edges that are axis-parallel, non-degenerate and alternate in orientation.
std::vector<std::string> polygon_violations(const RectilinearPolygon& polygon);

// Steps in the left/right boundary narrower than this are treated as flush.
inline constexpr double kStepTolerance = 0.5;

// Segmentation of a stack of textlines ordered top to bottom. The region is
// the union of the line boxes plus, between consecutive lines, the gap filled
// at the width the two lines share (their full span when they share none).
// Throws std::invalid_argument on empty input.
RectilinearPolygon textline_segmentation(std::span<const Textline> lines);

struct LayoutAnnotation {
  LayoutCategory category = LayoutCategory::Text;
  BBox bbox;
  RectilinearPolygon segmentation;
  std::string source_node;                // path of the XML node
  std::vector<std::string> merged_nodes;  // inline titles/labels folded in
  std::string page_id;
};

// Union of the text-bearing (text/title/list) annotation boxes. Throws
// std::invalid_argument when there are none.
BBox main_text_box(std::span<const LayoutAnnotation> annotations);

// Coordinate tolerance for the body-inference predicates.
inline constexpr double kContainmentTolerance = 1.0;

// Margin box between a caption and the annotated content on the body side.
// Horizontal extent starts at the caption and widens to every `widen_with`
// element that overlaps it horizontally and sits inside the vertical margin,
// clamped to `main`. Empty when the margin has no height.
std::optional<BBox> potential_box(const BBox& caption, std::span<const BBox> annotated,
                                  const BBox& main, std::span<const BBox> widen_with = {});
// Mirror image: the margin below the caption (table bodies).
std::optional<BBox> potential_box_below(const BBox& caption, std::span<const BBox> annotated,
                                        const BBox& main, std::span<const BBox> widen_with = {});

// Index of each candidate counted as inside `potential`: at least half of it
// lies within `potential` grown by kContainmentTolerance.
std::vector<std::size_t> elements_within(const BBox& potential, std::span<const BBox> candidates);

// Union of the candidates inside `potential`, clipped to `potential`.
std::optional<BBox> body_box(const BBox& potential, std::span<const BBox> candidates);

// Body candidates of a page: every textbox, image and shape.
std::vector<BBox> page_element_boxes(const PageElements& page);

std::optional<BBox> figure_body_box(const BBox& caption, std::span<const BBox> annotated,
                                    const BBox& main, std::span<const BBox> candidates);
std::optional<BBox> table_body_box(const BBox& caption, std::span<const BBox> annotated,
                                   const BBox& main, std::span<const BBox> candidates);

// Figure/table body: the box is its own segmentation.
LayoutAnnotation body_annotation(LayoutCategory category, const BBox& box, std::string source_node,
                                 std::string page_id);

// Text/title/list instance from its lines (top to bottom).
LayoutAnnotation text_annotation(LayoutCategory category, std::span<const Textline> lines,
                                 std::string source_node, std::string page_id);

}  // namespace layoutgt
