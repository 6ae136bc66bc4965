#include "layoutgt/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace layoutgt {

namespace {

struct Run {
  double top = 0.0;
  double bottom = 0.0;
  double lo = 0.0;  // smallest edge value in the run
  double hi = 0.0;  // largest edge value in the run
};

struct Slab {
  double top = 0.0;
  double bottom = 0.0;
  double left = 0.0;
  double right = 0.0;
};

// Consecutive slabs whose edge stays within kStepTolerance form one run.
template <class Edge>
std::vector<Run> runs_of(const std::vector<Slab>& slabs, Edge edge) {
  std::vector<Run> runs;
  for (const auto& s : slabs) {
    const double v = edge(s);
    if (!runs.empty()) {
      Run& r = runs.back();
      const double lo = std::min(r.lo, v);
      const double hi = std::max(r.hi, v);
      if (hi - lo <= kStepTolerance) {
        r.lo = lo;
        r.hi = hi;
        r.bottom = s.bottom;
        continue;
      }
    }
    runs.push_back({s.top, s.bottom, v, v});
  }
  return runs;
}

bool segments_touch(Point a0, Point a1, Point b0, Point b1) {
  const double ax0 = std::min(a0.x, a1.x), ax1 = std::max(a0.x, a1.x);
  const double ay0 = std::min(a0.y, a1.y), ay1 = std::max(a0.y, a1.y);
  const double bx0 = std::min(b0.x, b1.x), bx1 = std::max(b0.x, b1.x);
  const double by0 = std::min(b0.y, b1.y), by1 = std::max(b0.y, b1.y);
  return ax0 <= bx1 && bx0 <= ax1 && ay0 <= by1 && by0 <= ay1;
}

double distance_to_segment(Point p, Point a, Point b) {
  const double cx = std::clamp(p.x, std::min(a.x, b.x), std::max(a.x, b.x));
  const double cy = std::clamp(p.y, std::min(a.y, b.y), std::max(a.y, b.y));
  return std::hypot(p.x - cx, p.y - cy);
}

}  // namespace

BBox RectilinearPolygon::bounding_box() const {
  if (vertices.empty()) return {};
  BBox b{vertices[0].x, vertices[0].y, vertices[0].x, vertices[0].y};
  for (const auto& v : vertices) {
    b.x0 = std::min(b.x0, v.x);
    b.y0 = std::min(b.y0, v.y);
    b.x1 = std::max(b.x1, v.x);
    b.y1 = std::max(b.y1, v.y);
  }
  return b;
}

double RectilinearPolygon::area() const {
  double twice = 0.0;
  const std::size_t n = vertices.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point& a = vertices[i];
    const Point& b = vertices[(i + 1) % n];
    twice += a.x * b.y - b.x * a.y;
  }
  return std::abs(twice) / 2.0;
}

bool RectilinearPolygon::contains(Point p, double tol) const {
  const std::size_t n = vertices.size();
  if (n < 3) return false;
  bool inside = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point& a = vertices[i];
    const Point& b = vertices[j];
    if (distance_to_segment(p, a, b) <= tol) return true;
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < x) inside = !inside;
    }
  }
  return inside;
}

RectilinearPolygon RectilinearPolygon::from_box(const BBox& box) {
  return {{{box.x0, box.y1}, {box.x1, box.y1}, {box.x1, box.y0}, {box.x0, box.y0}}};
}

std::vector<std::string> polygon_violations(const RectilinearPolygon& polygon) {
  std::vector<std::string> out;
  const auto& v = polygon.vertices;
  const std::size_t n = v.size();
  if (n < 4) {
    out.push_back("fewer than 4 vertices");
    return out;
  }
  if (n % 2 != 0) out.push_back("odd vertex count " + std::to_string(n));

  std::vector<bool> horizontal(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Point& a = v[i];
    const Point& b = v[(i + 1) % n];
    const bool h = a.y == b.y;
    const bool vert = a.x == b.x;
    if (h && vert) {
      out.push_back("edge " + std::to_string(i) + " has zero length");
    } else if (!h && !vert) {
      out.push_back("edge " + std::to_string(i) + " is not axis-parallel");
    }
    horizontal[i] = h;
  }
  if (!out.empty()) return out;

  for (std::size_t i = 0; i < n; ++i) {
    if (horizontal[i] == horizontal[(i + 1) % n]) {
      out.push_back("edges " + std::to_string(i) + " and " + std::to_string((i + 1) % n) +
                    " do not alternate orientation");
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;  // adjacent through the closing vertex
      if (segments_touch(v[i], v[(i + 1) % n], v[j], v[(j + 1) % n])) {
        out.push_back("edges " + std::to_string(i) + " and " + std::to_string(j) + " intersect");
      }
    }
  }
  return out;
}

RectilinearPolygon textline_segmentation(std::span<const Textline> lines) {
  if (lines.empty()) throw std::invalid_argument("textline_segmentation: no lines");

  std::vector<BBox> rects;
  rects.reserve(lines.size() * 2);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    rects.push_back(lines[i].bbox);
    if (i + 1 == lines.size()) continue;
    const BBox& upper = lines[i].bbox;
    const BBox& lower = lines[i + 1].bbox;
    if (lower.y1 >= upper.y0) continue;
    const double shared_lo = std::max(upper.x0, lower.x0);
    const double shared_hi = std::min(upper.x1, lower.x1);
    if (shared_lo < shared_hi) {
      rects.push_back({shared_lo, lower.y1, shared_hi, upper.y0});
    } else {
      rects.push_back({std::min(upper.x0, lower.x0), lower.y1, std::max(upper.x1, lower.x1), upper.y0});
    }
  }

  std::vector<double> ys;
  for (const auto& r : rects) {
    ys.push_back(r.y0);
    ys.push_back(r.y1);
  }
  std::sort(ys.begin(), ys.end(), std::greater<>());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());

  std::vector<Slab> slabs;
  for (std::size_t k = 0; k + 1 < ys.size(); ++k) {
    Slab s{ys[k], ys[k + 1], std::numeric_limits<double>::infinity(),
           -std::numeric_limits<double>::infinity()};
    for (const auto& r : rects) {
      if (r.y1 >= s.top && r.y0 <= s.bottom) {
        s.left = std::min(s.left, r.x0);
        s.right = std::max(s.right, r.x1);
      }
    }
    if (s.left < s.right) slabs.push_back(s);
  }

  const BBox bounds = union_bbox(rects);
  if (slabs.empty()) return RectilinearPolygon::from_box(bounds);

  const auto right = runs_of(slabs, [](const Slab& s) { return s.right; });
  const auto left = runs_of(slabs, [](const Slab& s) { return s.left; });

  RectilinearPolygon poly;
  poly.vertices.push_back({left.front().lo, right.front().top});
  for (const auto& r : right) {
    poly.vertices.push_back({r.hi, r.top});
    poly.vertices.push_back({r.hi, r.bottom});
  }
  for (auto it = left.rbegin(); it != left.rend(); ++it) {
    poly.vertices.push_back({it->lo, it->bottom});
    poly.vertices.push_back({it->lo, it->top});
  }
  poly.vertices.pop_back();

  // Lines that only touch at a corner cannot form one simple outline.
  if (!polygon_violations(poly).empty()) return RectilinearPolygon::from_box(bounds);
  return poly;
}

BBox main_text_box(std::span<const LayoutAnnotation> annotations) {
  std::vector<BBox> boxes;
  for (const auto& a : annotations) {
    if (is_text_category(a.category)) boxes.push_back(a.bbox);
  }
  if (boxes.empty()) throw std::invalid_argument("main_text_box: page has no annotated text");
  return union_bbox(boxes);
}

namespace {

enum class Side { Above, Below };

double margin_limit(Side side, const BBox& caption, const BBox& extent,
                    std::span<const BBox> annotated, const BBox& main) {
  double limit = side == Side::Above ? main.y1 : main.y0;
  for (const auto& b : annotated) {
    if (horizontal_overlap(b, extent) <= 0.0) continue;
    if (side == Side::Above && b.y0 >= caption.y1 - kContainmentTolerance) {
      limit = std::min(limit, b.y0);
    } else if (side == Side::Below && b.y1 <= caption.y0 + kContainmentTolerance) {
      limit = std::max(limit, b.y1);
    }
  }
  return limit;
}

std::optional<BBox> margin_box(Side side, const BBox& caption, std::span<const BBox> annotated,
                               const BBox& main, std::span<const BBox> widen_with) {
  BBox extent{std::max(caption.x0, main.x0), 0.0, std::min(caption.x1, main.x1), 0.0};
  double near_edge = side == Side::Above ? caption.y1 : caption.y0;
  double far_edge = 0.0;
  // The extent only grows, so this settles after at most |widen_with| rounds.
  for (;;) {
    far_edge = margin_limit(side, caption, extent, annotated, main);
    const double lo = std::min(near_edge, far_edge);
    const double hi = std::max(near_edge, far_edge);
    BBox grown = extent;
    for (const auto& e : widen_with) {
      if (horizontal_overlap(e, grown) <= 0.0) continue;
      if (e.y0 < lo - kContainmentTolerance || e.y1 > hi + kContainmentTolerance) continue;
      grown.x0 = std::min(grown.x0, e.x0);
      grown.x1 = std::max(grown.x1, e.x1);
    }
    grown.x0 = std::max(grown.x0, main.x0);
    grown.x1 = std::min(grown.x1, main.x1);
    if (grown.x0 >= extent.x0 && grown.x1 <= extent.x1) break;
    extent.x0 = std::min(extent.x0, grown.x0);
    extent.x1 = std::max(extent.x1, grown.x1);
  }
  const double height = side == Side::Above ? far_edge - near_edge : near_edge - far_edge;
  if (height <= 0.0 || extent.x1 <= extent.x0) return std::nullopt;
  if (side == Side::Above) return BBox{extent.x0, near_edge, extent.x1, far_edge};
  return BBox{extent.x0, far_edge, extent.x1, near_edge};
}

}  // namespace

std::optional<BBox> potential_box(const BBox& caption, std::span<const BBox> annotated,
                                  const BBox& main, std::span<const BBox> widen_with) {
  return margin_box(Side::Above, caption, annotated, main, widen_with);
}

std::optional<BBox> potential_box_below(const BBox& caption, std::span<const BBox> annotated,
                                        const BBox& main, std::span<const BBox> widen_with) {
  return margin_box(Side::Below, caption, annotated, main, widen_with);
}

std::vector<std::size_t> elements_within(const BBox& potential, std::span<const BBox> candidates) {
  const BBox grown = expanded(potential, kContainmentTolerance);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (fraction_inside(candidates[i], grown) >= 0.5) out.push_back(i);
  }
  return out;
}

std::optional<BBox> body_box(const BBox& potential, std::span<const BBox> candidates) {
  const auto inside = elements_within(potential, candidates);
  if (inside.empty()) return std::nullopt;
  std::vector<BBox> boxes;
  boxes.reserve(inside.size());
  for (auto i : inside) boxes.push_back(candidates[i]);
  const auto clipped = intersection(union_bbox(boxes), potential);
  if (!clipped || clipped->area() <= 0.0) return std::nullopt;
  return clipped;
}

std::vector<BBox> page_element_boxes(const PageElements& page) {
  std::vector<BBox> out;
  for (const auto& tb : page.textboxes) out.push_back(tb.bbox);
  out.insert(out.end(), page.images.begin(), page.images.end());
  out.insert(out.end(), page.shapes.begin(), page.shapes.end());
  return out;
}

std::optional<BBox> figure_body_box(const BBox& caption, std::span<const BBox> annotated,
                                    const BBox& main, std::span<const BBox> candidates) {
  const auto potential = potential_box(caption, annotated, main, candidates);
  if (!potential) return std::nullopt;
  return body_box(*potential, candidates);
}

std::optional<BBox> table_body_box(const BBox& caption, std::span<const BBox> annotated,
                                   const BBox& main, std::span<const BBox> candidates) {
  const auto potential = potential_box_below(caption, annotated, main, candidates);
  if (!potential) return std::nullopt;
  return body_box(*potential, candidates);
}

LayoutAnnotation body_annotation(LayoutCategory category, const BBox& box, std::string source_node,
                                 std::string page_id) {
  LayoutAnnotation a;
  a.category = category;
  a.bbox = box;
  a.segmentation = RectilinearPolygon::from_box(box);
  a.source_node = std::move(source_node);
  a.page_id = std::move(page_id);
  return a;
}

LayoutAnnotation text_annotation(LayoutCategory category, std::span<const Textline> lines,
                                 std::string source_node, std::string page_id) {
  LayoutAnnotation a;
  a.category = category;
  a.segmentation = textline_segmentation(lines);
  a.bbox = a.segmentation.bounding_box();
  a.source_node = std::move(source_node);
  a.page_id = std::move(page_id);
  return a;
}

}  // namespace layoutgt
