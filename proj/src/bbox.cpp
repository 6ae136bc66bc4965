#include "layoutgt/bbox.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace layoutgt {

bool BBox::valid() const noexcept {
  return std::isfinite(x0) && std::isfinite(y0) && std::isfinite(x1) && std::isfinite(y1) &&
         x0 <= x1 && y0 <= y1;
}

std::string to_string(const BBox& box) {
  std::ostringstream out;
  out << '[' << box.x0 << ", " << box.y0 << ", " << box.x1 << ", " << box.y1 << ']';
  return out.str();
}

BBox union_bbox(const BBox& a, const BBox& b) {
  return {std::min(a.x0, b.x0), std::min(a.y0, b.y0), std::max(a.x1, b.x1), std::max(a.y1, b.y1)};
}

BBox union_bbox(std::span<const BBox> boxes) {
  if (boxes.empty()) throw std::invalid_argument("union_bbox: empty input");
  BBox out = boxes.front();
  for (const auto& b : boxes.subspan(1)) out = union_bbox(out, b);
  return out;
}

std::optional<BBox> intersection(const BBox& a, const BBox& b) {
  BBox out{std::max(a.x0, b.x0), std::max(a.y0, b.y0), std::min(a.x1, b.x1), std::min(a.y1, b.y1)};
  if (out.x0 > out.x1 || out.y0 > out.y1) return std::nullopt;
  return out;
}

double overlap_area(const BBox& a, const BBox& b) {
  const auto i = intersection(a, b);
  return i ? i->area() : 0.0;
}

double horizontal_overlap(const BBox& a, const BBox& b) {
  return std::max(0.0, std::min(a.x1, b.x1) - std::max(a.x0, b.x0));
}

BBox expanded(const BBox& box, double margin) {
  return {box.x0 - margin, box.y0 - margin, box.x1 + margin, box.y1 + margin};
}

BBox translated(const BBox& box, double dx, double dy) {
  return {box.x0 + dx, box.y0 + dy, box.x1 + dx, box.y1 + dy};
}

bool contains(const BBox& outer, const BBox& inner, double tol) {
  return inner.x0 >= outer.x0 - tol && inner.y0 >= outer.y0 - tol && inner.x1 <= outer.x1 + tol &&
         inner.y1 <= outer.y1 + tol;
}

double fraction_inside(const BBox& element, const BBox& region) {
  const double w = element.width();
  const double h = element.height();
  if (w > 0.0 && h > 0.0) return overlap_area(element, region) / element.area();

  const auto clipped = intersection(element, region);
  if (!clipped) return 0.0;
  if (w > 0.0) return clipped->width() / w;
  if (h > 0.0) return clipped->height() / h;
  return 1.0;
}

double covered_area(const BBox& box, std::span<const BBox> cover) {
  std::vector<BBox> pieces;
  for (const auto& c : cover) {
    if (auto i = intersection(box, c); i && i->area() > 0.0) pieces.push_back(*i);
  }
  if (pieces.empty()) return 0.0;

  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& p : pieces) {
    xs.insert(xs.end(), {p.x0, p.x1});
    ys.insert(ys.end(), {p.y0, p.y1});
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::sort(ys.begin(), ys.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());

  double total = 0.0;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    for (std::size_t j = 0; j + 1 < ys.size(); ++j) {
      const double cx = 0.5 * (xs[i] + xs[i + 1]);
      const double cy = 0.5 * (ys[j] + ys[j + 1]);
      const bool covered = std::any_of(pieces.begin(), pieces.end(), [&](const BBox& p) {
        return cx > p.x0 && cx < p.x1 && cy > p.y0 && cy < p.y1;
      });
      if (covered) total += (xs[i + 1] - xs[i]) * (ys[j + 1] - ys[j]);
    }
  }
  return total;
}

}  // namespace layoutgt
