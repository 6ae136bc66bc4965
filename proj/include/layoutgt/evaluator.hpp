#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "layoutgt/bbox.hpp"
#include "layoutgt/categories.hpp"

namespace layoutgt {

struct GoldBox {
  std::string image;
  LayoutCategory category = LayoutCategory::Text;
  BBox bbox;
};

struct Detection {
  std::string image;
  LayoutCategory category = LayoutCategory::Text;
  BBox bbox;
  double score = 0.0;
};

double iou(const BBox& a, const BBox& b);

// Single category, single IoU threshold. Detections are ranked by score
// (stable, so equal scores keep input order) and each takes the unmatched
// gold of its image with the highest IoU >= threshold (first gold on IoU
// ties). AP is the mean of the interpolated precision at recall 0, 0.01, ..., 1.
// 0 when there are no golds.
double average_precision(std::span<const Detection> detections, std::span<const GoldBox> golds,
                         double threshold);

// Thresholds 0.50, 0.55, ..., 0.95.
std::array<double, 10> iou_thresholds();

struct MapReport {
  std::array<std::optional<double>, 5> per_category;  // empty: no gold instances
  double macro = 0.0;  // mean over categories present in gold
};

MapReport map_50_95(std::span<const Detection> detections, std::span<const GoldBox> golds);

// Category / MAP table with a macro-average row.
std::string format_map_report(const MapReport& report);

// COCO results format: [{image_id, category_id, bbox: [x, y, w, h], score}].
std::vector<Detection> read_coco_results(std::istream& in);

}  // namespace layoutgt
