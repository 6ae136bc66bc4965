#pragma once

#include <array>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "layoutgt/evaluator.hpp"
#include "layoutgt/pipeline.hpp"

namespace layoutgt {

struct CocoImage {
  int id = 0;
  std::string file_name;
  double width = 0.0;
  double height = 0.0;
};

struct CocoAnnotation {
  int id = 0;
  int image_id = 0;
  int category_id = 0;
  std::array<double, 4> bbox{};  // x, y (top-left origin), w, h
  std::vector<double> segmentation;  // flat x, y list of one polygon
  double area = 0.0;
  int iscrowd = 0;
};

struct CocoDataset {
  std::vector<CocoImage> images;
  std::vector<CocoAnnotation> annotations;
};

// Flips to top-left origin (y' = height - y) and multiplies by `scale`.
// Throws ValidationError listing every annotation that would produce an
// invalid record.
CocoDataset to_coco(std::span<const AnnotatedPage> pages, double scale = 1.0);

std::string coco_json(const CocoDataset& dataset);
CocoDataset read_coco(std::istream& in);

// Inverse of to_coco: bottom-left page coordinates in points.
std::vector<AnnotatedPage> pages_from_coco(const CocoDataset& dataset, double scale = 1.0);

// Evaluator inputs keyed by image id, boxes in the file's top-left frame.
std::vector<GoldBox> coco_golds(const CocoDataset& dataset);
std::vector<Detection> coco_detections(const CocoDataset& dataset, double score = 1.0);

}  // namespace layoutgt
