#include "layoutgt/coco.hpp"

#include <cmath>
#include <istream>

#include "json.hpp"
#include "layoutgt/error.hpp"

namespace layoutgt {

namespace {

using nlohmann::json;

constexpr double kBoxMatchTolerance = 1e-6;

std::string image_file_name(const std::string& page_id) { return page_id + ".png"; }

std::string page_id_of(const std::string& file_name) {
  constexpr std::string_view ext = ".png";
  if (file_name.size() > ext.size() && file_name.ends_with(ext)) {
    return file_name.substr(0, file_name.size() - ext.size());
  }
  return file_name;
}

bool near(const BBox& a, const BBox& b) {
  return std::abs(a.x0 - b.x0) <= kBoxMatchTolerance && std::abs(a.y0 - b.y0) <= kBoxMatchTolerance &&
         std::abs(a.x1 - b.x1) <= kBoxMatchTolerance && std::abs(a.y1 - b.y1) <= kBoxMatchTolerance;
}

}  // namespace

CocoDataset to_coco(std::span<const AnnotatedPage> pages, double scale) {
  if (!(scale > 0.0) || !std::isfinite(scale)) throw std::invalid_argument("to_coco: scale must be positive");
  CocoDataset out;
  std::vector<std::string> violations;
  int next_annotation = 1;
  for (std::size_t p = 0; p < pages.size(); ++p) {
    const AnnotatedPage& page = pages[p];
    const int image_id = static_cast<int>(p) + 1;
    out.images.push_back({image_id, image_file_name(page.page_id), page.width * scale, page.height * scale});
    const BBox page_box = expanded(BBox{0.0, 0.0, page.width, page.height}, kPageTolerance);

    for (std::size_t a = 0; a < page.annotations.size(); ++a) {
      const LayoutAnnotation& ann = page.annotations[a];
      const std::string where = "page '" + page.page_id + "' annotation " + std::to_string(a);
      const std::size_t before = violations.size();
      if (!ann.bbox.valid() || ann.bbox.width() <= 0.0 || ann.bbox.height() <= 0.0) {
        violations.push_back(where + ": degenerate bbox " + to_string(ann.bbox));
      } else if (!contains(page_box, ann.bbox)) {
        violations.push_back(where + ": bbox " + to_string(ann.bbox) + " outside the page");
      }
      for (const auto& v : polygon_violations(ann.segmentation)) {
        violations.push_back(where + ": segmentation " + v);
      }
      if (violations.size() == before && !near(ann.segmentation.bounding_box(), ann.bbox)) {
        violations.push_back(where + ": segmentation bounds " + to_string(ann.segmentation.bounding_box()) +
                             " differ from bbox " + to_string(ann.bbox));
      }
      if (violations.size() != before) continue;

      CocoAnnotation c;
      c.id = next_annotation++;
      c.image_id = image_id;
      c.category_id = coco_category_id(ann.category);
      c.bbox = {ann.bbox.x0 * scale, (page.height - ann.bbox.y1) * scale, ann.bbox.width() * scale,
                ann.bbox.height() * scale};
      RectilinearPolygon flipped;
      for (const auto& v : ann.segmentation.vertices) {
        c.segmentation.push_back(v.x * scale);
        c.segmentation.push_back((page.height - v.y) * scale);
        flipped.vertices.push_back({v.x * scale, (page.height - v.y) * scale});
      }
      c.area = flipped.area();
      out.annotations.push_back(std::move(c));
    }
  }
  if (!violations.empty()) throw ValidationError(std::move(violations));
  return out;
}

std::string coco_json(const CocoDataset& dataset) {
  json doc;
  doc["images"] = json::array();
  for (const auto& img : dataset.images) {
    doc["images"].push_back(
        {{"id", img.id}, {"file_name", img.file_name}, {"width", img.width}, {"height", img.height}});
  }
  doc["annotations"] = json::array();
  for (const auto& a : dataset.annotations) {
    doc["annotations"].push_back({{"id", a.id},
                                  {"image_id", a.image_id},
                                  {"category_id", a.category_id},
                                  {"bbox", a.bbox},
                                  {"segmentation", json::array({a.segmentation})},
                                  {"area", a.area},
                                  {"iscrowd", a.iscrowd}});
  }
  doc["categories"] = json::array();
  for (auto c : kAllCategories) {
    doc["categories"].push_back({{"id", coco_category_id(c)}, {"name", std::string(to_string(c))}});
  }
  return doc.dump() + "\n";
}

CocoDataset read_coco(std::istream& in) {
  CocoDataset out;
  try {
    const json doc = json::parse(in);
    for (const auto& img : doc.at("images")) {
      out.images.push_back({img.at("id").get<int>(), img.at("file_name").get<std::string>(),
                            img.at("width").get<double>(), img.at("height").get<double>()});
    }
    for (const auto& a : doc.at("annotations")) {
      CocoAnnotation c;
      c.id = a.at("id").get<int>();
      c.image_id = a.at("image_id").get<int>();
      c.category_id = a.at("category_id").get<int>();
      c.bbox = a.at("bbox").get<std::array<double, 4>>();
      const auto& seg = a.at("segmentation");
      if (seg.is_array() && !seg.empty()) c.segmentation = seg.at(0).get<std::vector<double>>();
      c.area = a.value("area", 0.0);
      c.iscrowd = a.value("iscrowd", 0);
      out.annotations.push_back(std::move(c));
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("COCO file: ") + e.what());
  }
  return out;
}

std::vector<AnnotatedPage> pages_from_coco(const CocoDataset& dataset, double scale) {
  std::vector<AnnotatedPage> pages;
  std::map<int, std::size_t> index;
  for (const auto& img : dataset.images) {
    AnnotatedPage page;
    page.page_id = page_id_of(img.file_name);
    page.width = img.width / scale;
    page.height = img.height / scale;
    page.accepted = true;
    index[img.id] = pages.size();
    pages.push_back(std::move(page));
  }
  for (const auto& c : dataset.annotations) {
    const auto it = index.find(c.image_id);
    if (it == index.end()) throw ParseError("COCO annotation " + std::to_string(c.id) + " has unknown image_id");
    const auto category = category_from_coco_id(c.category_id);
    if (!category) throw ParseError("COCO annotation " + std::to_string(c.id) + " has unknown category_id");
    AnnotatedPage& page = pages[it->second];
    LayoutAnnotation a;
    a.category = *category;
    a.page_id = page.page_id;
    const double x = c.bbox[0] / scale, y = c.bbox[1] / scale, w = c.bbox[2] / scale, h = c.bbox[3] / scale;
    a.bbox = {x, page.height - y - h, x + w, page.height - y};
    for (std::size_t i = 0; i + 1 < c.segmentation.size(); i += 2) {
      a.segmentation.vertices.push_back({c.segmentation[i] / scale, page.height - c.segmentation[i + 1] / scale});
    }
    page.annotations.push_back(std::move(a));
  }
  return pages;
}

std::vector<GoldBox> coco_golds(const CocoDataset& dataset) {
  std::vector<GoldBox> out;
  for (const auto& c : dataset.annotations) {
    const auto category = category_from_coco_id(c.category_id);
    if (!category) throw ParseError("COCO annotation " + std::to_string(c.id) + " has unknown category_id");
    out.push_back({std::to_string(c.image_id), *category,
                   {c.bbox[0], c.bbox[1], c.bbox[0] + c.bbox[2], c.bbox[1] + c.bbox[3]}});
  }
  return out;
}

std::vector<Detection> coco_detections(const CocoDataset& dataset, double score) {
  std::vector<Detection> out;
  for (const auto& g : coco_golds(dataset)) out.push_back({g.image, g.category, g.bbox, score});
  return out;
}

}  // namespace layoutgt
