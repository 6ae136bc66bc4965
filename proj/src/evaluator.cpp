#include "layoutgt/evaluator.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <map>
#include <numeric>

#include "json.hpp"
#include "layoutgt/error.hpp"

namespace layoutgt {

double iou(const BBox& a, const BBox& b) {
  const double inter = overlap_area(a, b);
  if (inter <= 0.0) return 0.0;
  const double uni = a.area() + b.area() - inter;
  return uni > 0.0 ? inter / uni : 0.0;
}

double average_precision(std::span<const Detection> detections, std::span<const GoldBox> golds, double threshold) {
  if (golds.empty()) return 0.0;

  std::map<std::string, std::vector<std::size_t>> gold_by_image;
  for (std::size_t g = 0; g < golds.size(); ++g) gold_by_image[golds[g].image].push_back(g);

  std::vector<std::size_t> order(detections.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return detections[a].score > detections[b].score; });

  std::vector<bool> matched(golds.size(), false);
  std::vector<double> precision, recall;
  precision.reserve(order.size());
  recall.reserve(order.size());
  std::size_t tp = 0;
  for (std::size_t rank = 0; rank < order.size(); ++rank) {
    const Detection& d = detections[order[rank]];
    std::optional<std::size_t> best;
    double best_iou = threshold;
    if (const auto it = gold_by_image.find(d.image); it != gold_by_image.end()) {
      for (auto g : it->second) {
        if (matched[g]) continue;
        const double v = iou(d.bbox, golds[g].bbox);
        if (v >= best_iou && (!best || v > best_iou)) {
          best = g;
          best_iou = v;
        }
      }
    }
    if (best) {
      matched[*best] = true;
      ++tp;
    }
    precision.push_back(static_cast<double>(tp) / static_cast<double>(rank + 1));
    recall.push_back(static_cast<double>(tp) / static_cast<double>(golds.size()));
  }
  for (std::size_t i = precision.size(); i-- > 1;) precision[i - 1] = std::max(precision[i - 1], precision[i]);

  double sum = 0.0;
  for (int k = 0; k <= 100; ++k) {
    const double r = k / 100.0;
    const auto it = std::lower_bound(recall.begin(), recall.end(), r);
    if (it != recall.end()) sum += precision[static_cast<std::size_t>(it - recall.begin())];
  }
  return sum / 101.0;
}

std::array<double, 10> iou_thresholds() {
  std::array<double, 10> t{};
  for (int i = 0; i < 10; ++i) t[static_cast<std::size_t>(i)] = (50 + 5 * i) / 100.0;
  return t;
}

MapReport map_50_95(std::span<const Detection> detections, std::span<const GoldBox> golds) {
  MapReport report;
  double total = 0.0;
  int present = 0;
  for (auto category : kAllCategories) {
    std::vector<Detection> dets;
    std::vector<GoldBox> gs;
    for (const auto& d : detections) {
      if (d.category == category) dets.push_back(d);
    }
    for (const auto& g : golds) {
      if (g.category == category) gs.push_back(g);
    }
    if (gs.empty()) continue;
    double ap = 0.0;
    for (double t : iou_thresholds()) ap += average_precision(dets, gs, t);
    ap /= 10.0;
    report.per_category[static_cast<std::size_t>(category)] = ap;
    total += ap;
    ++present;
  }
  report.macro = present > 0 ? total / present : 0.0;
  return report;
}

std::string format_map_report(const MapReport& report) {
  std::string out = "category\tMAP\n";
  char buf[32];
  for (auto category : kAllCategories) {
    const auto& ap = report.per_category[static_cast<std::size_t>(category)];
    out += std::string(to_string(category)) + '\t';
    if (ap) {
      std::snprintf(buf, sizeof buf, "%.4f", *ap);
      out += buf;
    } else {
      out += '-';
    }
    out += '\n';
  }
  std::snprintf(buf, sizeof buf, "%.4f", report.macro);
  out += std::string("macro average\t") + buf + '\n';
  return out;
}

std::vector<Detection> read_coco_results(std::istream& in) {
  std::vector<Detection> out;
  try {
    const auto doc = nlohmann::json::parse(in);
    if (!doc.is_array()) throw ParseError("COCO results: expected an array");
    for (const auto& r : doc) {
      const int category_id = r.at("category_id").get<int>();
      const auto category = category_from_coco_id(category_id);
      if (!category) throw ParseError("COCO results: unknown category_id " + std::to_string(category_id));
      const auto b = r.at("bbox").get<std::array<double, 4>>();
      out.push_back({std::to_string(r.at("image_id").get<int>()), *category, {b[0], b[1], b[0] + b[2], b[1] + b[3]},
                     r.at("score").get<double>()});
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("COCO results: ") + e.what());
  }
  return out;
}

}  // namespace layoutgt
