#include "layoutgt/quality.hpp"

#include <cstdio>
#include <ostream>
#include <vector>

namespace layoutgt {

double annotation_quality(const PageElements& page, std::span<const LayoutAnnotation> annotations,
                          const BBox& main) {
  std::vector<BBox> cover;
  cover.reserve(annotations.size());
  for (const auto& a : annotations) cover.push_back(a.bbox);

  double total = 0.0;
  double annotated = 0.0;
  for (const auto& element : page_element_boxes(page)) {
    const double area = element.area();
    if (area <= 0.0) continue;
    if (fraction_inside(element, main) < kWithinMainShare) continue;
    total += area;
    if (covered_area(element, cover) >= kAnnotatedCoverage * area) annotated += area;
  }
  return total > 0.0 ? annotated / total : 0.0;
}

bool accept_page(double ratio, bool is_title_page, const QualityThresholds& thresholds) {
  return ratio >= (is_title_page ? thresholds.title_page : thresholds.regular);
}

QualityReport make_quality_report(std::string page_id, double ratio, bool is_title_page,
                                  const QualityThresholds& thresholds) {
  return {std::move(page_id), ratio, is_title_page, accept_page(ratio, is_title_page, thresholds)};
}

std::string quality_tsv_line(const QualityReport& report) {
  char ratio[32];
  std::snprintf(ratio, sizeof ratio, "%.6f", report.ratio);
  return report.page_id + '\t' + ratio + '\t' + (report.is_title_page ? '1' : '0') + '\t' +
         (report.accepted ? '1' : '0');
}

void write_quality_tsv(std::ostream& out, std::span<const QualityReport> reports) {
  for (const auto& r : reports) out << quality_tsv_line(r) << '\n';
}

}  // namespace layoutgt
