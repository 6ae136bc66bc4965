#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include "layoutgt/bbox.hpp"
#include "layoutgt/elements.hpp"
#include "layoutgt/geometry.hpp"

namespace layoutgt {

struct QualityThresholds {
  double regular = 0.99;
  double title_page = 0.90;
};

struct QualityReport {
  std::string page_id;
  double ratio = 0.0;
  bool is_title_page = false;
  bool accepted = false;
};

// An element counts as annotated when this share of its area is covered by
// the union of annotation boxes.
inline constexpr double kAnnotatedCoverage = 0.95;
// An element belongs to the main text box when this share lies inside it.
inline constexpr double kWithinMainShare = 0.5;

// Annotated element area over element area within `main`, over textboxes,
// images and shapes. Zero-area elements are ignored; 0 when nothing counts.
double annotation_quality(const PageElements& page, std::span<const LayoutAnnotation> annotations,
                          const BBox& main);

// Inclusive thresholds: a ratio equal to the threshold passes.
bool accept_page(double ratio, bool is_title_page, const QualityThresholds& thresholds = {});

QualityReport make_quality_report(std::string page_id, double ratio, bool is_title_page,
                                  const QualityThresholds& thresholds = {});

// page_id, ratio (6 decimals), title flag, accepted flag; tab separated.
std::string quality_tsv_line(const QualityReport& report);
void write_quality_tsv(std::ostream& out, std::span<const QualityReport> reports);

}  // namespace layoutgt
