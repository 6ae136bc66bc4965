#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "layoutgt/elements.hpp"
#include "layoutgt/geometry.hpp"
#include "layoutgt/matcher.hpp"
#include "layoutgt/partition.hpp"
#include "layoutgt/quality.hpp"
#include "layoutgt/xml.hpp"

namespace layoutgt {

struct AnnotatedPage {
  std::string document;
  std::string page_id;
  std::string journal_id;
  double width = 0.0;
  double height = 0.0;
  bool is_title_page = false;
  double quality = 0.0;
  bool accepted = false;
  std::vector<LayoutAnnotation> annotations;
};

struct DocumentAnnotation {
  std::string document;
  std::string journal_id;
  std::vector<AnnotatedPage> pages;  // every page, accepted or not
  std::vector<QualityReport> reports;
  std::vector<std::string> warnings;
};

struct AnnotateOptions {
  MatcherConfig matcher;
  QualityThresholds thresholds;
  RemovalSet removal = RemovalSet::defaults();
};

// Matching, body inference, segmentation and quality control for one
// document.
DocumentAnnotation annotate_document(std::string name, std::span<const PageElements> pages,
                                     const Article& article, const AnnotateOptions& options = {});

// Body inference for one page: captions handled top to bottom; each body
// becomes an obstacle for later margins and its elements are unavailable to
// later bodies.
std::vector<LayoutAnnotation> infer_bodies(const PageElements& page, const PageMatch& match,
                                           std::span<const LayoutAnnotation> text_annotations);

// The page with every textbox divided wherever consecutive lines belong to
// different regions (or to none); the elements quality control scores.
PageElements split_at_region_boundaries(const PageElements& page, std::size_t page_index,
                                        std::span<const MatchedRegion> regions);

// Per-document annotation file; only accepted pages are written.
std::string annotation_file_json(const DocumentAnnotation& doc);
std::vector<AnnotatedPage> read_annotation_file(std::istream& in);
std::vector<AnnotatedPage> read_annotation_file(const std::filesystem::path& path);

// Every *.annotations.json under `dir`, in file-name order.
std::vector<AnnotatedPage> read_annotation_dir(const std::filesystem::path& dir);

PageRecord page_record(const AnnotatedPage& page);

// Writes to a temporary sibling, then renames over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace layoutgt
