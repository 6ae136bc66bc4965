#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "layoutgt/bbox.hpp"

namespace layoutgt {

struct Textline {
  std::string text;
  BBox bbox;
};

// Block of text as emitted by the extractor. `bbox` encloses every line.
struct Textbox {
  BBox bbox;
  std::vector<Textline> lines;

  // Line texts joined by a single space.
  std::string text() const;
};

// Geometric content of one page, in extractor emission order.
struct PageElements {
  std::string page_id;
  double width = 0.0;
  double height = 0.0;
  std::vector<Textbox> textboxes;
  std::vector<BBox> images;
  std::vector<BBox> shapes;
};

// Builds a textbox whose bbox is the union of the line boxes.
Textbox make_textbox(std::vector<Textline> lines);

// Reads an interchange document ({"pages": [...]}) and validates every page.
// Throws ParseError for schema problems and ValidationError for invariant
// violations.
std::vector<PageElements> load_page_elements(std::istream& source);
std::vector<PageElements> load_page_elements(const std::filesystem::path& path);

// Human-readable violations; empty iff every PageElements invariant holds.
std::vector<std::string> validate_page(const PageElements& page);

// Writes the interchange format read by load_page_elements.
void write_page_elements(std::ostream& out, std::span<const PageElements> pages);

// Page-bound tolerance in points.
inline constexpr double kPageTolerance = 1.0;

}  // namespace layoutgt
