#include "layoutgt/elements.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <sstream>

#include "json.hpp"
#include "layoutgt/error.hpp"

namespace layoutgt {

namespace {

using nlohmann::json;

constexpr double kEncloseTolerance = 0.01;

std::string page_label(std::size_t index, const std::string& page_id) {
  std::string label = "page " + std::to_string(index);
  if (!page_id.empty()) label += " ('" + page_id + "')";
  return label;
}

[[noreturn]] void fail(const std::string& where, const std::string& field, const std::string& what) {
  throw ParseError(where + ": field '" + field + "': " + what);
}

BBox read_bbox(const json& value, const std::string& where, const std::string& field) {
  if (!value.is_array() || value.size() != 4) fail(where, field, "expected [x0, y0, x1, y1]");
  std::array<double, 4> v{};
  for (std::size_t i = 0; i < 4; ++i) {
    if (!value[i].is_number()) fail(where, field, "coordinate " + std::to_string(i) + " is not a number");
    v[i] = value[i].get<double>();
  }
  return {v[0], v[1], v[2], v[3]};
}

double read_number(const json& obj, const char* key, const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end() || !it->is_number()) fail(where, key, "expected a number");
  return it->get<double>();
}

const json& read_array(const json& obj, const char* key, const std::string& where, const json& empty) {
  const auto it = obj.find(key);
  if (it == obj.end()) return empty;
  if (!it->is_array()) fail(where, key, "expected an array");
  return *it;
}

PageElements read_page(const json& node, std::size_t index) {
  const std::string anonymous = page_label(index, "");
  if (!node.is_object()) throw ParseError(anonymous + ": expected an object");

  PageElements page;
  const auto id = node.find("page_id");
  if (id == node.end() || !id->is_string()) fail(anonymous, "page_id", "expected a string");
  page.page_id = id->get<std::string>();
  const std::string where = page_label(index, page.page_id);

  page.width = read_number(node, "width", where);
  page.height = read_number(node, "height", where);

  const json empty = json::array();
  const auto& boxes = read_array(node, "textboxes", where, empty);
  for (std::size_t b = 0; b < boxes.size(); ++b) {
    const std::string field = "textboxes[" + std::to_string(b) + "]";
    const auto& tb = boxes[b];
    if (!tb.is_object()) fail(where, field, "expected an object");
    Textbox box;
    const auto bb = tb.find("bbox");
    if (bb == tb.end()) fail(where, field + ".bbox", "missing");
    box.bbox = read_bbox(*bb, where, field + ".bbox");
    const auto lines = tb.find("lines");
    if (lines == tb.end() || !lines->is_array()) fail(where, field + ".lines", "expected an array");
    for (std::size_t l = 0; l < lines->size(); ++l) {
      const std::string lf = field + ".lines[" + std::to_string(l) + "]";
      const auto& ln = (*lines)[l];
      if (!ln.is_object()) fail(where, lf, "expected an object");
      const auto text = ln.find("text");
      if (text == ln.end() || !text->is_string()) fail(where, lf + ".text", "expected a string");
      const auto lb = ln.find("bbox");
      if (lb == ln.end()) fail(where, lf + ".bbox", "missing");
      box.lines.push_back({text->get<std::string>(), read_bbox(*lb, where, lf + ".bbox")});
    }
    page.textboxes.push_back(std::move(box));
  }
  const auto& images = read_array(node, "images", where, empty);
  for (std::size_t i = 0; i < images.size(); ++i) {
    page.images.push_back(read_bbox(images[i], where, "images[" + std::to_string(i) + "]"));
  }
  const auto& shapes = read_array(node, "shapes", where, empty);
  for (std::size_t i = 0; i < shapes.size(); ++i) {
    page.shapes.push_back(read_bbox(shapes[i], where, "shapes[" + std::to_string(i) + "]"));
  }
  return page;
}

bool is_blank(const std::string& s) {
  return s.find_first_not_of(" \t\r\n\f\v") == std::string::npos;
}

json bbox_json(const BBox& b) { return json::array({b.x0, b.y0, b.x1, b.y1}); }

}  // namespace

std::string Textbox::text() const {
  std::string out;
  for (const auto& line : lines) {
    if (!out.empty()) out += ' ';
    out += line.text;
  }
  return out;
}

Textbox make_textbox(std::vector<Textline> lines) {
  Textbox box;
  if (!lines.empty()) {
    box.bbox = lines.front().bbox;
    for (const auto& l : lines) box.bbox = union_bbox(box.bbox, l.bbox);
  }
  box.lines = std::move(lines);
  return box;
}

std::vector<std::string> validate_page(const PageElements& page) {
  std::vector<std::string> out;
  const std::string where = "page '" + page.page_id + "'";
  if (!std::isfinite(page.width) || !std::isfinite(page.height) || page.width <= 0.0 ||
      page.height <= 0.0) {
    out.push_back(where + ": page size must be positive");
  }
  const BBox page_box = expanded(BBox{0.0, 0.0, page.width, page.height}, kPageTolerance);

  auto check_box = [&](const BBox& b, const std::string& name) {
    if (!b.valid()) {
      out.push_back(where + ": " + name + " " + to_string(b) + " is not a valid box");
    } else if (!contains(page_box, b)) {
      out.push_back(where + ": " + name + " " + to_string(b) + " lies outside the page");
    }
  };

  for (std::size_t b = 0; b < page.textboxes.size(); ++b) {
    const auto& tb = page.textboxes[b];
    const std::string name = "textboxes[" + std::to_string(b) + "]";
    check_box(tb.bbox, name + ".bbox");
    if (tb.lines.empty()) out.push_back(where + ": " + name + " has no lines");
    for (std::size_t l = 0; l < tb.lines.size(); ++l) {
      const auto& ln = tb.lines[l];
      const std::string lname = name + ".lines[" + std::to_string(l) + "]";
      if (is_blank(ln.text)) out.push_back(where + ": " + lname + " has empty text");
      check_box(ln.bbox, lname + ".bbox");
      if (ln.bbox.valid() && tb.bbox.valid() && !contains(tb.bbox, ln.bbox, kEncloseTolerance)) {
        out.push_back(where + ": " + lname + ".bbox " + to_string(ln.bbox) +
                      " is not enclosed by its textbox " + to_string(tb.bbox));
      }
    }
  }
  for (std::size_t i = 0; i < page.images.size(); ++i) {
    check_box(page.images[i], "images[" + std::to_string(i) + "]");
  }
  for (std::size_t i = 0; i < page.shapes.size(); ++i) {
    check_box(page.shapes[i], "shapes[" + std::to_string(i) + "]");
  }
  return out;
}

std::vector<PageElements> load_page_elements(std::istream& source) {
  json doc;
  try {
    doc = json::parse(source);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("interchange file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("interchange file: top level must be an object");
  const auto pages = doc.find("pages");
  if (pages == doc.end() || !pages->is_array()) {
    throw ParseError("interchange file: field 'pages': expected an array");
  }

  std::vector<PageElements> out;
  std::vector<std::string> violations;
  for (std::size_t i = 0; i < pages->size(); ++i) {
    out.push_back(read_page((*pages)[i], i));
    auto v = validate_page(out.back());
    violations.insert(violations.end(), v.begin(), v.end());
  }
  if (!violations.empty()) throw ValidationError(std::move(violations));
  return out;
}

std::vector<PageElements> load_page_elements(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  try {
    return load_page_elements(in);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void write_page_elements(std::ostream& out, std::span<const PageElements> pages) {
  json doc = {{"pages", json::array()}};
  for (const auto& page : pages) {
    json p = {{"page_id", page.page_id}, {"width", page.width}, {"height", page.height}};
    json boxes = json::array();
    for (const auto& tb : page.textboxes) {
      json lines = json::array();
      for (const auto& ln : tb.lines) lines.push_back({{"bbox", bbox_json(ln.bbox)}, {"text", ln.text}});
      boxes.push_back({{"bbox", bbox_json(tb.bbox)}, {"lines", std::move(lines)}});
    }
    p["textboxes"] = std::move(boxes);
    p["images"] = json::array();
    for (const auto& b : page.images) p["images"].push_back(bbox_json(b));
    p["shapes"] = json::array();
    for (const auto& b : page.shapes) p["shapes"].push_back(bbox_json(b));
    doc["pages"].push_back(std::move(p));
  }
  out << doc.dump(1) << '\n';
}

}  // namespace layoutgt
