#include "layoutgt/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <map>
#include <sstream>
#include <system_error>

#include <unistd.h>

#include "json.hpp"
#include "layoutgt/error.hpp"

namespace layoutgt {

namespace {

using nlohmann::json;

json bbox_json(const BBox& b) { return json::array({b.x0, b.y0, b.x1, b.y1}); }

BBox bbox_from(const json& v) {
  const auto a = v.get<std::array<double, 4>>();
  return {a[0], a[1], a[2], a[3]};
}

json annotation_json(const LayoutAnnotation& a) {
  json seg = json::array();
  for (const auto& v : a.segmentation.vertices) seg.push_back(json::array({v.x, v.y}));
  json out = {{"category", std::string(to_string(a.category))},
              {"bbox", bbox_json(a.bbox)},
              {"segmentation", std::move(seg)},
              {"source_node", a.source_node}};
  if (!a.merged_nodes.empty()) out["merged_nodes"] = a.merged_nodes;
  return out;
}

}  // namespace

std::vector<LayoutAnnotation> infer_bodies(const PageElements& page, const PageMatch& match,
                                           std::span<const LayoutAnnotation> text_annotations) {
  std::vector<LayoutAnnotation> out;
  if (match.captions.empty()) return out;
  std::vector<BBox> text_boxes;
  for (const auto& a : text_annotations) {
    if (is_text_category(a.category)) text_boxes.push_back(a.bbox);
  }
  if (text_boxes.empty()) return out;
  const BBox main = union_bbox(text_boxes);

  std::vector<BBox> annotated;
  for (const auto& a : text_annotations) annotated.push_back(a.bbox);

  std::vector<BBox> candidates = match.unconsumed_text;
  candidates.insert(candidates.end(), page.images.begin(), page.images.end());
  candidates.insert(candidates.end(), page.shapes.begin(), page.shapes.end());
  std::vector<bool> used(candidates.size(), false);

  std::vector<const CaptionMatch*> order;
  for (const auto& c : match.captions) order.push_back(&c);
  std::stable_sort(order.begin(), order.end(),
                   [](const CaptionMatch* a, const CaptionMatch* b) { return a->caption_box.y1 > b->caption_box.y1; });

  for (const CaptionMatch* caption : order) {
    std::vector<BBox> available;
    std::vector<std::size_t> index;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if (used[i]) continue;
      available.push_back(candidates[i]);
      index.push_back(i);
    }
    const auto body = caption->body_category == LayoutCategory::Table
                          ? table_body_box(caption->caption_box, annotated, main, available)
                          : figure_body_box(caption->caption_box, annotated, main, available);
    if (!body) continue;
    for (auto k : elements_within(*body, available)) used[index[k]] = true;
    annotated.push_back(*body);
    out.push_back(body_annotation(caption->body_category, *body, caption->body.path, page.page_id));
  }
  return out;
}

PageElements split_at_region_boundaries(const PageElements& page, std::size_t page_index,
                                        std::span<const MatchedRegion> regions) {
  std::map<LineId, std::size_t> owner;
  for (std::size_t r = 0; r < regions.size(); ++r) {
    for (const auto& id : regions[r].line_ids) {
      if (id.page == page_index) owner.emplace(id, r);
    }
  }
  const auto owner_of = [&](std::size_t box, std::size_t line) -> std::ptrdiff_t {
    const auto it = owner.find(LineId{page_index, box, line});
    return it == owner.end() ? -1 : static_cast<std::ptrdiff_t>(it->second);
  };

  PageElements out = page;
  out.textboxes.clear();
  for (std::size_t b = 0; b < page.textboxes.size(); ++b) {
    Textbox rest = page.textboxes[b];
    std::size_t offset = 0;
    for (std::size_t i = 1; i < page.textboxes[b].lines.size(); ++i) {
      if (owner_of(b, i) == owner_of(b, i - 1)) continue;
      auto [head, tail] = split_textbox(rest, i - offset);
      out.textboxes.push_back(std::move(head));
      rest = std::move(tail);
      offset = i;
    }
    out.textboxes.push_back(std::move(rest));
  }
  return out;
}

DocumentAnnotation annotate_document(std::string name, std::span<const PageElements> pages, const Article& article,
                                     const AnnotateOptions& options) {
  DocumentAnnotation doc;
  doc.document = std::move(name);
  doc.journal_id = article.journal_id;

  const NodeGroups groups = prepare_groups(article, options.removal);
  doc.warnings = groups.warnings;
  DocumentMatcher matcher(pages, options.matcher);
  const std::vector<PageMatch> matches = matcher.run(groups);

  for (std::size_t p = 0; p < pages.size(); ++p) {
    const PageElements& page = pages[p];
    const PageMatch& match = matches[p];
    AnnotatedPage out;
    out.document = doc.document;
    out.page_id = page.page_id;
    out.journal_id = doc.journal_id;
    out.width = page.width;
    out.height = page.height;

    for (const auto& region : match.regions) {
      if (region.complete && !region.lines.empty() && region.node.role == NodeRole::ArticleTitle) {
        out.is_title_page = true;
      }
      auto anns = region_to_annotation(region, page.page_id);
      out.annotations.insert(out.annotations.end(), anns.begin(), anns.end());
    }
    const bool has_text = std::any_of(out.annotations.begin(), out.annotations.end(),
                                      [](const LayoutAnnotation& a) { return is_text_category(a.category); });
    if (has_text) {
      auto bodies = infer_bodies(page, match, out.annotations);
      out.annotations.insert(out.annotations.end(), bodies.begin(), bodies.end());
      out.quality = annotation_quality(split_at_region_boundaries(page, p, match.regions), out.annotations,
                                       main_text_box(out.annotations));
    }
    const auto report = make_quality_report(page.page_id, out.quality, out.is_title_page, options.thresholds);
    out.accepted = report.accepted;
    doc.reports.push_back(report);
    doc.pages.push_back(std::move(out));
  }
  return doc;
}

std::string annotation_file_json(const DocumentAnnotation& doc) {
  json pages = json::array();
  for (const auto& page : doc.pages) {
    if (!page.accepted) continue;
    json anns = json::array();
    for (const auto& a : page.annotations) anns.push_back(annotation_json(a));
    pages.push_back({{"page_id", page.page_id},
                     {"width", page.width},
                     {"height", page.height},
                     {"is_title_page", page.is_title_page},
                     {"quality", page.quality},
                     {"annotations", std::move(anns)}});
  }
  json out = {{"document", doc.document}, {"journal_id", doc.journal_id}, {"pages", std::move(pages)}};
  return out.dump(1) + "\n";
}

std::vector<AnnotatedPage> read_annotation_file(std::istream& in) {
  std::vector<AnnotatedPage> out;
  try {
    const json doc = json::parse(in);
    const std::string document = doc.at("document").get<std::string>();
    const std::string journal = doc.at("journal_id").get<std::string>();
    for (const auto& p : doc.at("pages")) {
      AnnotatedPage page;
      page.document = document;
      page.journal_id = journal;
      page.page_id = p.at("page_id").get<std::string>();
      page.width = p.at("width").get<double>();
      page.height = p.at("height").get<double>();
      page.is_title_page = p.at("is_title_page").get<bool>();
      page.quality = p.at("quality").get<double>();
      page.accepted = true;
      for (const auto& a : p.at("annotations")) {
        LayoutAnnotation ann;
        const auto name = a.at("category").get<std::string>();
        const auto category = parse_category(name);
        if (!category) throw ParseError("unknown category '" + name + "'");
        ann.category = *category;
        ann.bbox = bbox_from(a.at("bbox"));
        for (const auto& v : a.at("segmentation")) {
          ann.segmentation.vertices.push_back({v.at(0).get<double>(), v.at(1).get<double>()});
        }
        ann.source_node = a.value("source_node", std::string{});
        if (const auto it = a.find("merged_nodes"); it != a.end()) {
          ann.merged_nodes = it->get<std::vector<std::string>>();
        }
        ann.page_id = page.page_id;
        page.annotations.push_back(std::move(ann));
      }
      out.push_back(std::move(page));
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("annotation file: ") + e.what());
  }
  return out;
}

std::vector<AnnotatedPage> read_annotation_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  try {
    return read_annotation_file(in);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::vector<AnnotatedPage> read_annotation_dir(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    const std::string name = entry.path().filename().string();
    if (entry.is_regular_file() && name.ends_with(".annotations.json")) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<AnnotatedPage> out;
  for (const auto& f : files) {
    auto pages = read_annotation_file(f);
    out.insert(out.end(), std::make_move_iterator(pages.begin()), std::make_move_iterator(pages.end()));
  }
  return out;
}

PageRecord page_record(const AnnotatedPage& page) {
  PageRecord r;
  r.page_id = page.page_id;
  r.journal_id = page.journal_id;
  std::vector<LayoutCategory> categories;
  for (const auto& a : page.annotations) {
    categories.push_back(a.category);
    ++r.instances[static_cast<std::size_t>(a.category)];
  }
  r.kinds = classify_page(categories, page.is_title_page);
  return r;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  static std::atomic<unsigned> counter{0};
  std::filesystem::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter++);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw std::runtime_error("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
  }
}

}  // namespace layoutgt
