// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "layoutgt/coco.hpp"
#include "layoutgt/fuzzymatch.hpp"
#include "layoutgt/geometry.hpp"
#include "layoutgt/partition.hpp"
#include "layoutgt/pipeline.hpp"
#include "layoutgt/quality.hpp"
#include "oracles.hpp"

using namespace layoutgt;
using Clock = std::chrono::steady_clock;
using nlohmann::json;

namespace {

const std::filesystem::path kFixtures = LAYOUTGT_FIXTURE_DIR;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// ---------------------------------------------------------------------------

Outcome budget_formula() {
  Outcome out;
  const auto start = Clock::now();
  out.require(max_distance(20) == 4 && max_distance(40) == 6 && max_distance(41) == 4,
              "boundary values 20/40/41");
  for (long long l = 0; l <= 500; ++l) {
    if (max_distance(l) != oracle::max_distance(l)) {
      out.require(false, "mismatch at length " + std::to_string(l));
      break;
    }
  }
  const double t = seconds_since(start);
  out.require(t < 1.0, "took " + fmt("%.3f s", t));
  if (out.pass) out.detail = "501 lengths exact";
  return out;
}

Outcome levenshtein_oracle() {
  Outcome out;
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::size_t> slen(0, 64), tlen(0, 24);
  std::uniform_int_distribution<int> alphabet(2, 6);
  double library_seconds = 0.0;
  int checked = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto source = oracle::random_string(rng, slen(rng), static_cast<char32_t>(alphabet(rng)));
    const auto target = oracle::random_string(rng, tlen(rng), static_cast<char32_t>(alphabet(rng)));
    // A budget of |target| always admits the empty substring, so a match exists.
    const auto start = Clock::now();
    const auto m = find_near_match(target, source, {target.size(), static_cast<int>(target.size())});
    library_seconds += seconds_since(start);
    const int expected = oracle::min_substring_distance(target, source);
    if (!m || m->distance != expected ||
        oracle::levenshtein(target, source.substr(m->start, m->end - m->start)) != m->distance) {
      out.require(false, "case " + std::to_string(i) + " differs from the exhaustive minimum");
      break;
    }
    ++checked;
  }
  out.require(library_seconds < 10.0, "took " + fmt("%.2f s", library_seconds));
  if (out.pass) out.detail = std::to_string(checked) + " cases exact, matcher time " + fmt("%.3f s", library_seconds);
  return out;
}

Outcome noise_recovery() {
  Outcome out;
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<std::size_t> tlen(5, 120), pad(0, 80);
  std::uniform_int_distribution<int> op(0, 2);
  const auto start = Clock::now();
  int recovered = 0;
  for (int i = 0; i < 500; ++i) {
    const auto target = oracle::random_string(rng, tlen(rng), 26);
    const int dmax = max_distance(static_cast<long long>(target.size()));
    std::uniform_int_distribution<int> kdist(0, dmax);
    const int k = kdist(rng);
    std::u32string noisy = target;
    for (int e = 0; e < k; ++e) {
      const auto c = oracle::random_string(rng, 1, 26)[0];
      const int kind = noisy.empty() ? 1 : op(rng);
      std::uniform_int_distribution<std::size_t> at(0, noisy.empty() ? 0 : noisy.size() - 1);
      if (kind == 0) {
        noisy[at(rng)] = c;
      } else if (kind == 1) {
        std::uniform_int_distribution<std::size_t> ins(0, noisy.size());
        noisy.insert(noisy.begin() + static_cast<long>(ins(rng)), c);
      } else {
        noisy.erase(noisy.begin() + static_cast<long>(at(rng)));
      }
    }
    const std::u32string source =
        oracle::random_string(rng, pad(rng), 26) + noisy + oracle::random_string(rng, pad(rng), 26);
    const auto m = find_near_match(target, source, MatchBudget::for_target(target.size()));
    if (m && m->distance <= k) {
      ++recovered;
    } else {
      out.require(false, "case " + std::to_string(i) + " with k=" + std::to_string(k) + " not recovered");
    }
  }
  const double t = seconds_since(start);
  out.require(t < 10.0, "took " + fmt("%.2f s", t));
  if (out.pass) out.detail = std::to_string(recovered) + "/500 recovered in " + fmt("%.2f s", t);
  return out;
}

// Independent structural check: even count >= 4, axis-parallel alternating
// non-degenerate edges, and no two non-adjacent edges touching.
bool simple_rectilinear(const std::vector<Point>& v) {
  const std::size_t n = v.size();
  if (n < 4 || n % 2 != 0) return false;
  for (std::size_t i = 0; i < n; ++i) {
    const Point a = v[i], b = v[(i + 1) % n], c = v[(i + 2) % n];
    const bool h1 = a.y == b.y && a.x != b.x, v1 = a.x == b.x && a.y != b.y;
    const bool h2 = b.y == c.y && b.x != c.x, v2 = b.x == c.x && b.y != c.y;
    if (!(h1 || v1) || !(h2 || v2) || h1 == h2) return false;
  }
  auto touches = [](Point a, Point b, Point c, Point d) {
    const double ax0 = std::min(a.x, b.x), ax1 = std::max(a.x, b.x), ay0 = std::min(a.y, b.y), ay1 = std::max(a.y, b.y);
    const double cx0 = std::min(c.x, d.x), cx1 = std::max(c.x, d.x), cy0 = std::min(c.y, d.y), cy1 = std::max(c.y, d.y);
    return ax0 <= cx1 && cx0 <= ax1 && ay0 <= cy1 && cy0 <= ay1;
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      if (touches(v[i], v[(i + 1) % n], v[j], v[(j + 1) % n])) return false;
    }
  }
  return true;
}

// Even-odd ray cast; only used on points strictly inside line boxes.
bool inside(const std::vector<Point>& v, Point p) {
  bool in = false;
  for (std::size_t i = 0, j = v.size() - 1; i < v.size(); j = i++) {
    if ((v[i].y > p.y) != (v[j].y > p.y) && p.x < (v[j].x - v[i].x) * (p.y - v[i].y) / (v[j].y - v[i].y) + v[i].x) {
      in = !in;
    }
  }
  return in;
}

Outcome segmentation_polygons() {
  Outcome out;
  std::mt19937_64 rng(31337);
  std::uniform_int_distribution<int> count(1, 12), left(50, 150), right(250, 400), height(8, 14);
  const auto start = Clock::now();
  for (int trial = 0; trial < 500 && out.pass; ++trial) {
    std::vector<Textline> lines;
    std::vector<BBox> boxes;
    double top = 740.0;
    const int n = count(rng);
    for (int i = 0; i < n; ++i) {
      const double h = height(rng);
      // Stacked lines abut, so the union of their boxes is one region; edges
      // sit on a 1pt grid, so any step is at least the 0.5pt tolerance.
      const BBox b{static_cast<double>(left(rng)), top - h, static_cast<double>(right(rng)), top};
      lines.push_back({"x", b});
      boxes.push_back(b);
      top -= h;
    }
    const auto poly = textline_segmentation(lines);
    const auto& v = poly.vertices;
    out.require(simple_rectilinear(v), "trial " + std::to_string(trial) + ": polygon not simple/rectilinear");
    for (const auto& b : boxes) {
      for (Point p : {Point{b.x0 + 0.01, b.y0 + 0.01}, Point{b.x1 - 0.01, b.y1 - 0.01},
                      Point{b.x0 + 0.01, b.y1 - 0.01}, Point{b.x1 - 0.01, b.y0 + 0.01}}) {
        out.require(inside(v, p), "trial " + std::to_string(trial) + ": line box not contained");
      }
    }
    out.require(oracle::same_polygon(v, oracle::union_contour(boxes), 0.5),
                "trial " + std::to_string(trial) + ": differs from the rasterized contour");
  }
  const double t = seconds_since(start);
  out.require(t < 30.0, "took " + fmt("%.2f s", t));
  if (out.pass) out.detail = "500 stacks match the contour oracle in " + fmt("%.2f s", t);
  return out;
}

// ---------------------------------------------------------------------------

struct BodyCase {
  const char* name;
  std::vector<BBox> text;  // annotated text, captions included
  std::vector<CaptionMatch> captions;
  std::vector<BBox> images, shapes, unconsumed;
  std::vector<BBox> expected;  // in caption order, top to bottom
};

CaptionMatch figure_caption(const char* path, BBox box) {
  return {{0, NodeRole::FigureBody, path}, LayoutCategory::Figure, box};
}
CaptionMatch table_caption(const char* path, BBox box) {
  return {{0, NodeRole::TableBody, path}, LayoutCategory::Table, box};
}

std::vector<BodyCase> body_cases() {
  return {
      {"figure between paragraphs",
       {{72, 650, 540, 720}, {72, 400, 540, 420}, {72, 100, 540, 380}},
       {figure_caption("/f", {72, 400, 540, 420})},
       {{100, 450, 500, 630}}, {}, {},
       {{100, 450, 500, 630}}},
      {"nothing above the caption reaches the top of main",
       {{72, 300, 290, 320}, {320, 100, 540, 720}, {72, 100, 290, 280}},
       {figure_caption("/f", {72, 300, 290, 320})},
       {{80, 340, 280, 700}}, {}, {},
       {{80, 340, 280, 700}}},
      {"table grid below its caption",
       {{72, 600, 540, 720}, {72, 560, 540, 580}, {72, 100, 540, 380}},
       {table_caption("/t", {72, 560, 540, 580})},
       {}, {{90, 400, 270, 540}, {270, 400, 450, 540}}, {},
       {{90, 400, 450, 540}}},
      {"figure wider than its caption",
       {{72, 650, 540, 720}, {200, 400, 400, 420}, {72, 100, 540, 380}},
       {figure_caption("/f", {200, 400, 400, 420})},
       {{120, 440, 480, 630}}, {}, {},
       {{120, 440, 480, 630}}},
      {"element mostly outside the margin is excluded",
       {{72, 650, 540, 720}, {72, 400, 540, 420}, {72, 100, 540, 380}},
       {figure_caption("/f", {72, 400, 540, 420})},
       {{100, 450, 500, 630}, {100, 620, 300, 720}}, {}, {},
       {{100, 450, 500, 630}}},
      {"hairline overhang is kept and clipped",
       {{72, 650, 540, 720}, {72, 400, 540, 420}, {72, 100, 540, 380}},
       {figure_caption("/f", {72, 400, 540, 420})},
       {{71.5, 450, 540.5, 650.4}}, {}, {},
       {{72, 450, 540, 650}}},
      {"two figures stacked",
       {{72, 700, 540, 740}, {72, 580, 540, 600}, {72, 300, 540, 320}, {72, 100, 540, 290}},
       {figure_caption("/f2", {72, 300, 540, 320}), figure_caption("/f1", {72, 580, 540, 600})},
       {{80, 610, 300, 690}, {80, 330, 300, 410}}, {}, {},
       {{80, 610, 300, 690}, {80, 330, 300, 410}}},
      {"text abutting the caption leaves no margin",
       {{72, 420, 540, 720}, {72, 400, 540, 420}, {72, 100, 540, 380}},
       {figure_caption("/f", {72, 400, 540, 420})},
       {{100, 200, 200, 300}}, {}, {},
       {}},
      {"axis labels join the figure body",
       {{72, 650, 540, 720}, {72, 400, 540, 420}, {72, 100, 540, 380}},
       {figure_caption("/f", {72, 400, 540, 420})},
       {{150, 460, 450, 630}}, {}, {{140, 440, 200, 450}, {455, 500, 470, 600}},
       {{140, 440, 470, 630}}},
      {"table in the left column",
       {{72, 640, 290, 720}, {72, 600, 290, 620}, {72, 100, 290, 480}, {320, 100, 540, 720}},
       {table_caption("/t", {72, 600, 290, 620})},
       {}, {{80, 500, 280, 590}}, {},
       {{80, 500, 280, 590}}},
  };
}

Outcome body_inference() {
  Outcome out;
  int ok = 0;
  for (const auto& c : body_cases()) {
    PageElements page{"p", 612, 792, {}, c.images, c.shapes};
    PageMatch match;
    match.captions = c.captions;
    match.unconsumed_text = c.unconsumed;
    std::vector<LayoutAnnotation> text;
    for (const auto& b : c.text) text.push_back(body_annotation(LayoutCategory::Text, b, "/p", "p"));
    const auto bodies = infer_bodies(page, match, text);
    bool same = bodies.size() == c.expected.size();
    for (std::size_t i = 0; same && i < bodies.size(); ++i) {
      const BBox& a = bodies[i].bbox;
      const BBox& e = c.expected[i];
      same = std::abs(a.x0 - e.x0) <= 1e-6 && std::abs(a.y0 - e.y0) <= 1e-6 && std::abs(a.x1 - e.x1) <= 1e-6 &&
             std::abs(a.y1 - e.y1) <= 1e-6;
    }
    out.require(same, std::string("page '") + c.name + "'");
    ok += same ? 1 : 0;
  }
  if (out.pass) out.detail = std::to_string(ok) + "/10 pages exact";
  return out;
}

Outcome quality_gate() {
  Outcome out;
  out.require(!accept_page(0.989, false) && accept_page(0.99, false) && accept_page(0.992, false), "non-title");
  out.require(!accept_page(0.899, true) && accept_page(0.90, true) && accept_page(0.92, true), "title");
  if (out.pass) out.detail = "reject/accept/accept at 0.989/0.99/0.992 and 0.899/0.90/0.92";
  return out;
}

Outcome partition() {
  Outcome out;
  const auto corpus = oracle::synthetic_corpus(50, 50);
  const auto quotas = oracle::scaled_quotas();
  const auto split = make_split(corpus, 20240601, quotas);

  std::map<std::string, std::string> journal_split;
  std::set<std::string> ids;
  for (auto s : {Split::Train, Split::Dev, Split::Test}) {
    for (const auto& e : split.entries(s)) {
      out.require(ids.insert(e.page_id).second, "page " + e.page_id + " drawn twice");
      const auto [it, fresh] = journal_split.emplace(e.journal_id, std::string(to_string(s)));
      out.require(fresh || it->second == to_string(s), "journal " + e.journal_id + " in two splits");
    }
  }
  std::map<std::pair<std::string, PageKind>, long> per_journal;
  for (const auto& e : split.train) ++per_journal[{e.journal_id, e.reason}];
  for (const auto& [k, n] : per_journal) out.require(n <= quotas.train_per_journal.at(k.second), "train cap exceeded");
  for (auto s : {Split::Dev, Split::Test}) {
    std::map<PageKind, long> counts;
    for (const auto& e : split.entries(s)) ++counts[e.reason];
    for (const auto& [k, n] : counts) {
      if (k != PageKind::List) out.require(n <= quotas.pool.at(k), "pool quota exceeded");
    }
  }
  std::set<std::string> dev_j(split.dev_journals.begin(), split.dev_journals.end());
  std::set<std::string> test_j(split.test_journals.begin(), split.test_journals.end());
  std::set<std::string> dev_ids, test_ids;
  for (const auto& e : split.dev) dev_ids.insert(e.page_id);
  for (const auto& e : split.test) test_ids.insert(e.page_id);
  long list_pages = 0;
  for (const auto& p : corpus) {
    if (!p.kinds.has_list) continue;
    if (dev_j.contains(p.journal_id)) {
      ++list_pages;
      out.require(dev_ids.contains(p.page_id), "list page " + p.page_id + " missing from dev");
    } else if (test_j.contains(p.journal_id)) {
      ++list_pages;
      out.require(test_ids.contains(p.page_id), "list page " + p.page_id + " missing from test");
    }
  }
  out.require(!dev_j.empty() && !test_j.empty(), "no pool journals");
  const std::string a = split_manifest_json(split);
  const std::string b = split_manifest_json(make_split(corpus, 20240601, quotas));
  out.require(a == b, "repeat run differs");
  if (out.pass) {
    out.detail = std::to_string(dev_j.size()) + " dev / " + std::to_string(test_j.size()) + " test journals, " +
                 std::to_string(list_pages) + " pool list pages kept, repeat identical";
  }
  return out;
}

// ---------------------------------------------------------------------------

bool near_array(const json& a, const json& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_array()) {
      if (!near_array(a[i], b[i])) return false;
    } else if (std::abs(a[i].get<double>() - b[i].get<double>()) > 1e-6) {
      return false;
    }
  }
  return true;
}

bool same_annotation(const json& a, const json& b) {
  return a.at("category") == b.at("category") && a.at("source_node") == b.at("source_node") &&
         a.value("merged_nodes", json::array()) == b.value("merged_nodes", json::array()) &&
         near_array(a.at("bbox"), b.at("bbox")) && near_array(a.at("segmentation"), b.at("segmentation"));
}

// Order-insensitive comparison of two annotation files.
std::string compare_files(const json& got, const json& want) {
  if (got.at("document") != want.at("document") || got.at("journal_id") != want.at("journal_id")) return "header";
  std::map<std::string, json> want_pages;
  for (const auto& p : want.at("pages")) want_pages[p.at("page_id").get<std::string>()] = p;
  if (got.at("pages").size() != want_pages.size()) return "accepted page count";
  for (const auto& p : got.at("pages")) {
    const std::string id = p.at("page_id").get<std::string>();
    const auto it = want_pages.find(id);
    if (it == want_pages.end()) return "unexpected page " + id;
    const json& w = it->second;
    if (p.at("is_title_page") != w.at("is_title_page")) return id + ": title flag";
    if (std::abs(p.at("quality").get<double>() - w.at("quality").get<double>()) > 1e-6) return id + ": quality";
    const auto& ga = p.at("annotations");
    const auto& wa = w.at("annotations");
    if (ga.size() != wa.size()) return id + ": annotation count";
    std::vector<bool> used(wa.size(), false);
    for (const auto& a : ga) {
      bool found = false;
      for (std::size_t k = 0; k < wa.size() && !found; ++k) {
        if (!used[k] && same_annotation(a, wa[k])) used[k] = found = true;
      }
      if (!found) return id + ": no golden match for " + a.at("source_node").get<std::string>();
    }
  }
  return {};
}

Outcome golden_run() {
  Outcome out;
  std::vector<std::string> names;
  for (const auto& e : std::filesystem::directory_iterator(kFixtures / "xml")) names.push_back(e.path().stem().string());
  std::sort(names.begin(), names.end());
  out.require(names.size() == 12, "expected 12 fixture documents");

  std::map<std::string, std::string> golden_tsv;
  {
    std::ifstream in(kFixtures / "golden" / "quality.tsv");
    std::string line;
    while (std::getline(in, line)) golden_tsv[line.substr(0, line.find('\t'))] = line;
  }
  double corrupt_ratio = -1.0;
  bool corrupt_rejected = false;
  for (const auto& name : names) {
    const auto pages = load_page_elements(kFixtures / "elements" / (name + ".elements.json"));
    const auto article = parse_article(kFixtures / "xml" / (name + ".xml"));
    const auto doc = annotate_document(name, pages, article);
    const json got = json::parse(annotation_file_json(doc));
    std::ifstream in(kFixtures / "golden" / (name + ".annotations.json"));
    const json want = json::parse(in);
    const std::string diff = compare_files(got, want);
    out.require(diff.empty(), name + ": " + diff);
    for (const auto& r : doc.reports) {
      const auto it = golden_tsv.find(r.page_id);
      out.require(it != golden_tsv.end() && it->second == quality_tsv_line(r), r.page_id + ": quality.tsv line");
      if (r.page_id == "doc08_corrupt_p2") {
        corrupt_ratio = r.ratio;
        corrupt_rejected = !r.accepted;
      }
    }
  }
  out.require(corrupt_rejected && corrupt_ratio >= 0.0 && corrupt_ratio < 0.99, "corrupted page not rejected");
  if (out.pass) out.detail = "12 documents equal to golden; corrupted page rejected at " + fmt("%.4f", corrupt_ratio);
  return out;
}

Outcome evaluator() {
  Outcome out;
  std::vector<AnnotatedPage> gold_pages;
  for (const auto& e : std::filesystem::directory_iterator(kFixtures / "golden")) {
    if (e.path().filename().string().ends_with(".annotations.json")) {
      auto pages = read_annotation_file(e.path());
      gold_pages.insert(gold_pages.end(), pages.begin(), pages.end());
    }
  }
  std::sort(gold_pages.begin(), gold_pages.end(),
            [](const AnnotatedPage& a, const AnnotatedPage& b) { return a.page_id < b.page_id; });
  const auto coco = to_coco(gold_pages);
  const double self = map_50_95(coco_detections(coco), coco_golds(coco)).macro;
  out.require(self == 1.0, "gold vs gold macro MAP " + fmt("%.6f", self));

  const std::vector<GoldBox> g{{"1", LayoutCategory::Text, {0, 0, 10, 10}}};
  const std::vector<Detection> d{{"1", LayoutCategory::Text, {0, 0, 6, 10}, 1.0}};
  const double single = map_50_95(d, g).macro;
  out.require(std::abs(single - 0.30) <= 1e-9, "IoU 0.6 case gave " + fmt("%.12f", single));

  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> coord(0, 5), image(1, 2);
  std::uniform_real_distribution<double> score(0, 1);
  auto box = [&] {
    const double x = coord(rng), y = coord(rng);
    return BBox{x, y, x + 1 + coord(rng), y + 1 + coord(rng)};
  };
  long instances = 0;
  for (int ng = 0; ng <= 4; ++ng) {
    for (int nd = 0; nd <= 4; ++nd) {
      for (int trial = 0; trial < 200; ++trial) {
        std::vector<GoldBox> golds;
        std::vector<Detection> dets;
        for (int i = 0; i < ng; ++i) golds.push_back({std::to_string(image(rng)), LayoutCategory::Text, box()});
        for (int i = 0; i < nd; ++i) {
          dets.push_back({std::to_string(image(rng)), LayoutCategory::Text, box(), std::round(score(rng) * 4) / 4});
        }
        for (double t : iou_thresholds()) {
          const double lib = average_precision(dets, golds, t);
          const double ref = oracle::brute_force_ap(dets, golds, t);
          out.require(std::abs(lib - ref) <= 1e-12, "AP differs from brute force on a " + std::to_string(ng) + "x" +
                                                        std::to_string(nd) + " instance");
        }
        ++instances;
      }
    }
  }
  if (out.pass) {
    out.detail = "self MAP 1.0, single-detection MAP " + fmt("%.2f", single) + ", " + std::to_string(instances) +
                 " instances match brute force";
  }
  return out;
}

Outcome throughput() {
  Outcome out;
  std::vector<oracle::SyntheticDocument> docs;
  for (int i = 0; i < 100; ++i) docs.push_back(oracle::synthetic_document(1000 + i, 10, "synth" + std::to_string(i)));
  std::size_t pages = 0, accepted = 0;
  const auto start = Clock::now();
  for (std::size_t i = 0; i < docs.size(); ++i) {
    std::istringstream xml(docs[i].xml);
    const auto article = parse_article(xml);
    const auto doc = annotate_document("synth" + std::to_string(i), docs[i].pages, article);
    for (const auto& p : doc.pages) {
      ++pages;
      accepted += p.accepted ? 1 : 0;
    }
  }
  const double t = seconds_since(start);
  out.require(pages == 1000, std::to_string(pages) + " pages generated");
  out.require(t < 60.0, "took " + fmt("%.1f s", t));
  if (out.pass) {
    out.detail = std::to_string(pages) + " pages in " + fmt("%.2f s", t) + " (" + std::to_string(accepted) +
                 " accepted)";
  }
  return out;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"budget formula", budget_formula},
      {"fuzzy match vs exhaustive oracle", levenshtein_oracle},
      {"injected-noise recovery", noise_recovery},
      {"segmentation polygons", segmentation_polygons},
      {"figure/table body inference", body_inference},
      {"quality gate boundaries", quality_gate},
      {"journal-level partition", partition},
      {"end-to-end golden run", golden_run},
      {"evaluator", evaluator},
      {"throughput", throughput},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::printf("%s %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
