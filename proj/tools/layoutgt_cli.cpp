// layoutgt: build layout annotations from PDF elements and article XML,
// split them by journal, export COCO files and score detections.

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "layoutgt/coco.hpp"
#include "layoutgt/error.hpp"
#include "layoutgt/evaluator.hpp"
#include "layoutgt/partition.hpp"
#include "layoutgt/pipeline.hpp"

namespace fs = std::filesystem;
using namespace layoutgt;

namespace {

std::mutex log_mutex;

void log(const std::string& line) {
  std::lock_guard lock(log_mutex);
  std::cerr << line << '\n';
}

struct Pair {
  std::string name;
  fs::path elements;
  fs::path xml;
};

std::vector<Pair> discover_pairs(const fs::path& elements_dir, const fs::path& xml_dir) {
  constexpr std::string_view suffix = ".elements.json";
  std::map<std::string, fs::path> elements;
  for (const auto& e : fs::directory_iterator(elements_dir)) {
    const std::string file = e.path().filename().string();
    if (e.is_regular_file() && file.ends_with(suffix)) {
      elements[file.substr(0, file.size() - suffix.size())] = e.path();
    }
  }
  std::map<std::string, fs::path> xmls;
  for (const auto& e : fs::directory_iterator(xml_dir)) {
    if (e.is_regular_file() && e.path().extension() == ".xml") xmls[e.path().stem().string()] = e.path();
  }
  std::vector<Pair> out;
  for (const auto& [name, path] : elements) {
    const auto x = xmls.find(name);
    if (x == xmls.end()) {
      log("warning: " + path.string() + " has no matching " + name + ".xml; skipped");
      continue;
    }
    out.push_back({name, path, x->second});
  }
  for (const auto& [name, path] : xmls) {
    if (!elements.contains(name)) log("warning: " + path.string() + " has no matching elements file; skipped");
  }
  return out;
}

struct AnnotateArgs {
  fs::path elements_dir;
  fs::path xml_dir;
  fs::path out;
  double quality = 0.99;
  double title_quality = 0.90;
  unsigned workers = 1;
  std::size_t page_lookahead = 1;
  std::optional<fs::path> kinds;
};

int cmd_annotate(const AnnotateArgs& args) {
  fs::create_directories(args.out);
  KindTable kinds = KindTable::defaults();
  if (args.kinds) kinds.load_overrides(*args.kinds);
  AnnotateOptions options;
  options.thresholds = {args.quality, args.title_quality};
  options.matcher.page_lookahead = args.page_lookahead;

  const auto pairs = discover_pairs(args.elements_dir, args.xml_dir);
  if (pairs.empty()) log("warning: no paired documents found");

  std::vector<std::vector<QualityReport>> reports(pairs.size());
  std::atomic<std::size_t> next{0};
  std::atomic<int> failures{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < pairs.size(); i = next++) {
      const Pair& pair = pairs[i];
      try {
        const auto pages = load_page_elements(pair.elements);
        const Article article = parse_article(pair.xml, kinds);
        const auto doc = annotate_document(pair.name, pages, article, options);
        for (const auto& w : doc.warnings) log("warning: " + pair.name + ": " + w);
        write_file_atomic(args.out / (pair.name + ".annotations.json"), annotation_file_json(doc));
        reports[i] = doc.reports;
        const auto accepted = std::count_if(doc.reports.begin(), doc.reports.end(),
                                            [](const QualityReport& r) { return r.accepted; });
        log(pair.name + ": " + std::to_string(accepted) + "/" + std::to_string(doc.reports.size()) +
            " pages accepted");
      } catch (const ValidationError& e) {
        ++failures;
        std::string msg = "error: " + pair.name + ": invalid input";
        for (const auto& v : e.violations()) msg += "\n  " + v;
        log(msg);
      } catch (const std::exception& e) {
        ++failures;
        log("error: " + pair.name + ": " + e.what());
      }
    }
  };
  std::vector<std::thread> pool;
  const unsigned n = std::max(1u, std::min<unsigned>(args.workers, static_cast<unsigned>(std::max<std::size_t>(pairs.size(), 1))));
  for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  std::ostringstream tsv;
  for (const auto& r : reports) write_quality_tsv(tsv, r);
  write_file_atomic(args.out / "quality.tsv", tsv.str());
  return failures == 0 ? 0 : 1;
}

std::vector<AnnotatedPage> load_annotations(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw std::runtime_error(dir.string() + " is not a directory");
  return read_annotation_dir(dir);
}

int cmd_partition(const fs::path& annotations, const fs::path& out, std::uint64_t seed,
                  const std::optional<fs::path>& quota_file) {
  const auto pages = load_annotations(annotations);
  if (pages.empty()) {
    log("error: no accepted pages under " + annotations.string());
    return 1;
  }
  const QuotaConfig quotas = quota_file ? QuotaConfig::load(*quota_file) : QuotaConfig{};
  std::vector<PageRecord> records;
  records.reserve(pages.size());
  for (const auto& p : pages) records.push_back(page_record(p));
  const DatasetSplit split = make_split(records, seed, quotas);
  for (const auto& w : split.warnings) log("warning: " + w);
  fs::create_directories(out);
  write_file_atomic(out / "split.json", split_manifest_json(split));
  log("train " + std::to_string(split.train.size()) + ", dev " + std::to_string(split.dev.size()) + ", test " +
      std::to_string(split.test.size()) + " pages");
  return 0;
}

DatasetSplit load_manifest(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  return read_split_manifest(in);
}

// Pages of each split in manifest order; without a manifest, one "all" split.
std::vector<std::pair<std::string, std::vector<AnnotatedPage>>> split_pages(
    const std::vector<AnnotatedPage>& pages, const std::optional<fs::path>& manifest) {
  std::vector<std::pair<std::string, std::vector<AnnotatedPage>>> out;
  if (!manifest) {
    out.emplace_back("all", pages);
    return out;
  }
  const DatasetSplit split = load_manifest(*manifest);
  std::map<std::string, const AnnotatedPage*> by_id;
  for (const auto& p : pages) by_id[p.page_id] = &p;
  for (Split s : {Split::Train, Split::Dev, Split::Test}) {
    std::vector<AnnotatedPage> chosen;
    for (const auto& e : split.entries(s)) {
      const auto it = by_id.find(e.page_id);
      if (it == by_id.end()) {
        log("warning: page " + e.page_id + " from the manifest has no annotations; skipped");
        continue;
      }
      chosen.push_back(*it->second);
    }
    out.emplace_back(std::string(to_string(s)), std::move(chosen));
  }
  return out;
}

int cmd_export(const fs::path& annotations, const std::optional<fs::path>& manifest, const fs::path& out,
               double scale) {
  const auto pages = load_annotations(annotations);
  fs::create_directories(out);
  for (const auto& [name, chosen] : split_pages(pages, manifest)) {
    try {
      const CocoDataset dataset = to_coco(chosen, scale);
      write_file_atomic(out / (name + ".json"), coco_json(dataset));
      log(name + ": " + std::to_string(dataset.images.size()) + " images, " +
          std::to_string(dataset.annotations.size()) + " annotations");
    } catch (const ValidationError& e) {
      std::string msg = "error: export of " + name + " aborted";
      for (const auto& v : e.violations()) msg += "\n  " + v;
      log(msg);
      return 1;
    }
  }
  return 0;
}

int cmd_evaluate(const fs::path& gold_path, const fs::path& pred_path, const std::optional<fs::path>& out) {
  std::ifstream gold_in(gold_path);
  if (!gold_in) throw ParseError("cannot open " + gold_path.string());
  const auto golds = coco_golds(read_coco(gold_in));
  std::ifstream pred_in(pred_path);
  if (!pred_in) throw ParseError("cannot open " + pred_path.string());
  const auto detections = read_coco_results(pred_in);
  const std::string report = format_map_report(map_50_95(detections, golds));
  if (out) {
    write_file_atomic(*out, report);
  } else {
    std::cout << report;
  }
  return 0;
}

int cmd_stats(const fs::path& annotations, const std::optional<fs::path>& manifest) {
  const auto pages = load_annotations(annotations);
  const auto splits = split_pages(pages, manifest);
  std::ostringstream out;
  out << "split\tpages\tlist_pages\ttable_pages\tfigure_pages\ttitle_pages\tplain_pages";
  for (auto c : kAllCategories) out << '\t' << to_string(c);
  out << '\n';
  for (const auto& [name, chosen] : splits) {
    std::array<long, 5> kind_pages{};
    std::array<long, 5> instances{};
    for (const auto& p : chosen) {
      const PageRecord r = page_record(p);
      for (PageKind k : kKindPriority) {
        if (r.kinds.has(k)) ++kind_pages[static_cast<std::size_t>(k)];
      }
      for (std::size_t c = 0; c < instances.size(); ++c) instances[c] += r.instances[c];
    }
    out << name << '\t' << chosen.size();
    for (auto v : kind_pages) out << '\t' << v;
    for (auto v : instances) out << '\t' << v;
    out << '\n';
  }
  std::cout << out.str();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Layout annotation builder: PDF elements + article XML -> layout annotations"};
  app.require_subcommand(1);

  AnnotateArgs annotate;
  auto* a = app.add_subcommand("annotate", "match XML nodes to PDF elements and write annotations");
  a->add_option("--elements-dir", annotate.elements_dir, "directory of X.elements.json files")->required()->check(CLI::ExistingDirectory);
  a->add_option("--xml-dir", annotate.xml_dir, "directory of X.xml files")->required()->check(CLI::ExistingDirectory);
  a->add_option("--out", annotate.out, "output directory")->required();
  a->add_option("--quality-threshold", annotate.quality, "minimum quality of regular pages")->check(CLI::Range(0.0, 1.0));
  a->add_option("--title-quality-threshold", annotate.title_quality, "minimum quality of title pages")->check(CLI::Range(0.0, 1.0));
  a->add_option("--workers", annotate.workers, "documents processed in parallel")->check(CLI::PositiveNumber);
  a->add_option("--page-lookahead", annotate.page_lookahead, "pages a node may skip ahead in reading order");
  a->add_option("--kinds", annotate.kinds, "JSON tag -> node kind overrides")->check(CLI::ExistingFile);

  fs::path annotations_dir, out_dir, gold, pred;
  std::optional<fs::path> quota_file, manifest, report_out;
  std::uint64_t seed = 0;
  double scale = 1.0;

  auto* p = app.add_subcommand("partition", "split accepted pages into train/dev/test by journal");
  p->add_option("--annotations", annotations_dir, "directory written by annotate")->required();
  p->add_option("--out", out_dir, "output directory for split.json")->required();
  p->add_option("--seed", seed, "sampling seed");
  p->add_option("--quota-file", quota_file, "JSON quota overrides")->check(CLI::ExistingFile);

  auto* e = app.add_subcommand("export-coco", "write one COCO file per split");
  e->add_option("--annotations", annotations_dir, "directory written by annotate")->required();
  e->add_option("--manifest", manifest, "split.json; without it every page goes to all.json")->check(CLI::ExistingFile);
  e->add_option("--out", out_dir, "output directory")->required();
  e->add_option("--scale", scale, "coordinate multiplier (points to pixels)")->check(CLI::PositiveNumber);

  auto* v = app.add_subcommand("evaluate", "MAP @ IoU [0.50:0.95] of COCO results against a COCO file");
  v->add_option("--gold", gold, "COCO dataset file")->required()->check(CLI::ExistingFile);
  v->add_option("--pred", pred, "COCO results file")->required()->check(CLI::ExistingFile);
  v->add_option("--out", report_out, "write the report here instead of standard output");

  auto* s = app.add_subcommand("stats", "pages by kind and instances by category per split");
  s->add_option("--annotations", annotations_dir, "directory written by annotate")->required();
  s->add_option("--manifest", manifest, "split.json")->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try {
    if (a->parsed()) return cmd_annotate(annotate);
    if (p->parsed()) return cmd_partition(annotations_dir, out_dir, seed, quota_file);
    if (e->parsed()) return cmd_export(annotations_dir, manifest, out_dir, scale);
    if (v->parsed()) return cmd_evaluate(gold, pred, report_out);
    if (s->parsed()) return cmd_stats(annotations_dir, manifest);
  } catch (const ValidationError& err) {
    std::string msg = "error: invalid input";
    for (const auto& line : err.violations()) msg += "\n  " + line;
    log(msg);
    return 1;
  } catch (const std::exception& err) {
    log(std::string("error: ") + err.what());
    return 1;
  }
  return 0;
}
