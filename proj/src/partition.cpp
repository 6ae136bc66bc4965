#include "layoutgt/partition.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "json.hpp"
#include "layoutgt/error.hpp"

namespace layoutgt {

namespace {

using nlohmann::json;

constexpr std::array<std::string_view, 5> kKindNames = {"list", "table", "figure", "title", "plain"};

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct Keyed {
  std::uint64_t key;
  std::size_t index;
};

// Indices ordered by sampling key, ties by id.
template <class IdOf>
std::vector<std::size_t> key_order(std::vector<std::size_t> indices, std::uint64_t seed, IdOf id_of) {
  std::vector<Keyed> keyed;
  keyed.reserve(indices.size());
  for (auto i : indices) keyed.push_back({sampling_key(seed, id_of(i)), i});
  std::sort(keyed.begin(), keyed.end(), [&](const Keyed& a, const Keyed& b) {
    if (a.key != b.key) return a.key < b.key;
    return id_of(a.index) < id_of(b.index);
  });
  std::vector<std::size_t> out;
  out.reserve(keyed.size());
  for (const auto& k : keyed) out.push_back(k.index);
  return out;
}

long quota_of(const std::map<PageKind, long>& quotas, PageKind kind, long fallback) {
  const auto it = quotas.find(kind);
  return it == quotas.end() ? fallback : it->second;
}

// Draws from `candidates` (already in key order) quota by quota; a page is
// drawn at most once. A negative quota means unlimited.
std::vector<SplitEntry> draw(std::span<const PageRecord> pages, const std::vector<std::size_t>& candidates,
                             const std::map<PageKind, long>& quotas, long list_default) {
  std::vector<SplitEntry> out;
  std::vector<bool> taken(candidates.size(), false);
  for (PageKind kind : kKindPriority) {
    const long limit = quota_of(quotas, kind, kind == PageKind::List ? list_default : 0);
    long count = 0;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      if (limit >= 0 && count >= limit) break;
      if (taken[c]) continue;
      const PageRecord& page = pages[candidates[c]];
      if (!page.kinds.has(kind)) continue;
      taken[c] = true;
      ++count;
      out.push_back({page.page_id, page.journal_id, page.kinds, kind});
    }
  }
  return out;
}

json kinds_json(const PageKinds& kinds) {
  json arr = json::array();
  for (auto k : kinds.flags()) arr.push_back(std::string(to_string(k)));
  return arr;
}

json entries_json(std::vector<SplitEntry> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const SplitEntry& a, const SplitEntry& b) { return a.page_id < b.page_id; });
  json arr = json::array();
  for (const auto& e : entries) {
    arr.push_back({{"page_id", e.page_id},
                   {"journal_id", e.journal_id},
                   {"kinds", kinds_json(e.kinds)},
                   {"reason", std::string(to_string(e.reason))}});
  }
  return arr;
}

PageKind require_kind(const std::string& name) {
  const auto kind = parse_page_kind(name);
  if (!kind) throw ParseError("unknown page kind '" + name + "'");
  return *kind;
}

std::vector<SplitEntry> entries_from_json(const json& arr) {
  std::vector<SplitEntry> out;
  for (const auto& e : arr) {
    SplitEntry entry;
    entry.page_id = e.at("page_id").get<std::string>();
    entry.journal_id = e.at("journal_id").get<std::string>();
    for (const auto& k : e.at("kinds")) {
      switch (require_kind(k.get<std::string>())) {
        case PageKind::List: entry.kinds.has_list = true; break;
        case PageKind::Table: entry.kinds.has_table = true; break;
        case PageKind::Figure: entry.kinds.has_figure = true; break;
        case PageKind::Title: entry.kinds.title = true; break;
        case PageKind::Plain: break;
      }
    }
    entry.reason = require_kind(e.at("reason").get<std::string>());
    out.push_back(std::move(entry));
  }
  return out;
}

void apply_quota_overrides(std::map<PageKind, long>& target, const json& obj, const char* section) {
  if (!obj.is_object()) throw ParseError(std::string("quota file: '") + section + "' must be an object");
  for (const auto& [name, value] : obj.items()) {
    if (!value.is_number_integer()) {
      throw ParseError(std::string("quota file: ") + section + "." + name + " must be an integer");
    }
    target[require_kind(name)] = value.get<long>();
  }
}

}  // namespace

std::string_view to_string(PageKind kind) noexcept { return kKindNames[static_cast<std::size_t>(kind)]; }

std::optional<PageKind> parse_page_kind(std::string_view name) noexcept {
  for (std::size_t i = 0; i < kKindNames.size(); ++i) {
    if (kKindNames[i] == name) return static_cast<PageKind>(i);
  }
  return std::nullopt;
}

bool PageKinds::has(PageKind kind) const noexcept {
  switch (kind) {
    case PageKind::List: return has_list;
    case PageKind::Table: return has_table;
    case PageKind::Figure: return has_figure;
    case PageKind::Title: return title;
    case PageKind::Plain: return plain();
  }
  return false;
}

std::vector<PageKind> PageKinds::flags() const {
  std::vector<PageKind> out;
  for (PageKind k : kKindPriority) {
    if (has(k)) out.push_back(k);
  }
  return out;
}

PageKinds classify_page(std::span<const LayoutCategory> annotation_categories, bool is_title_page) {
  PageKinds kinds;
  kinds.title = is_title_page;
  for (auto c : annotation_categories) {
    if (c == LayoutCategory::List) kinds.has_list = true;
    if (c == LayoutCategory::Table) kinds.has_table = true;
    if (c == LayoutCategory::Figure) kinds.has_figure = true;
  }
  return kinds;
}

std::vector<JournalStats> journal_stats(std::span<const PageRecord> pages) {
  std::map<std::string, JournalStats> by_journal;
  for (const auto& p : pages) {
    auto& s = by_journal[p.journal_id];
    s.journal_id = p.journal_id;
    ++s.page_count;
    s.figure_count += p.instances[static_cast<std::size_t>(LayoutCategory::Figure)];
    s.table_count += p.instances[static_cast<std::size_t>(LayoutCategory::Table)];
    s.list_count += p.instances[static_cast<std::size_t>(LayoutCategory::List)];
  }
  std::vector<JournalStats> out;
  out.reserve(by_journal.size());
  for (auto& [id, s] : by_journal) out.push_back(std::move(s));
  return out;
}

QuotaConfig QuotaConfig::from_json_text(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("quota file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("quota file: top level must be an object");
  QuotaConfig q;
  if (const auto it = doc.find("eligibility"); it != doc.end()) {
    if (!it->is_object()) throw ParseError("quota file: 'eligibility' must be an object");
    const std::pair<const char*, long*> fields[] = {{"max_pages", &q.eligibility.max_pages},
                                                    {"min_figures", &q.eligibility.min_figures},
                                                    {"min_tables", &q.eligibility.min_tables},
                                                    {"min_lists", &q.eligibility.min_lists}};
    for (const auto& [key, value] : it->items()) {
      auto f = std::find_if(std::begin(fields), std::end(fields),
                            [&](const auto& field) { return key == field.first; });
      if (f == std::end(fields)) throw ParseError("quota file: unknown eligibility field '" + key + "'");
      if (!value.is_number_integer()) throw ParseError("quota file: eligibility." + key + " must be an integer");
      *f->second = value.get<long>();
    }
  }
  if (const auto it = doc.find("pool"); it != doc.end()) apply_quota_overrides(q.pool, *it, "pool");
  if (const auto it = doc.find("train_per_journal"); it != doc.end()) {
    apply_quota_overrides(q.train_per_journal, *it, "train_per_journal");
  }
  for (const auto& [key, value] : doc.items()) {
    if (key != "eligibility" && key != "pool" && key != "train_per_journal") {
      throw ParseError("quota file: unknown section '" + key + "'");
    }
  }
  return q;
}

QuotaConfig QuotaConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return from_json_text(buffer.str());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::set<std::string> eligible_journals(std::span<const JournalStats> stats, const EligibilityCriteria& criteria) {
  std::set<std::string> out;
  for (const auto& s : stats) {
    if (s.page_count <= criteria.max_pages && s.figure_count >= criteria.min_figures &&
        s.table_count >= criteria.min_tables && s.list_count >= criteria.min_lists) {
      out.insert(s.journal_id);
    }
  }
  return out;
}

std::string_view to_string(Split split) noexcept {
  switch (split) {
    case Split::Train: return "train";
    case Split::Dev: return "dev";
    case Split::Test: return "test";
  }
  return "train";
}

const std::vector<SplitEntry>& DatasetSplit::entries(Split split) const {
  switch (split) {
    case Split::Dev: return dev;
    case Split::Test: return test;
    default: return train;
  }
}

std::uint64_t sampling_key(std::uint64_t seed, std::string_view id) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](unsigned char byte) {
    h ^= byte;
    h *= 0x100000001b3ULL;
  };
  for (int i = 0; i < 8; ++i) mix(static_cast<unsigned char>(seed >> (8 * i)));
  for (char c : id) mix(static_cast<unsigned char>(c));
  return splitmix64(h);
}

DatasetSplit make_split(std::span<const PageRecord> pages, std::uint64_t seed, const QuotaConfig& quotas) {
  DatasetSplit split;
  split.seed = seed;

  const auto stats = journal_stats(pages);
  const auto eligible = eligible_journals(stats, quotas.eligibility);
  if (eligible.empty()) split.warnings.push_back("no eligible journals: dev and test are empty");

  std::vector<std::string> journals(eligible.begin(), eligible.end());
  std::vector<std::size_t> journal_idx(journals.size());
  for (std::size_t i = 0; i < journals.size(); ++i) journal_idx[i] = i;
  const auto ordered = key_order(journal_idx, seed, [&](std::size_t i) -> const std::string& { return journals[i]; });
  const std::size_t dev_count = (ordered.size() + 1) / 2;
  std::unordered_set<std::string> dev_set;
  for (std::size_t k = 0; k < ordered.size(); ++k) {
    const std::string& j = journals[ordered[k]];
    if (k < dev_count) {
      split.dev_journals.push_back(j);
      dev_set.insert(j);
    } else {
      split.test_journals.push_back(j);
    }
  }
  std::sort(split.dev_journals.begin(), split.dev_journals.end());
  std::sort(split.test_journals.begin(), split.test_journals.end());

  std::vector<std::size_t> dev_pages, test_pages;
  std::unordered_map<std::string, std::vector<std::size_t>> train_pages;
  for (std::size_t i = 0; i < pages.size(); ++i) {
    const auto& j = pages[i].journal_id;
    if (!eligible.contains(j)) {
      train_pages[j].push_back(i);
    } else if (dev_set.contains(j)) {
      dev_pages.push_back(i);
    } else {
      test_pages.push_back(i);
    }
  }
  auto page_id = [&](std::size_t i) -> const std::string& { return pages[i].page_id; };

  split.dev = draw(pages, key_order(dev_pages, seed, page_id), quotas.pool, -1);
  split.test = draw(pages, key_order(test_pages, seed, page_id), quotas.pool, -1);

  std::vector<std::string> train_journals;
  for (const auto& [j, idx] : train_pages) train_journals.push_back(j);
  std::sort(train_journals.begin(), train_journals.end());
  for (const auto& j : train_journals) {
    auto drawn = draw(pages, key_order(train_pages[j], seed, page_id), quotas.train_per_journal, 0);
    split.train.insert(split.train.end(), drawn.begin(), drawn.end());
  }

  auto by_id = [](const SplitEntry& a, const SplitEntry& b) { return a.page_id < b.page_id; };
  std::sort(split.train.begin(), split.train.end(), by_id);
  std::sort(split.dev.begin(), split.dev.end(), by_id);
  std::sort(split.test.begin(), split.test.end(), by_id);
  return split;
}

std::string split_manifest_json(const DatasetSplit& split) {
  json doc;
  doc["seed"] = split.seed;
  doc["curation"] = "machine-only";
  doc["journals"] = {{"dev", split.dev_journals}, {"test", split.test_journals}};
  doc["splits"] = {{"train", entries_json(split.train)},
                   {"dev", entries_json(split.dev)},
                   {"test", entries_json(split.test)}};
  if (!split.warnings.empty()) doc["warnings"] = split.warnings;
  return doc.dump(1) + "\n";
}

DatasetSplit read_split_manifest(std::istream& in) {
  DatasetSplit split;
  try {
    const json doc = json::parse(in);
    split.seed = doc.at("seed").get<std::uint64_t>();
    split.dev_journals = doc.at("journals").at("dev").get<std::vector<std::string>>();
    split.test_journals = doc.at("journals").at("test").get<std::vector<std::string>>();
    const auto& splits = doc.at("splits");
    split.train = entries_from_json(splits.at("train"));
    split.dev = entries_from_json(splits.at("dev"));
    split.test = entries_from_json(splits.at("test"));
    if (const auto it = doc.find("warnings"); it != doc.end()) {
      split.warnings = it->get<std::vector<std::string>>();
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("split manifest: ") + e.what());
  }
  return split;
}

}  // namespace layoutgt
