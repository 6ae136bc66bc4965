#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "layoutgt/categories.hpp"

namespace layoutgt {

enum class PageKind { List, Table, Figure, Title, Plain };

// Draw priority: scarcer kinds first.
inline constexpr std::array<PageKind, 5> kKindPriority = {PageKind::List, PageKind::Table,
                                                          PageKind::Figure, PageKind::Title,
                                                          PageKind::Plain};

std::string_view to_string(PageKind kind) noexcept;
std::optional<PageKind> parse_page_kind(std::string_view name) noexcept;

struct PageKinds {
  bool title = false;
  bool has_list = false;
  bool has_table = false;
  bool has_figure = false;

  bool plain() const noexcept { return !title && !has_list && !has_table && !has_figure; }
  bool has(PageKind kind) const noexcept;
  std::vector<PageKind> flags() const;

  friend bool operator==(const PageKinds&, const PageKinds&) = default;
};

PageKinds classify_page(std::span<const LayoutCategory> annotation_categories, bool is_title_page);

// One accepted page as the partitioner sees it.
struct PageRecord {
  std::string page_id;
  std::string journal_id;
  PageKinds kinds;
  std::array<int, 5> instances{};  // per LayoutCategory
};

struct JournalStats {
  std::string journal_id;
  long page_count = 0;
  long figure_count = 0;
  long table_count = 0;
  long list_count = 0;
};

std::vector<JournalStats> journal_stats(std::span<const PageRecord> pages);

struct EligibilityCriteria {
  long max_pages = 2000;
  long min_figures = 320;
  long min_tables = 140;
  long min_lists = 20;
};

// Per-kind draw quotas. Lists have no pool quota: every list page of a pool
// journal is taken.
struct QuotaConfig {
  EligibilityCriteria eligibility;
  std::map<PageKind, long> pool = {{PageKind::Title, 2000},
                                   {PageKind::Table, 3000},
                                   {PageKind::Figure, 3000},
                                   {PageKind::Plain, 2000}};
  std::map<PageKind, long> train_per_journal = {{PageKind::List, 200},
                                                {PageKind::Table, 50},
                                                {PageKind::Figure, 50},
                                                {PageKind::Title, 50},
                                                {PageKind::Plain, 25}};

  // Partial JSON overrides: {"eligibility": {...}, "pool": {...}, "train_per_journal": {...}}.
  static QuotaConfig load(const std::filesystem::path& path);
  static QuotaConfig from_json_text(std::string_view text);
};

// Inclusive bounds on every criterion.
std::set<std::string> eligible_journals(std::span<const JournalStats> stats,
                                        const EligibilityCriteria& criteria = {});

enum class Split { Train, Dev, Test };
std::string_view to_string(Split split) noexcept;

struct SplitEntry {
  std::string page_id;
  std::string journal_id;
  PageKinds kinds;
  PageKind reason = PageKind::Plain;  // quota the page was drawn under
};

struct DatasetSplit {
  std::uint64_t seed = 0;
  std::vector<SplitEntry> train;
  std::vector<SplitEntry> dev;
  std::vector<SplitEntry> test;
  std::vector<std::string> dev_journals;
  std::vector<std::string> test_journals;
  std::vector<std::string> warnings;

  const std::vector<SplitEntry>& entries(Split split) const;
};

// Journal-level split. Eligible journals are halved by a seeded key (odd
// count: the extra one goes to dev); each pool takes all its list pages, then
// the pool quotas; the other journals feed training under per-journal caps.
// Sampling keys hash (seed, id), so input order does not matter.
DatasetSplit make_split(std::span<const PageRecord> pages, std::uint64_t seed,
                        const QuotaConfig& quotas = {});

// Stable 64-bit key of (seed, id).
std::uint64_t sampling_key(std::uint64_t seed, std::string_view id) noexcept;

// {"seed": n, "curation": "machine-only", "journals": {...},
//  "splits": {"train": [{page_id, journal_id, kinds, reason}], ...}}
std::string split_manifest_json(const DatasetSplit& split);
DatasetSplit read_split_manifest(std::istream& in);

}  // namespace layoutgt
