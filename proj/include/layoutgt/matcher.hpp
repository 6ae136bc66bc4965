#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <span>
#include <utility>
#include <vector>

#include "layoutgt/categories.hpp"
#include "layoutgt/elements.hpp"
#include "layoutgt/geometry.hpp"
#include "layoutgt/xml.hpp"

namespace layoutgt {

// Stable identity of a textline: page, textbox and line index in the input.
struct LineId {
  std::size_t page = 0;
  std::size_t textbox = 0;
  std::size_t line = 0;

  friend auto operator<=>(const LineId&, const LineId&) = default;
};

struct NodeRef {
  int id = -1;
  NodeRole role = NodeRole::Paragraph;
  std::string path;
};

// Textlines consumed for one XML node on one page.
struct MatchedRegion {
  NodeRef node;
  LayoutCategory category = LayoutCategory::Text;
  std::size_t page = 0;
  std::vector<Textline> lines;
  std::vector<LineId> line_ids;
  std::vector<Textbox> boxes;  // matched textbox pieces, after splitting
  bool complete = false;
  int distance = 0;  // summed per-line edit distance
  // Characters of the first line owned by an earlier region (inline title).
  std::size_t first_line_offset = 0;
  // Characters of the last line's normalized text covered by this node.
  std::size_t last_line_end = 0;
  std::size_t last_line_length = 0;
  std::vector<NodeRef> merged;  // inline titles/labels folded into this region
};

// Position of the reading-order pass.
struct MatchCursor {
  std::size_t node_index = 0;   // next sorted node
  std::size_t node_offset = 0;  // characters of that node already covered
  std::size_t page = 0;
  std::size_t textbox_index = 0;  // into the page's (split) working textboxes
  std::size_t line_index = 0;
  std::size_t line_offset = 0;  // characters of the line already consumed
  std::set<int> completed;      // search-pass nodes already matched

  // Position in input order; never decreases over a reading-order pass.
  std::optional<LineId> line;
};

struct MatcherConfig {
  // Pages past the node's first page the reading-order pass may skip into.
  std::size_t page_lookahead = 1;
};

// Splits `box` so the first part holds lines [0, at_line). Both parts get the
// union bbox of their lines. Throws std::out_of_range unless
// 0 < at_line < box.lines.size().
std::pair<Textbox, Textbox> split_textbox(const Textbox& box, std::size_t at_line);

// True iff the node's match ends before the last textline's text does.
bool detect_inline_title(const MatchedRegion& region);

// One caption (label and caption text) with the body it introduces.
struct CaptionMatch {
  NodeRef body;
  LayoutCategory body_category = LayoutCategory::Figure;
  BBox caption_box;
};

struct PageMatch {
  std::vector<MatchedRegion> regions;  // text/title/list regions, complete or not
  std::vector<CaptionMatch> captions;
  std::vector<BBox> unconsumed_text;  // textbox pieces no node consumed
};

// Alignment state machine over a whole document. Passes, per the matching
// procedure: reading order over the sorted group (with skip-ahead and
// textbox splitting), then per page search passes for unsorted nodes, lists,
// table captions and footnotes, and figure captions.
class DocumentMatcher {
 public:
  DocumentMatcher(std::span<const PageElements> pages, MatcherConfig config = {});
  ~DocumentMatcher();
  DocumentMatcher(DocumentMatcher&&) noexcept;
  DocumentMatcher& operator=(DocumentMatcher&&) noexcept;

  // Reading-order pass starting at `cursor`; returns the regions in node
  // order and advances the cursor. With `carry_at_end`, a node still matching
  // when the pages run out keeps its region and stays in the cursor instead
  // of being rolled back.
  std::vector<MatchedRegion> match_sorted(std::span<const GroupNode> nodes, MatchCursor& cursor,
                                          bool carry_at_end = false);

  // Search pass on one page: every node not yet in `completed` is tried at
  // every unconsumed line; the complete candidate with the lowest distance
  // wins, ties to extractor order.
  std::vector<MatchedRegion> match_search(std::span<const GroupNode> nodes, std::size_t page,
                                          std::set<int>& completed);

  std::vector<CaptionMatch> match_figures(std::span<const FigureEntry> figures, std::size_t page,
                                          std::set<int>& completed,
                                          std::vector<MatchedRegion>& regions);
  std::vector<CaptionMatch> match_tables(std::span<const TableEntry> tables, std::size_t page,
                                         std::set<int>& completed,
                                         std::vector<MatchedRegion>& regions);

  std::vector<BBox> unconsumed_text(std::size_t page) const;

  // Every pass over every page.
  std::vector<PageMatch> run(const NodeGroups& groups);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Folds inline titles/labels into the region that continues on their last
// line, relabelled text; inline titles with no continuation become text.
void merge_inline_titles(std::vector<MatchedRegion>& regions);

std::vector<MatchedRegion> match_sorted(std::span<const GroupNode> nodes,
                                        std::span<const PageElements> pages,
                                        MatcherConfig config = {});
std::vector<MatchedRegion> match_unsorted(std::span<const GroupNode> nodes,
                                          std::span<const PageElements> pages);

// Runs every pass for one page, continuing the reading order from `carry`.
std::pair<PageMatch, MatchCursor> annotate_page(const PageElements& page, const NodeGroups& groups,
                                                MatchCursor carry);

// Annotations for a complete region: one per top-to-bottom run of its lines
// (a region continuing in the next column yields two). Incomplete regions
// yield nothing.
std::vector<LayoutAnnotation> region_to_annotation(const MatchedRegion& region,
                                                   const std::string& page_id);

}  // namespace layoutgt
