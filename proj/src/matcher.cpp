#include "layoutgt/matcher.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "layoutgt/fuzzymatch.hpp"
#include "layoutgt/textnorm.hpp"

namespace layoutgt {

namespace {

bool is_space(char32_t c) { return is_unicode_space(c); }

std::size_t skip_spaces(std::u32string_view s, std::size_t at) {
  while (at < s.size() && is_space(s[at])) ++at;
  return at;
}

std::size_t non_space_count(std::u32string_view s) {
  return static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [](char32_t c) { return !is_space(c); }));
}

// Outcome of aligning one line remainder against the rest of a node.
struct LineStep {
  bool accepted = false;
  bool complete = false;     // node fully covered after this line
  bool whole_line = true;    // false: node ends at `line_end`, rest of line is shared
  std::size_t line_end = 0;  // offset into the remainder where the node ends
  std::size_t node_pos = 0;  // node offset after this line
  int distance = 0;
};

// Whole line aligned against the start of the node remainder, never
// completing the node; `leftover` receives the non-space characters after it.
LineStep inside_step(std::u32string_view node, std::size_t pos, std::u32string_view rest, std::size_t* leftover) {
  LineStep step;
  pos = skip_spaces(node, pos);
  const std::u32string_view remaining = node.substr(pos);
  if (remaining.empty() || rest.empty()) return step;
  const int line_budget = max_distance(static_cast<long long>(rest.size()));
  const std::size_t window = std::min(remaining.size(), rest.size() + static_cast<std::size_t>(line_budget));
  const auto a = align_prefix(rest, remaining.substr(0, window), line_budget);
  if (!a.accepted(line_budget)) return step;
  step.accepted = true;
  step.line_end = rest.size();
  step.node_pos = pos + a.best_end;
  step.distance = a.best_distance;
  if (leftover != nullptr) *leftover = non_space_count(remaining.substr(a.best_end));
  return step;
}

LineStep match_line(std::u32string_view node, std::size_t pos, std::u32string_view rest) {
  LineStep step;
  pos = skip_spaces(node, pos);
  const std::u32string_view remaining = node.substr(pos);
  if (remaining.empty() || rest.empty()) return step;

  const int line_budget = max_distance(static_cast<long long>(rest.size()));
  const int node_budget = max_distance(static_cast<long long>(remaining.size()));

  // The node ends within this line.
  if (remaining.size() <= rest.size() + static_cast<std::size_t>(node_budget)) {
    const auto a = align_prefix(remaining, rest, std::max(node_budget, line_budget));
    if (a.full_distance <= line_budget) {
      step = {true, true, true, rest.size(), node.size(), a.full_distance};
      return step;
    }
    if (a.best_distance <= node_budget) {
      step = {true, true, false, a.best_end, node.size(), a.best_distance};
      if (non_space_count(rest.substr(a.best_end)) == 0) {
        step.whole_line = true;
        step.line_end = rest.size();
      }
      return step;
    }
  }

  // The line lies inside the node.
  std::size_t leftover = 0;
  step = inside_step(node, pos, rest, &leftover);
  if (step.accepted && leftover <= static_cast<std::size_t>(line_budget - step.distance)) {
    step.complete = true;
    step.node_pos = node.size();
    step.distance += static_cast<int>(leftover);
  }
  return step;
}

struct LineState {
  std::u32string norm;
  std::size_t consumed = 0;  // leading characters owned by earlier nodes
  bool done = false;
};

struct Pos {
  std::size_t page = 0;
  std::size_t box = 0;
  std::size_t line = 0;
  std::size_t offset = 0;
};

// Part of one line claimed by a node.
struct Take {
  std::size_t page = 0;
  std::size_t box = 0;
  std::size_t line = 0;
  std::size_t begin = 0;
  std::size_t end = 0;
  bool whole_line = true;
};

enum class WalkEnd { Complete, Failed, Exhausted };

struct Walk {
  WalkEnd end = WalkEnd::Failed;
  std::vector<Take> takes;
  std::size_t node_pos = 0;
  int distance = 0;
  Pos next;
};

}  // namespace

std::pair<Textbox, Textbox> split_textbox(const Textbox& box, std::size_t at_line) {
  if (at_line == 0 || at_line >= box.lines.size()) {
    throw std::out_of_range("split_textbox: line " + std::to_string(at_line) +
                            " is not inside a textbox of " + std::to_string(box.lines.size()) +
                            " lines");
  }
  std::vector<Textline> first(box.lines.begin(), box.lines.begin() + static_cast<std::ptrdiff_t>(at_line));
  std::vector<Textline> second(box.lines.begin() + static_cast<std::ptrdiff_t>(at_line), box.lines.end());
  return {make_textbox(std::move(first)), make_textbox(std::move(second))};
}

bool detect_inline_title(const MatchedRegion& region) {
  return !region.lines.empty() && region.last_line_end < region.last_line_length;
}

struct DocumentMatcher::Impl {
  std::vector<PageElements> pages;
  MatcherConfig config;
  std::vector<std::vector<std::vector<LineState>>> state;  // page, box, line

  Impl(std::span<const PageElements> input, MatcherConfig cfg)
      : pages(input.begin(), input.end()), config(cfg) {
    state.resize(pages.size());
    for (std::size_t p = 0; p < pages.size(); ++p) {
      auto& boxes = state[p];
      boxes.resize(pages[p].textboxes.size());
      for (std::size_t b = 0; b < boxes.size(); ++b) {
        for (const auto& line : pages[p].textboxes[b].lines) {
          LineState ls;
          ls.norm = normalize_kd(line.text).chars();
          ls.done = ls.norm.empty();
          boxes[b].push_back(std::move(ls));
        }
      }
    }
  }

  // A short node tail can pass for a dropped suffix of this line. When the
  // next line of the same textbox completes the node from where the line
  // alone leaves off, the node continues there instead.
  LineStep prefer_continuation(std::u32string_view node, std::size_t pos, const Pos& at, const LineStep& step) const {
    const auto& lines = state[at.page][at.box];
    if (at.line + 1 >= lines.size()) return step;
    const auto& next = lines[at.line + 1];
    const std::size_t off = skip_spaces(next.norm, next.consumed);
    if (next.done || off >= next.norm.size()) return step;
    std::size_t leftover = 0;
    const LineStep inside = inside_step(node, pos, std::u32string_view(lines[at.line].norm).substr(at.offset), &leftover);
    if (!inside.accepted || leftover == 0) return step;
    const LineStep follow = match_line(node, inside.node_pos, std::u32string_view(next.norm).substr(off));
    return follow.accepted && follow.complete ? inside : step;
  }

  std::size_t cap_for(std::size_t page) const {
    return std::min(pages.size() - 1, page + config.page_lookahead);
  }

  // First line at or after `p` that still has text, in input order. Empty at
  // the end of the document; `past_cap` tells whether the cap stopped it.
  std::optional<Pos> available_from(Pos p, std::size_t cap, bool* past_cap = nullptr) const {
    if (past_cap != nullptr) *past_cap = false;
    while (p.page < state.size()) {
      if (p.page > cap) {
        if (past_cap != nullptr) *past_cap = true;
        return std::nullopt;
      }
      const auto& boxes = state[p.page];
      if (p.box >= boxes.size()) {
        p = {p.page + 1, 0, 0, 0};
      } else if (p.line >= boxes[p.box].size()) {
        p = {p.page, p.box + 1, 0, 0};
      } else {
        const auto& ls = boxes[p.box][p.line];
        const std::size_t off = skip_spaces(ls.norm, std::max(p.offset, ls.consumed));
        if (ls.done || off >= ls.norm.size()) {
          p = {p.page, p.box, p.line + 1, 0};
        } else {
          p.offset = off;
          return p;
        }
      }
    }
    return std::nullopt;
  }

  Walk walk(std::u32string_view node, std::size_t pos, Pos start, bool allow_skip, std::size_t cap) const {
    Walk w;
    w.node_pos = pos;
    bool past_cap = false;
    std::optional<Pos> at = available_from(start, cap, &past_cap);
    while (at) {
      const auto& ls = state[at->page][at->box][at->line];
      const std::u32string_view rest = std::u32string_view(ls.norm).substr(at->offset);
      LineStep step = match_line(node, w.node_pos, rest);
      if (step.accepted && step.complete && step.whole_line) step = prefer_continuation(node, w.node_pos, *at, step);
      if (step.accepted) {
        const std::size_t end = at->offset + step.line_end;
        w.takes.push_back({at->page, at->box, at->line, at->offset, step.whole_line ? ls.norm.size() : end,
                           step.whole_line});
        w.node_pos = step.node_pos;
        w.distance += step.distance;
        if (step.complete) {
          w.end = WalkEnd::Complete;
          w.next = step.whole_line ? Pos{at->page, at->box, at->line + 1, 0}
                                   : Pos{at->page, at->box, at->line, end};
          return w;
        }
        at = available_from({at->page, at->box, at->line + 1, 0}, cap, &past_cap);
      } else if (allow_skip) {
        at = available_from({at->page, at->box + 1, 0, 0}, cap, &past_cap);
      } else {
        w.end = WalkEnd::Failed;
        return w;
      }
    }
    w.end = past_cap ? WalkEnd::Failed : WalkEnd::Exhausted;
    return w;
  }

  // Claims the lines of `takes` and builds one region per page.
  std::vector<MatchedRegion> commit(const std::vector<Take>& takes, const GroupNode& node,
                                    LayoutCategory category, bool complete, int distance) {
    std::vector<MatchedRegion> out;
    for (const auto& t : takes) {
      auto& ls = state[t.page][t.box][t.line];
      ls.consumed = std::max(ls.consumed, t.end);
      if (t.whole_line || skip_spaces(ls.norm, ls.consumed) >= ls.norm.size()) ls.done = true;

      if (out.empty() || out.back().page != t.page) {
        MatchedRegion r;
        r.node = {node.id, node.role, node.path};
        r.category = category;
        r.page = t.page;
        r.complete = complete;
        r.first_line_offset = t.begin;
        out.push_back(std::move(r));
      }
      MatchedRegion& r = out.back();
      r.lines.push_back(pages[t.page].textboxes[t.box].lines[t.line]);
      r.line_ids.push_back({t.page, t.box, t.line});
      r.last_line_end = t.end;
      r.last_line_length = ls.norm.size();
    }
    for (auto& r : out) {
      r.distance = out.size() == 1 ? distance : 0;
      std::vector<Textline> piece;
      for (std::size_t i = 0; i < r.lines.size(); ++i) {
        if (i > 0 && (r.line_ids[i].textbox != r.line_ids[i - 1].textbox ||
                      r.line_ids[i].line != r.line_ids[i - 1].line + 1)) {
          r.boxes.push_back(make_textbox(std::move(piece)));
          piece.clear();
        }
        piece.push_back(r.lines[i]);
      }
      if (!piece.empty()) r.boxes.push_back(make_textbox(std::move(piece)));
    }
    if (out.size() > 1) out.front().distance = distance;
    return out;
  }

  static MatchedRegion missing(const GroupNode& node, LayoutCategory category, std::size_t page) {
    MatchedRegion r;
    r.node = {node.id, node.role, node.path};
    r.category = category;
    r.page = page;
    return r;
  }

  std::optional<Walk> search(const GroupNode& node, std::size_t page) const {
    std::optional<Walk> best;
    if (page >= state.size()) return best;
    const std::size_t cap = cap_for(page);
    for (std::size_t b = 0; b < state[page].size(); ++b) {
      for (std::size_t l = 0; l < state[page][b].size(); ++l) {
        const auto start = available_from({page, b, l, 0}, page);
        if (!start || start->box != b || start->line != l) continue;
        Walk w = walk(node.text.view(), 0, *start, false, cap);
        if (w.end != WalkEnd::Complete) continue;
        if (!best || w.distance < best->distance) best = std::move(w);
      }
    }
    return best;
  }

  // Search match for one node; appends its regions and records completion.
  bool search_and_commit(const GroupNode& node, LayoutCategory category, std::size_t page,
                         std::set<int>& completed, std::vector<MatchedRegion>& out) {
    if (completed.contains(node.id)) return false;
    auto w = search(node, page);
    if (!w) return false;
    auto regions = commit(w->takes, node, category, true, w->distance);
    out.insert(out.end(), std::make_move_iterator(regions.begin()), std::make_move_iterator(regions.end()));
    completed.insert(node.id);
    return true;
  }

  // Label, then its caption read on from where the label ends.
  std::optional<BBox> match_caption(const std::optional<GroupNode>& label,
                                    const std::optional<GroupNode>& caption,
                                    LayoutCategory label_category, std::size_t page,
                                    std::set<int>& completed, std::vector<MatchedRegion>& out) {
    const std::size_t first_new = out.size();
    bool caption_done = caption && completed.contains(caption->id);
    if (label && !completed.contains(label->id)) {
      if (auto w = search(*label, page)) {
        auto regions = commit(w->takes, *label, label_category, true, w->distance);
        out.insert(out.end(), regions.begin(), regions.end());
        completed.insert(label->id);
        if (caption && !caption_done) {
          Walk c = walk(caption->text.view(), 0, w->next, false, cap_for(page));
          if (c.end == WalkEnd::Complete) {
            auto cr = commit(c.takes, *caption, LayoutCategory::Text, true, c.distance);
            out.insert(out.end(), cr.begin(), cr.end());
            completed.insert(caption->id);
            caption_done = true;
          }
        }
      }
    }
    if (caption && !caption_done) search_and_commit(*caption, LayoutCategory::Text, page, completed, out);

    std::vector<BBox> boxes;
    for (std::size_t i = first_new; i < out.size(); ++i) {
      if (out[i].page != page) continue;
      for (const auto& l : out[i].lines) boxes.push_back(l.bbox);
    }
    if (boxes.empty()) return std::nullopt;
    return union_bbox(boxes);
  }
};

DocumentMatcher::DocumentMatcher(std::span<const PageElements> pages, MatcherConfig config)
    : impl_(std::make_unique<Impl>(pages, config)) {}
DocumentMatcher::~DocumentMatcher() = default;
DocumentMatcher::DocumentMatcher(DocumentMatcher&&) noexcept = default;
DocumentMatcher& DocumentMatcher::operator=(DocumentMatcher&&) noexcept = default;

std::vector<MatchedRegion> DocumentMatcher::match_sorted(std::span<const GroupNode> nodes,
                                                         MatchCursor& cursor, bool carry_at_end) {
  Impl& m = *impl_;
  std::vector<MatchedRegion> out;
  Pos at{cursor.page, cursor.textbox_index, cursor.line_index, cursor.line_offset};
  const std::size_t last_page = m.pages.empty() ? 0 : m.pages.size() - 1;

  for (; cursor.node_index < nodes.size(); ++cursor.node_index) {
    const GroupNode& node = nodes[cursor.node_index];
    const LayoutCategory category = category_of(node.role);
    const auto start = m.available_from(at, last_page);
    if (!start) {
      if (carry_at_end) break;
      out.push_back(Impl::missing(node, category, std::min(at.page, last_page)));
      cursor.node_offset = 0;
      continue;
    }
    Walk w = m.walk(node.text.view(), cursor.node_offset, *start, true, m.cap_for(start->page));
    if (w.end == WalkEnd::Complete) {
      auto regions = m.commit(w.takes, node, category, true, w.distance);
      out.insert(out.end(), regions.begin(), regions.end());
      at = w.next;
      cursor.node_offset = 0;
    } else if (w.end == WalkEnd::Exhausted && carry_at_end) {
      auto regions = m.commit(w.takes, node, category, false, w.distance);
      out.insert(out.end(), regions.begin(), regions.end());
      cursor.node_offset = w.node_pos;
      if (!w.takes.empty()) {
        const Take& t = w.takes.back();
        at = t.whole_line ? Pos{t.page, t.box, t.line + 1, 0} : Pos{t.page, t.box, t.line, t.end};
      }
      break;
    } else {
      out.push_back(Impl::missing(node, category, start->page));
      cursor.node_offset = 0;
    }
  }

  cursor.page = at.page;
  cursor.textbox_index = at.box;
  cursor.line_index = at.line;
  cursor.line_offset = at.offset;
  if (const auto p = m.available_from(at, last_page)) {
    cursor.line = LineId{p->page, p->box, p->line};
  }
  return out;
}

std::vector<MatchedRegion> DocumentMatcher::match_search(std::span<const GroupNode> nodes, std::size_t page,
                                                         std::set<int>& completed) {
  std::vector<MatchedRegion> out;
  for (const auto& node : nodes) {
    impl_->search_and_commit(node, category_of(node.role), page, completed, out);
  }
  return out;
}

std::vector<CaptionMatch> DocumentMatcher::match_figures(std::span<const FigureEntry> figures,
                                                         std::size_t page, std::set<int>& completed,
                                                         std::vector<MatchedRegion>& regions) {
  std::vector<CaptionMatch> out;
  for (const auto& fig : figures) {
    if (completed.contains(fig.body.id)) continue;
    const auto box = impl_->match_caption(fig.label, fig.caption, LayoutCategory::Title, page, completed, regions);
    if (!box) continue;
    out.push_back({{fig.body.id, fig.body.role, fig.body.path}, LayoutCategory::Figure, *box});
    completed.insert(fig.body.id);
  }
  return out;
}

std::vector<CaptionMatch> DocumentMatcher::match_tables(std::span<const TableEntry> tables, std::size_t page,
                                                        std::set<int>& completed,
                                                        std::vector<MatchedRegion>& regions) {
  std::vector<CaptionMatch> out;
  for (const auto& table : tables) {
    if (completed.contains(table.body.id)) continue;
    const auto box = impl_->match_caption(table.label, table.caption, LayoutCategory::Title, page, completed, regions);
    for (const auto& fn : table.footnotes) {
      impl_->search_and_commit(fn, LayoutCategory::Text, page, completed, regions);
    }
    if (!box) continue;
    out.push_back({{table.body.id, table.body.role, table.body.path}, LayoutCategory::Table, *box});
    completed.insert(table.body.id);
  }
  return out;
}

std::vector<BBox> DocumentMatcher::unconsumed_text(std::size_t page) const {
  std::vector<BBox> out;
  if (page >= impl_->state.size()) return out;
  const auto& boxes = impl_->state[page];
  for (std::size_t b = 0; b < boxes.size(); ++b) {
    std::optional<BBox> piece;
    for (std::size_t l = 0; l < boxes[b].size(); ++l) {
      const auto& ls = boxes[b][l];
      const bool free = !ls.done && ls.consumed == 0 && !ls.norm.empty();
      if (free) {
        const BBox& lb = impl_->pages[page].textboxes[b].lines[l].bbox;
        piece = piece ? union_bbox(*piece, lb) : lb;
      } else if (piece) {
        out.push_back(*piece);
        piece.reset();
      }
    }
    if (piece) out.push_back(*piece);
  }
  return out;
}

std::vector<PageMatch> DocumentMatcher::run(const NodeGroups& groups) {
  const std::size_t n = impl_->pages.size();
  std::vector<PageMatch> out(n);
  if (n == 0) return out;

  MatchCursor cursor;
  std::vector<MatchedRegion> all = match_sorted(groups.sorted, cursor);
  std::set<int>& completed = cursor.completed;
  for (std::size_t p = 0; p < n; ++p) {
    auto unsorted = match_search(groups.unsorted, p, completed);
    all.insert(all.end(), unsorted.begin(), unsorted.end());
    auto lists = match_search(groups.lists, p, completed);
    all.insert(all.end(), lists.begin(), lists.end());
    auto tables = match_tables(groups.tables, p, completed, all);
    auto figures = match_figures(groups.figures, p, completed, all);
    out[p].captions.insert(out[p].captions.end(), tables.begin(), tables.end());
    out[p].captions.insert(out[p].captions.end(), figures.begin(), figures.end());
  }
  for (auto& r : all) {
    const std::size_t page = std::min(r.page, n - 1);
    out[page].regions.push_back(std::move(r));
  }
  for (std::size_t p = 0; p < n; ++p) {
    merge_inline_titles(out[p].regions);
    out[p].unconsumed_text = unconsumed_text(p);
  }
  return out;
}

void merge_inline_titles(std::vector<MatchedRegion>& regions) {
  for (std::size_t i = 0; i < regions.size();) {
    MatchedRegion& title = regions[i];
    if (title.category != LayoutCategory::Title || !title.complete || !is_inline_candidate(title.node.role) ||
        !detect_inline_title(title)) {
      ++i;
      continue;
    }
    const LineId shared = title.line_ids.back();
    auto next = std::find_if(regions.begin(), regions.end(), [&](const MatchedRegion& r) {
      return &r != &title && !r.line_ids.empty() && r.line_ids.front() == shared &&
             r.first_line_offset >= title.last_line_end;
    });
    if (next == regions.end()) {
      title.category = LayoutCategory::Text;
      ++i;
      continue;
    }
    MatchedRegion merged = std::move(*next);
    std::vector<Textline> lines = title.lines;
    std::vector<LineId> ids = title.line_ids;
    lines.insert(lines.end(), merged.lines.begin() + 1, merged.lines.end());
    ids.insert(ids.end(), merged.line_ids.begin() + 1, merged.line_ids.end());
    std::vector<Textbox> boxes = title.boxes;
    if (!merged.boxes.empty()) {
      // The shared line closes the title's last piece and opens the next one.
      std::vector<Textline> tail = boxes.back().lines;
      tail.insert(tail.end(), merged.boxes.front().lines.begin() + 1, merged.boxes.front().lines.end());
      boxes.back() = make_textbox(std::move(tail));
      boxes.insert(boxes.end(), merged.boxes.begin() + 1, merged.boxes.end());
    }
    merged.lines = std::move(lines);
    merged.line_ids = std::move(ids);
    merged.boxes = std::move(boxes);
    merged.first_line_offset = title.first_line_offset;
    merged.distance += title.distance;
    std::vector<NodeRef> folded{title.node};
    folded.insert(folded.end(), title.merged.begin(), title.merged.end());
    folded.insert(folded.end(), merged.merged.begin(), merged.merged.end());
    merged.merged = std::move(folded);
    if (merged.category == LayoutCategory::Title) merged.category = LayoutCategory::Text;

    const std::size_t next_index = static_cast<std::size_t>(next - regions.begin());
    regions[i] = std::move(merged);
    regions.erase(regions.begin() + static_cast<std::ptrdiff_t>(next_index));
    if (next_index < i) --i;
  }
}

std::vector<MatchedRegion> match_sorted(std::span<const GroupNode> nodes, std::span<const PageElements> pages,
                                        MatcherConfig config) {
  DocumentMatcher matcher(pages, config);
  MatchCursor cursor;
  return matcher.match_sorted(nodes, cursor);
}

std::vector<MatchedRegion> match_unsorted(std::span<const GroupNode> nodes, std::span<const PageElements> pages) {
  DocumentMatcher matcher(pages);
  std::set<int> completed;
  std::vector<MatchedRegion> out;
  for (std::size_t p = 0; p < pages.size(); ++p) {
    auto regions = matcher.match_search(nodes, p, completed);
    out.insert(out.end(), regions.begin(), regions.end());
  }
  for (const auto& node : nodes) {
    if (!completed.contains(node.id)) {
      MatchedRegion r;
      r.node = {node.id, node.role, node.path};
      r.category = category_of(node.role);
      out.push_back(std::move(r));
    }
  }
  return out;
}

std::pair<PageMatch, MatchCursor> annotate_page(const PageElements& page, const NodeGroups& groups,
                                                MatchCursor carry) {
  DocumentMatcher matcher(std::span<const PageElements>(&page, 1));
  MatchCursor cursor = carry;
  cursor.page = 0;
  cursor.textbox_index = 0;
  cursor.line_index = 0;
  cursor.line_offset = 0;
  cursor.line.reset();

  PageMatch result;
  result.regions = matcher.match_sorted(groups.sorted, cursor, true);
  auto unsorted = matcher.match_search(groups.unsorted, 0, cursor.completed);
  result.regions.insert(result.regions.end(), unsorted.begin(), unsorted.end());
  auto lists = matcher.match_search(groups.lists, 0, cursor.completed);
  result.regions.insert(result.regions.end(), lists.begin(), lists.end());
  result.captions = matcher.match_tables(groups.tables, 0, cursor.completed, result.regions);
  auto figures = matcher.match_figures(groups.figures, 0, cursor.completed, result.regions);
  result.captions.insert(result.captions.end(), figures.begin(), figures.end());
  merge_inline_titles(result.regions);
  result.unconsumed_text = matcher.unconsumed_text(0);

  cursor.page = 0;
  cursor.textbox_index = 0;
  cursor.line_index = 0;
  cursor.line_offset = 0;
  return {std::move(result), std::move(cursor)};
}

std::vector<LayoutAnnotation> region_to_annotation(const MatchedRegion& region, const std::string& page_id) {
  std::vector<LayoutAnnotation> out;
  if (!region.complete || region.lines.empty()) return out;

  std::vector<NodeRef> merged = region.merged;
  auto emit = [&](std::span<const Textline> run) {
    LayoutAnnotation a = text_annotation(region.category, run, region.node.path, page_id);
    for (const auto& m : merged) a.merged_nodes.push_back(m.path);
    out.push_back(std::move(a));
  };

  std::size_t begin = 0;
  for (std::size_t i = 1; i < region.lines.size(); ++i) {
    const BBox& prev = region.lines[i - 1].bbox;
    const BBox& cur = region.lines[i].bbox;
    // A line that does not sit lower than its predecessor starts a new column.
    if ((cur.y0 + cur.y1) / 2.0 >= (prev.y0 + prev.y1) / 2.0) {
      emit(std::span<const Textline>(region.lines).subspan(begin, i - begin));
      begin = i;
    }
  }
  emit(std::span<const Textline>(region.lines).subspan(begin));
  return out;
}

}  // namespace layoutgt
