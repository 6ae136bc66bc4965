#include "layoutgt/fuzzymatch.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace layoutgt {

int max_distance(long long target_length) {
  if (target_length < 0) throw std::invalid_argument("max_distance: negative target length");
  // Integer forms of floor(0.2 l), floor(0.15 l), floor(0.1 l).
  if (target_length <= 20) return static_cast<int>(target_length / 5);
  if (target_length <= 40) return static_cast<int>(target_length * 15 / 100);
  return static_cast<int>(target_length / 10);
}

MatchBudget MatchBudget::for_target(std::size_t length) {
  return {length, layoutgt::max_distance(static_cast<long long>(length))};
}

int levenshtein(std::u32string_view a, std::u32string_view b) {
  if (a.size() < b.size()) std::swap(a, b);
  std::vector<int> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = static_cast<int>(j);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    int diagonal = row[0];
    row[0] = static_cast<int>(i);
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const int above = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diagonal + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diagonal = above;
    }
  }
  return row[b.size()];
}

std::optional<SpanMatch> find_near_match(std::u32string_view target, std::u32string_view source,
                                         const MatchBudget& budget) {
  // Column-wise Sellers DP; each cell keeps (distance, smallest start reaching it).
  struct Cell {
    int dist;
    std::size_t start;
    bool operator<(const Cell& o) const {
      return dist != o.dist ? dist < o.dist : start < o.start;
    }
  };
  const std::size_t m = target.size();
  std::vector<Cell> column(m + 1);
  for (std::size_t i = 0; i <= m; ++i) column[i] = {static_cast<int>(i), 0};

  SpanMatch best{0, 0, column[m].dist};
  for (std::size_t j = 1; j <= source.size(); ++j) {
    Cell diagonal = column[0];
    column[0] = {0, j};
    for (std::size_t i = 1; i <= m; ++i) {
      const Cell left = column[i];
      Cell cell{diagonal.dist + (target[i - 1] == source[j - 1] ? 0 : 1), diagonal.start};
      cell = std::min(cell, Cell{left.dist + 1, left.start});
      cell = std::min(cell, Cell{column[i - 1].dist + 1, column[i - 1].start});
      column[i] = cell;
      diagonal = left;
    }
    const Cell& end = column[m];
    if (end.dist < best.distance || (end.dist == best.distance && end.start < best.start)) {
      best = {end.start, j, end.dist};
    }
  }
  if (best.distance > budget.max_distance) return std::nullopt;
  return best;
}

std::optional<SpanMatch> find_near_match(const NormString& target, const NormString& source) {
  return find_near_match(target.view(), source.view(), MatchBudget::for_target(target.size()));
}

PrefixAlignment align_prefix(std::u32string_view target, std::u32string_view source, int max_dist) {
  const int k = std::max(0, max_dist);
  const int inf = k + 1;
  const std::size_t m = target.size();
  const std::size_t n = source.size();
  const auto band = static_cast<std::size_t>(k);

  std::vector<int> prev(n + 1, inf);
  std::vector<int> cur(n + 1, inf);
  for (std::size_t j = 0; j <= std::min(n, band); ++j) prev[j] = static_cast<int>(j);

  bool exhausted = false;
  for (std::size_t i = 1; i <= m && !exhausted; ++i) {
    const std::size_t lo = i > band ? i - band : 0;
    const std::size_t hi = std::min(n, i + band);
    if (lo > hi) {
      exhausted = true;
      break;
    }
    if (lo > 0) cur[lo - 1] = inf;
    int row_min = inf;
    for (std::size_t j = lo; j <= hi; ++j) {
      int v;
      if (j == 0) {
        v = static_cast<int>(i);
      } else {
        v = prev[j - 1] + (target[i - 1] == source[j - 1] ? 0 : 1);
        v = std::min(v, prev[j] + 1);
        v = std::min(v, cur[j - 1] + 1);
      }
      cur[j] = std::min(v, inf);
      row_min = std::min(row_min, cur[j]);
    }
    if (hi < n) cur[hi + 1] = inf;
    std::swap(prev, cur);
    if (row_min >= inf) exhausted = true;
  }

  PrefixAlignment out{0, inf, inf};
  if (exhausted) return out;
  const std::size_t lo = m > band ? m - band : 0;
  const std::size_t hi = std::min(n, m + band);
  for (std::size_t j = lo; j <= hi; ++j) {
    if (prev[j] < out.best_distance) {
      out.best_distance = prev[j];
      out.best_end = j;
    }
  }
  if (n >= lo && n <= hi) out.full_distance = prev[n];
  return out;
}

}  // namespace layoutgt
