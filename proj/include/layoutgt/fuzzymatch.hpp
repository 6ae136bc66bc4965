#pragma once

#include <cstddef>
#include <optional>
#include <string_view>

#include "layoutgt/textnorm.hpp"

namespace layoutgt {

// Largest Levenshtein distance accepted for a target of `target_length`
// characters: floor(0.2 l) up to 20, floor(0.15 l) up to 40, floor(0.1 l)
// beyond. Not monotone at the piece boundaries (40 -> 6, 41 -> 4).
// Throws std::invalid_argument for negative lengths.
int max_distance(long long target_length);

struct MatchBudget {
  std::size_t target_length = 0;
  int max_distance = 0;

  static MatchBudget for_target(std::size_t length);
};

// Unit-cost edit distance over code points.
int levenshtein(std::u32string_view a, std::u32string_view b);

// Half-open span [start, end) of the source.
struct SpanMatch {
  std::size_t start = 0;
  std::size_t end = 0;
  int distance = 0;

  friend bool operator==(const SpanMatch&, const SpanMatch&) = default;
};

// Closest substring of `source` to `target`: minimum distance, then smallest
// start, then smallest end. Empty when every substring is beyond the budget.
// O(|source| * |target|) time, O(|target|) memory.
std::optional<SpanMatch> find_near_match(std::u32string_view target, std::u32string_view source,
                                         const MatchBudget& budget);
std::optional<SpanMatch> find_near_match(const NormString& target, const NormString& source);

// Alignment of `target` against prefixes of `source` (start pinned at 0, end
// free). Distances above `max_dist` are reported as max_dist + 1.
struct PrefixAlignment {
  std::size_t best_end = 0;  // smallest end reaching best_distance
  int best_distance = 0;
  int full_distance = 0;  // distance to the whole source

  bool accepted(int max_dist) const noexcept { return best_distance <= max_dist; }
};

// Banded DP: O(|target| * max_dist) cells.
PrefixAlignment align_prefix(std::u32string_view target, std::u32string_view source, int max_dist);

}  // namespace layoutgt
