#pragma once

#include <algorithm>
#include <string_view>
#include <vector>

#include "ingrank/errors.hpp"

namespace ingrank {

// Longest common subsequence length, O(|a|*|b|) time, two rolling rows.
inline size_t lcs_length(std::string_view a, std::string_view b) {
  if (a.empty() || b.empty()) return 0;
  if (a.size() < b.size()) std::swap(a, b);
  std::vector<uint32_t> prev(b.size() + 1, 0);
  std::vector<uint32_t> cur(b.size() + 1, 0);
  for (size_t i = 1; i <= a.size(); ++i) {
    for (size_t j = 1; j <= b.size(); ++j) {
      if (a[i - 1] == b[j - 1]) {
        cur[j] = prev[j - 1] + 1;
      } else {
        cur[j] = std::max(prev[j], cur[j - 1]);
      }
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

// Normalized LCS over raw character sequences: LCS / max(|a|, |b|), in [0, 1].
inline double lcs_similarity(std::string_view a, std::string_view b) {
  if (a.empty() || b.empty())
    throw DataError("lcs similarity requires non-empty component text");
  return static_cast<double>(lcs_length(a, b)) /
         static_cast<double>(std::max(a.size(), b.size()));
}

}  // namespace ingrank
