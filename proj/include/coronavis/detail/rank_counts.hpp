#pragma once

#include <algorithm>

namespace coronavis {

template <typename Key, typename Map>
RankedCounts<Key> rank_counts(const Map& counts, std::size_t k) {
  RankedCounts<Key> ranked(counts.begin(), counts.end());
  auto before = [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  };
  if (k < ranked.size()) {
    std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(k), ranked.end(), before);
    ranked.resize(k);
  } else {
    std::sort(ranked.begin(), ranked.end(), before);
  }
  return ranked;
}

}  // namespace coronavis
