#pragma once

#include <algorithm>
#include <vector>

namespace assoc {

// All non-decreasing s-tuples over {0, ..., base-1} in lexicographic order;
// the canonical enumeration of S_s-orbits (multisets) used by extension
// schemes for both relation and eigenspace indices.
inline std::vector<std::vector<int>> multisets(int s, int base) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(s, 0);
  while (true) {
    out.push_back(cur);
    int t = s - 1;
    while (t >= 0 && cur[t] == base - 1) --t;
    if (t < 0) break;
    ++cur[t];
    for (int u = t + 1; u < s; ++u) cur[u] = cur[t];
  }
  return out;
}

// Calls f once per distinct permutation of the multiset t.
template <class F>
void for_each_perm(std::vector<int> t, F&& f) {
  std::sort(t.begin(), t.end());
  do {
    f(t);
  } while (std::next_permutation(t.begin(), t.end()));
}

}  // namespace assoc
