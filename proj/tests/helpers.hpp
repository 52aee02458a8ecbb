#pragma once

#include "equisq/core.hpp"
#include "equisq/random.hpp"

#include <algorithm>
#include <vector>

namespace equisq::testing {

inline PositionSet cells(int n, std::initializer_list<Position> list) {
  return PositionSet(n, std::vector<Position>(list));
}

// Every equi-n-square, by digits in rank order.
inline std::vector<SquareState> all_states(int n) {
  std::vector<int> digits;
  for (int d = 0; d < n; ++d)
    for (int i = 0; i < n; ++i) digits.push_back(d);
  std::vector<SquareState> out;
  do out.emplace_back(n, digits);
  while (std::next_permutation(digits.begin(), digits.end()));
  return out;
}

// Every k-subset of the n x n square, as rank lists.
template <class Visit>
void for_each_subset(int n, int k, Visit&& visit) {
  const int cells = n * n;
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    std::vector<Position> pos;
    for (int r : idx) pos.push_back(position_of(r, n));
    visit(PositionSet(n, pos));
    int i = k - 1;
    while (i >= 0 && idx[i] == cells - k + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace equisq::testing
