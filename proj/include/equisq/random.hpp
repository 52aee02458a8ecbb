#pragma once

// Platform-stable random helpers. std::uniform_int_distribution is
// implementation-defined, so sampling is done by hand on top of mt19937_64.

#include "equisq/core.hpp"

#include <cstdint>
#include <limits>
#include <random>
#include <vector>

namespace equisq {

using Rng = std::mt19937_64;

// Independent stream for item `index` of a campaign seeded with `seed`.
inline Rng make_rng(std::uint64_t seed, std::uint64_t index = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32), 0x9e3779b9u};
  return Rng(seq);
}

// Uniform in [0, bound).
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  if (bound <= 1) return 0;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do x = rng();
  while (x >= limit);
  return x % bound;
}

template <class T>
void shuffle_in_place(std::vector<T>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[uniform_below(rng, i)]);
}

// k distinct cells drawn uniformly from the n x n square.
inline PositionSet random_position_set(int n, int k, Rng& rng) {
  const int cells = n * n;
  std::vector<int> ranks(static_cast<std::size_t>(cells));
  for (int i = 0; i < cells; ++i) ranks[i] = i;
  std::vector<Position> out;
  out.reserve(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    const auto j = static_cast<std::size_t>(i) + uniform_below(rng, static_cast<std::uint64_t>(cells - i));
    std::swap(ranks[i], ranks[j]);
    out.push_back(position_of(ranks[i], n));
  }
  return PositionSet(n, out);
}

inline SquareState random_state(int n, Rng& rng) {
  std::vector<int> digits;
  digits.reserve(static_cast<std::size_t>(n) * n);
  for (int d = 0; d < n; ++d)
    for (int i = 0; i < n; ++i) digits.push_back(d);
  shuffle_in_place(digits, rng);
  return SquareState(n, std::move(digits));
}

inline ElementaryMove random_move(Axis axis, int n, Rng& rng) {
  std::vector<int> offsets(static_cast<std::size_t>(n));
  for (int& o : offsets) o = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(n)));
  return ElementaryMove(axis, std::move(offsets));
}

}  // namespace equisq
