#pragma once

// Transitions between equi-n-squares and their compilation into shuffles.

#include "equisq/core.hpp"
#include "equisq/optimize.hpp"

#include <span>
#include <vector>

namespace equisq::transit {

// p-color at every cell equals the q-color at its image.
bool is_representation(const SquareState& p, const SquareState& q, const Permutation& f);

// Per color, the p-cells are matched to the q-cells in rank order.
Permutation color_matching_representation(const SquareState& p, const SquareState& q);

// Five moves realizing the 3-cycle of ranks 0 -> 1 -> k + n r -> 0.
// Requires n >= 3, 0 <= k < n, 1 <= r < n.
MoveSequence three_cycle_moves(int k, int r, int n);

// H-move (+1 on every row) then V-move (+1 on column 0): rank -> rank + 1.
MoveSequence long_cycle_move(int n);
// rank -> rank + j as one shuffle (H then V); empty for j = 0 mod n^2.
MoveSequence long_cycle_power(int n, long long j);

// Cycle list c_0 -> c_1 -> ... -> c_{m-1} -> c_0 as a permutation of `size`
// points.
Permutation cycle_permutation(int size, std::span<const int> cycle);

// A permutation restricted to `domain` splits into cycles of length >= 2;
// each cycle ends at its least point. The carrier runs through all cycles in
// turn and last_points lists those least points in the same order. The
// permutation equals inverse(cycle(last_points)) followed by cycle(carrier).
struct CarrierDecomposition {
  std::vector<std::vector<int>> cycles;
  std::vector<int> last_points;
  std::vector<int> carrier;
};
CarrierDecomposition carrier_decomposition(const Permutation& f, std::span<const int> domain);

// 3-cycle based compiler. The result applied to p gives exactly q.
MoveSequence naive_compile(const SquareState& p, const SquareState& q);
// Half-shuffle bound met by naive_compile: 8 n^2 max(1, ceil((n-1)/2)).
long long naive_half_shuffle_bound(int n);

// 6n - 3 shuffles for even n, 6n + 3 for odd n.
int bounded_shuffle_budget(int n);
// Graph-based compiler; needs 2 <= n <= 34 or n = 37 for its guarantee.
// economize: for n <= 5, cycle steps use three moves onto a line when a single
// move reaches a graph. Off by default.
MoveSequence bounded_compile(const SquareState& p, const SquareState& q, const optimize::KeyResultOptions& opts = {},
                             bool economize = false);

// Same as core::shuffle_lower_bound.
int shuffle_distance_floor(int n);

}  // namespace equisq::transit
