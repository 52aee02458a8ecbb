#pragma once

// Row-count optimization of position sets by V-moves, the Minrows bound,
// spaghetti boundaries, and the one-shuffle maps of n-sets onto graphs.

#include "equisq/core.hpp"
#include "equisq/ngon.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace equisq::optimize {

// Column (or row) size profile, kept in descending order.
using Partition = std::vector<int>;

Partition canonical_partition(std::vector<int> parts);
// Column sizes of s, descending.
Partition column_partition(const PositionSet& s);

// r_0 = 0, r_{i+1} = r_i + ceil((n - r_i) s_i / n), evaluated in the given order.
int rows_recursion(std::span<const int> sizes, int n);
// Best rows_recursion over all distinct orderings of parts.
int rval(std::span<const int> parts, int n);

// max(ceil(s f / (n - s)), s - f); requires s < n.
int rowunique(int n, int s, int f);

struct MinrowsResult {
  int rows = 0;
  std::vector<Partition> critical;
};

// Critical partitions for a fixed candidate row count r (empty if r is not
// critical).
std::vector<Partition> minrows_critical(int n, int r);
// Smallest candidate r >= ceil(n/2) + 1 with a critical partition.
MinrowsResult minrows(int n);

// Smallest integer strictly above (b-1)(b+f)^2 / b^2.
int n_bf(int b, int f);
// Valid for 2 <= n <= 80.
int spaghetti_boundary(int n);

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

inline constexpr long long kDefaultNodeBudget = 50'000'000;

struct OptimizeOptions {
  long long node_budget = kDefaultNodeBudget;
  // Fall back to hill climbing with restarts when the exact search runs out
  // of budget instead of throwing BudgetExceeded.
  bool allow_heuristic = false;
  std::uint64_t seed = 1;
  int restarts = 64;
};

struct OptimizationReport {
  ElementaryMove move;  // V-move
  PositionSet result;
  int rows = 0;
  // True when the exact search completed, so no V-move does better.
  bool certified = false;
};

// Requires n <= 64.
OptimizationReport v_optimize(const PositionSet& s, const OptimizeOptions& opts = {});

// Row count after the best single-column rotation is no larger.
bool is_weakly_v_optimal(const PositionSet& s);

// Local search over single-column rotations from the identity, taking the
// first improving rotation each time. The result is weakly V-optimal.
OptimizationReport hill_climb(const PositionSet& s, const ElementaryMove& start);

struct ColumnStats {
  int column = 0;
  int s0 = 0;  // cells of S in the column
  int u0 = 0;  // of those, row-unique in S
  int f0 = 0;  // other cells of the column on S-rows
  int f = 0;   // cells of the column on free rows
  long long deficit_sum = 0;  // sum over rotations v of rows(S) - rows(v(S))
  bool upper_holds = false;   // s0 f <= (n - s0) u0
  bool lower_holds = false;   // s0 f0 >= (n - s0)(s0 - u0)
  bool identity_holds = false;
};

ColumnStats column_stats(const PositionSet& s, int column);

struct RowsApartResult {
  ngon::SearchStatus status = ngon::SearchStatus::Unknown;
  std::optional<ElementaryMove> move;  // H-move, set when Found
};

// An H-move taking the n-set s onto an H-graph. None is authoritative.
RowsApartResult rows_apart(const PositionSet& s, long long node_budget = ngon::kDefaultFamilyBudget);

struct KeyResultOptions {
  long long node_budget = 2'000'000;
  std::uint64_t seed = 1;
  int restarts = 256;
};

// V-move then H-move taking the n-set s onto an H-graph, or nullopt.
std::optional<MoveSequence> shuffle_to_hgraph(const PositionSet& s, const KeyResultOptions& opts = {});
// H-move then V-move onto a V-graph.
std::optional<MoveSequence> shuffle_to_vgraph(const PositionSet& s, const KeyResultOptions& opts = {});

// Four moves taking a[i] to target[i]. target must be an H-graph (result
// HVHV) or a V-graph (result VHVH). Throws Error if no map was found.
MoveSequence array_onto_graph(const PositionArray& a, const PositionArray& target,
                              const KeyResultOptions& opts = {});

// V-move then H-move taking hgraph[i] to vgraph[i].
MoveSequence graph_to_graph_shuffle(const PositionArray& hgraph, const PositionArray& vgraph);

// True if some single V-move maps s onto a V-graph (the column form of
// rows_apart).
bool v_moves_to_vgraph(const PositionSet& s);
bool h_moves_to_hgraph(const PositionSet& s);

}  // namespace equisq::optimize
