#pragma once

// Common transversals of two partitions by unit-capacity max-flow, and the
// latin partitions built from them. Also the wavy-latin check and the small-n
// type census.

#include "equisq/core.hpp"
#include "equisq/ngon.hpp"

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace equisq::flows {

// Directed graph with integer capacities; max flow by breadth-first
// augmenting paths.
class FlowNetwork {
 public:
  explicit FlowNetwork(int vertices);
  int add_vertex();
  int vertices() const { return static_cast<int>(adj_.size()); }
  // Returns the arc id.
  int add_arc(int from, int to, int capacity);
  int max_flow(int source, int sink);
  int flow_on(int arc) const;

 private:
  struct Arc {
    int to;
    int capacity;
    int flow;
  };
  std::vector<Arc> arcs_;  // arc 2i is forward, 2i+1 its residual twin
  std::vector<std::vector<int>> adj_;
};

struct TransversalInstance {
  int parts = 0;                 // n
  std::vector<int> u_part;       // part index in U of each ground element
  std::vector<int> w_part;       // part index in W of each ground element
  std::vector<int> avoid;        // ground elements to leave out
  int k = 0;
  int l = 0;
};

struct TransversalResult {
  int flow = 0;
  std::vector<int> elements;  // ordered by U part
};

// Checks the size hypotheses (ground set n k - l, parts of size <= k, at
// most k - l - 1 avoided elements) and throws Error when they fail.
void check_transversal_instance(const TransversalInstance& inst);

// One element per part of U and per part of W, avoiding the given elements.
TransversalResult common_transversal(const TransversalInstance& inst);

using LatinPartition = std::vector<std::vector<Position>>;

// k parts of size n covering v, each latin in both p and q.
LatinPartition common_latin_partition(const SquareState& p, const SquareState& q, const PositionSet& v, int k);

struct PartRespectingResult {
  Permutation map;  // rank -> rank
  LatinPartition parts;
};

// Extends the color-preserving bijection g of w onto itself (g[i] is the
// image of w.cells()[i]) to a full representation of p -> q that maps each
// part of a commonly latin partition of the complement onto itself.
PartRespectingResult part_respecting_representation(const SquareState& p, const SquareState& q, const PositionSet& w,
                                                    std::span<const Position> g);

// n disjoint latin H-graphs (axis H) or V-graphs (axis V) covering the square.
// Graph i is listed by column (H) or by row (V).
std::vector<PositionArray> latin_graph_partition(const SquareState& state, Axis axis);

struct WavyResult {
  ngon::SearchStatus status = ngon::SearchStatus::Unknown;
  // Graph index of every cell, by rank.
  std::vector<int> hgraph_of;
  std::vector<int> vgraph_of;
};

inline constexpr long long kDefaultWavyBudget = 50'000'000;

WavyResult wavy_latin(const SquareState& state, long long node_budget = kDefaultWavyBudget);

// Representative digits (by rank) of the class of state under color
// renaming, row and column permutations and transposition.
std::vector<int> canonical_type(const SquareState& state);

struct CensusResult {
  int n = 0;
  long long states = 0;
  long long types = 0;
  long long non_wavy = 0;
  std::vector<std::vector<int>> non_wavy_types;
};

// Enumerates every equi-n-square for n <= 4 and classifies the types. With a
// checkpoint path, finished types are appended as they are found and a rerun
// resumes from them.
CensusResult wavy_census(int n, const std::string& checkpoint_path = {},
                         const std::function<void(long long done, long long total)>& progress = {});

}  // namespace equisq::flows
