#include "equisq/flows.hpp"

#include <algorithm>
#include <deque>
#include <limits>

namespace equisq::flows {

FlowNetwork::FlowNetwork(int vertices) : adj_(static_cast<std::size_t>(vertices)) {}

int FlowNetwork::add_vertex() {
  adj_.emplace_back();
  return vertices() - 1;
}

int FlowNetwork::add_arc(int from, int to, int capacity) {
  const int id = static_cast<int>(arcs_.size());
  arcs_.push_back({to, capacity, 0});
  arcs_.push_back({from, 0, 0});
  adj_[from].push_back(id);
  adj_[to].push_back(id + 1);
  return id;
}

int FlowNetwork::flow_on(int arc) const { return arcs_[arc].flow; }

int FlowNetwork::max_flow(int source, int sink) {
  int total = 0;
  std::vector<int> via(adj_.size());
  while (true) {
    std::fill(via.begin(), via.end(), -1);
    std::deque<int> queue{source};
    via[source] = -2;
    while (!queue.empty() && via[sink] == -1) {
      const int x = queue.front();
      queue.pop_front();
      for (int id : adj_[x]) {
        const Arc& a = arcs_[id];
        if (via[a.to] != -1 || a.capacity - a.flow <= 0) continue;
        via[a.to] = id;
        queue.push_back(a.to);
      }
    }
    if (via[sink] == -1) return total;
    int push = std::numeric_limits<int>::max();
    for (int x = sink; x != source; x = arcs_[via[x] ^ 1].to)
      push = std::min(push, arcs_[via[x]].capacity - arcs_[via[x]].flow);
    for (int x = sink; x != source; x = arcs_[via[x] ^ 1].to) {
      arcs_[via[x]].flow += push;
      arcs_[via[x] ^ 1].flow -= push;
    }
    total += push;
  }
}

// ---------------------------------------------------------------------------

void check_transversal_instance(const TransversalInstance& inst) {
  const int n = inst.parts;
  const std::size_t ground = inst.u_part.size();
  if (n <= 0) throw Error("transversal instance needs at least one part");
  if (inst.w_part.size() != ground) throw Error("both partitions must cover the same ground set");
  if (inst.l < 0 || inst.l >= inst.k) throw Error("transversal instance needs 0 <= l < k");
  if (static_cast<long long>(ground) != static_cast<long long>(n) * inst.k - inst.l)
    throw Error("ground set must have n k - l elements");
  std::vector<int> u_size(static_cast<std::size_t>(n), 0);
  std::vector<int> w_size(static_cast<std::size_t>(n), 0);
  for (std::size_t e = 0; e < ground; ++e) {
    const int u = inst.u_part[e];
    const int w = inst.w_part[e];
    if (u < 0 || u >= n || w < 0 || w >= n) throw Error("part index out of range");
    if (++u_size[u] > inst.k || ++w_size[w] > inst.k) throw Error("a part has more than k elements");
  }
  if (static_cast<int>(inst.avoid.size()) > inst.k - inst.l - 1) throw Error("too many avoided elements");
  std::vector<int> avoid = inst.avoid;
  std::sort(avoid.begin(), avoid.end());
  if (std::adjacent_find(avoid.begin(), avoid.end()) != avoid.end()) throw Error("avoided elements repeat");
  for (int a : avoid)
    if (a < 0 || static_cast<std::size_t>(a) >= ground) throw Error("avoided element out of range");
}

TransversalResult common_transversal(const TransversalInstance& inst) {
  check_transversal_instance(inst);
  const int n = inst.parts;
  const int ground = static_cast<int>(inst.u_part.size());
  std::vector<char> skip(static_cast<std::size_t>(ground), 0);
  for (int a : inst.avoid) skip[a] = 1;

  // Deleting the avoided elements leaves an instance with l' = l + #avoid < k.
  const int source = 0;
  const int sink = 1;
  FlowNetwork net(2 + 2 * n);
  auto u_vertex = [](int i) { return 2 + i; };
  auto w_vertex = [n](int i) { return 2 + n + i; };
  for (int i = 0; i < n; ++i) {
    net.add_arc(source, u_vertex(i), 1);
    net.add_arc(w_vertex(i), sink, 1);
  }
  std::vector<int> entry_arc(static_cast<std::size_t>(ground), -1);
  for (int e = 0; e < ground; ++e) {
    if (skip[e]) continue;
    const int v = net.add_vertex();
    entry_arc[e] = net.add_arc(u_vertex(inst.u_part[e]), v, 1);
    net.add_arc(v, w_vertex(inst.w_part[e]), 1);
  }
  TransversalResult res;
  res.flow = net.max_flow(source, sink);
  if (res.flow != n) throw Error("max flow below n on an instance meeting the hypotheses");
  std::vector<int> by_part(static_cast<std::size_t>(n), -1);
  for (int e = 0; e < ground; ++e)
    if (entry_arc[e] >= 0 && net.flow_on(entry_arc[e]) == 1) by_part[inst.u_part[e]] = e;
  res.elements = std::move(by_part);
  return res;
}

LatinPartition common_latin_partition(const SquareState& p, const SquareState& q, const PositionSet& v, int k) {
  const int n = p.n();
  if (q.n() != n || v.n() != n) throw Error("states and set must share the square size");
  if (k < 1 || static_cast<long long>(v.size()) != static_cast<long long>(k) * n)
    throw Error("ground set must have k n cells");
  std::vector<int> cp(static_cast<std::size_t>(n), 0);
  std::vector<int> cq(static_cast<std::size_t>(n), 0);
  for (Position c : v.cells()) {
    ++cp[p.digit(c)];
    ++cq[q.digit(c)];
  }
  for (int d = 0; d < n; ++d)
    if (cp[d] != k || cq[d] != k) throw Error("every color must occur exactly k times in the ground set");

  std::vector<Position> rest = v.cells();
  LatinPartition parts;
  for (int round = 0; round < k; ++round) {
    TransversalInstance inst;
    inst.parts = n;
    inst.k = k - round;
    inst.l = 0;
    for (Position c : rest) {
      inst.u_part.push_back(p.digit(c));
      inst.w_part.push_back(q.digit(c));
    }
    const auto tr = common_transversal(inst);
    std::vector<Position> part;
    std::vector<char> taken(rest.size(), 0);
    for (int e : tr.elements) {
      part.push_back(rest[e]);
      taken[e] = 1;
    }
    std::vector<Position> next;
    for (std::size_t i = 0; i < rest.size(); ++i)
      if (!taken[i]) next.push_back(rest[i]);
    rest = std::move(next);
    parts.push_back(std::move(part));
  }
  return parts;
}

PartRespectingResult part_respecting_representation(const SquareState& p, const SquareState& q, const PositionSet& w,
                                                    std::span<const Position> g) {
  const int n = p.n();
  if (q.n() != n || w.n() != n) throw Error("states and set must share the square size");
  if (g.size() != w.size()) throw Error("g must give one image per cell of W");
  PositionSet image(n, g);
  if (image != w) throw Error("g must be a bijection of W onto itself");
  PartRespectingResult res;
  res.map.assign(static_cast<std::size_t>(n) * n, -1);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Position from = w.cells()[i];
    if (p.digit(from) != q.digit(g[i])) throw Error("g does not preserve colors");
    res.map[rank_of(from, n)] = rank_of(g[i], n);
  }
  std::vector<Position> rest;
  for (int r = 0; r < n * n; ++r)
    if (!w.contains(position_of(r, n))) rest.push_back(position_of(r, n));
  if (rest.size() % static_cast<std::size_t>(n) != 0) throw Error("complement of W must have a multiple of n cells");
  const int k = static_cast<int>(rest.size()) / n;
  if (k > 0) res.parts = common_latin_partition(p, q, PositionSet(n, rest), k);
  for (const auto& part : res.parts) {
    std::vector<int> q_cell(static_cast<std::size_t>(n), -1);
    for (Position c : part) q_cell[q.digit(c)] = rank_of(c, n);
    for (Position c : part) res.map[rank_of(c, n)] = q_cell[p.digit(c)];
  }
  return res;
}

std::vector<PositionArray> latin_graph_partition(const SquareState& state, Axis axis) {
  const int n = state.n();
  if (axis == Axis::V) {
    auto graphs = latin_graph_partition(state.transpose(), Axis::H);
    std::vector<PositionArray> out;
    for (const auto& g : graphs) {
      std::vector<Position> cells;
      for (Position c : g.cells()) cells.push_back(transposed(c));
      out.emplace_back(n, std::move(cells));
    }
    return out;
  }
  std::vector<Position> rest;
  for (int r = 0; r < n * n; ++r) rest.push_back(position_of(r, n));
  std::vector<PositionArray> out;
  for (int round = 0; round < n; ++round) {
    TransversalInstance inst;
    inst.parts = n;
    inst.k = n - round;
    for (Position c : rest) {
      inst.u_part.push_back(c.col);
      inst.w_part.push_back(state.digit(c));
    }
    const auto tr = common_transversal(inst);
    std::vector<Position> graph;
    std::vector<char> taken(rest.size(), 0);
    for (int e : tr.elements) {
      graph.push_back(rest[e]);
      taken[e] = 1;
    }
    std::vector<Position> next;
    for (std::size_t i = 0; i < rest.size(); ++i)
      if (!taken[i]) next.push_back(rest[i]);
    rest = std::move(next);
    out.emplace_back(n, std::move(graph));
  }
  return out;
}

}  // namespace equisq::flows
