#include "equisq/transit.hpp"

#include "equisq/flows.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <tuple>

namespace equisq::transit {

bool is_representation(const SquareState& p, const SquareState& q, const Permutation& f) {
  const int cells = p.n() * p.n();
  if (q.n() != p.n() || static_cast<int>(f.size()) != cells) return false;
  std::vector<char> hit(static_cast<std::size_t>(cells), 0);
  for (int r = 0; r < cells; ++r) {
    if (f[r] < 0 || f[r] >= cells || hit[f[r]]) return false;
    hit[f[r]] = 1;
    if (p.digit_at_rank(r) != q.digit_at_rank(f[r])) return false;
  }
  return true;
}

Permutation color_matching_representation(const SquareState& p, const SquareState& q) {
  const int n = p.n();
  if (q.n() != n) throw Error("states differ in size");
  Permutation f(static_cast<std::size_t>(n) * n);
  for (int d = 0; d < n; ++d) {
    const auto from = p.cells_with(d);
    const auto to = q.cells_with(d);
    for (std::size_t i = 0; i < from.size(); ++i) f[rank_of(from[i], n)] = rank_of(to[i], n);
  }
  return f;
}

MoveSequence three_cycle_moves(int k, int r, int n) {
  if (n < 3) throw Error("3-cycle gadget needs n >= 3");
  if (r < 1 || r >= n) throw Error("3-cycle gadget needs 1 <= r < n");
  if (k < 0 || k >= n) throw Error("3-cycle gadget needs 0 <= k < n");
  auto h = [n](std::initializer_list<std::pair<int, int>> rows) {
    std::vector<int> off(static_cast<std::size_t>(n), 0);
    for (auto [row, v] : rows) off[row] += v;
    return ElementaryMove(Axis::H, off);
  };
  auto v = [n](int col, int amount) {
    std::vector<int> off(static_cast<std::size_t>(n), 0);
    off[col] = amount;
    return ElementaryMove(Axis::V, off);
  };
  return MoveSequence(n, {h({{0, 1}, {r, 1 - k}}), v(1, -r), h({{0, -1}}), v(1, r), h({{r, k - 1}})});
}

MoveSequence long_cycle_move(int n) { return long_cycle_power(n, 1); }

MoveSequence long_cycle_power(int n, long long j) {
  require_size(n);
  const long long cells = static_cast<long long>(n) * n;
  j %= cells;
  if (j < 0) j += cells;
  if (j == 0) return MoveSequence(n);
  const int a = static_cast<int>(j % n);
  const int b = static_cast<int>(j / n);
  std::vector<int> v(static_cast<std::size_t>(n), b);
  for (int c = 0; c < a; ++c) v[c] = b + 1;
  return MoveSequence(n, {ElementaryMove(Axis::H, std::vector<int>(static_cast<std::size_t>(n), a)),
                          ElementaryMove(Axis::V, std::move(v))});
}

Permutation cycle_permutation(int size, std::span<const int> cycle) {
  Permutation p = identity_permutation(size);
  for (std::size_t i = 0; i < cycle.size(); ++i) p[cycle[i]] = cycle[(i + 1) % cycle.size()];
  return p;
}

CarrierDecomposition carrier_decomposition(const Permutation& f, std::span<const int> domain) {
  std::vector<int> pts(domain.begin(), domain.end());
  std::sort(pts.begin(), pts.end());
  std::vector<char> seen(f.size(), 0);
  CarrierDecomposition d;
  for (int l : pts) {
    if (seen[l]) continue;
    seen[l] = 1;
    if (f[l] == l) continue;
    std::vector<int> cyc;
    for (int x = f[l]; x != l; x = f[x]) {
      if (!std::binary_search(pts.begin(), pts.end(), x)) throw Error("permutation leaves the domain");
      seen[x] = 1;
      cyc.push_back(x);
    }
    cyc.push_back(l);
    d.last_points.push_back(l);
    d.carrier.insert(d.carrier.end(), cyc.begin(), cyc.end());
    d.cycles.push_back(std::move(cyc));
  }
  return d;
}

// ---------------------------------------------------------------------------
// Generator-based compiler

namespace {

// Emits conjugates of a fixed local move by powers of the long cycle, merging
// consecutive conjugations into one power.
class FrameEmitter {
 public:
  explicit FrameEmitter(int n) : n_(n), out_(n) {}

  // Local permutation conjugated into frame j (acts on ranks shifted by j).
  void emit(long long j, const MoveSequence& local) {
    out_.append(long_cycle_power(n_, pending_ - j));
    out_.append(local);
    pending_ = j;
  }

  MoveSequence finish() {
    out_.append(long_cycle_power(n_, pending_));
    pending_ = 0;
    return normalize(out_);
  }

 private:
  int n_;
  long long pending_ = 0;
  MoveSequence out_;
};

}  // namespace

long long naive_half_shuffle_bound(int n) {
  require_size(n);
  const long long per_cell = std::max(1, (n - 1 + 1) / 2);
  return 8LL * n * n * per_cell;
}

MoveSequence naive_compile(const SquareState& p, const SquareState& q) {
  const int n = p.n();
  if (q.n() != n) throw Error("states differ in size");
  const int cells = n * n;
  std::vector<int> cur = p.digits();
  FrameEmitter em(n);

  if (n == 2) {
    // Exact adjacent transpositions (a, a+1) in frame a.
    const MoveSequence swap(n, {ElementaryMove(Axis::H, {1, 0})});
    for (int t = 0; t < cells; ++t) {
      if (cur[t] == q.digit_at_rank(t)) continue;
      int s = t + 1;
      while (cur[s] != q.digit_at_rank(t)) ++s;
      for (int a = s - 1; a >= t; --a) {
        em.emit(a, swap);
        std::swap(cur[a], cur[a + 1]);
      }
    }
  } else {
    auto apply_cycle = [&](int frame, int x) {
      em.emit(frame, three_cycle_moves(x % n, x / n, n));
      const int a = mod(frame, cells);
      const int b = mod(frame + 1, cells);
      const int c = mod(frame + x, cells);
      const int va = cur[a];
      const int vb = cur[b];
      const int vc = cur[c];
      cur[b] = va;
      cur[c] = vb;
      cur[a] = vc;
    };
    for (int t = 0; t < cells; ++t) {
      const int want = q.digit_at_rank(t);
      if (cur[t] == want) continue;
      int far = -1;
      for (int y = t + n; y < cells; ++y)
        if (cur[y] == want) {
          far = y;
          break;
        }
      if (far >= 0) {
        apply_cycle(t, far - t);
        continue;
      }
      int s = t + 1;
      while (cur[s] != want) ++s;
      // Consecutive 3-cycles (s-2, s-1, s) move the wanted digit two left.
      for (; s - t >= 2; s -= 2) apply_cycle(s - 1, cells - 1);
      if (s == t) continue;
      // One step left: borrow an equal digit outside the block t..t+n-1.
      int y = -1;
      for (int cand = 0; cand < cells && y < 0; ++cand) {
        const int x = mod(cand - t, cells);
        if (x >= n && cur[cand] == want) y = cand;
      }
      if (y < 0) throw Error("no digit available outside the block");
      apply_cycle(t, mod(y - t, cells));
    }
  }
  MoveSequence out = em.finish();
  if (p.apply(out) != q) throw Error("internal error: compiled sequence does not reach the target");
  return out;
}

// ---------------------------------------------------------------------------
// Bounded compiler

int bounded_shuffle_budget(int n) {
  require_size(n);
  return n % 2 == 0 ? 6 * n - 3 : 6 * n + 3;
}

int shuffle_distance_floor(int n) { return shuffle_lower_bound(n); }

namespace {

class CyclePrimitives {
 public:
  CyclePrimitives(const SquareState& start, const optimize::KeyResultOptions& opts, bool economize)
      : n_(start.n()), state_(start), seq_(start.n()), opts_(opts), economize_(economize && start.n() <= 5) {
    std::vector<Position> row;
    std::vector<Position> column;
    for (int c = 0; c < n_; ++c) {
      row.push_back({c, 0});
      column.push_back({0, c});
    }
    bottom_ = PositionArray(n_, row);
    left_ = PositionArray(n_, column);
  }

  // Realizes the given cycles (rank lists in content-flow order) with one
  // bottom-row rotation by `shift`. Cycle j occupies the j-th orbit of the
  // rotation and is padded to the orbit length with cells whose current color
  // equals that of its first element; the padding goes right after it, so the
  // result is state-equivalent to the unpadded cycles.
  void run(std::vector<std::vector<int>> cycles, int shift) {
    const int g = std::gcd(std::abs(shift), n_);
    const int orbit = n_ / g;
    if (static_cast<int>(cycles.size()) > g) throw Error("more cycles than rotation orbits");
    bool trivial = true;
    for (const auto& c : cycles) trivial &= c.size() <= 1;
    if (trivial) return;
    std::vector<char> used(static_cast<std::size_t>(n_) * n_, 0);
    for (const auto& c : cycles) {
      if (static_cast<int>(c.size()) > orbit) throw Error("cycle longer than its rotation orbit");
      for (int r : c) used[r] = 1;
    }
    for (auto& c : cycles) {
      if (c.empty()) throw Error("empty cycle passed to a rotation primitive");
      const int color = state_.digit_at_rank(c[0]);
      std::vector<int> pads;
      for (int r = 0; r < n_ * n_ && static_cast<int>(c.size() + pads.size()) < orbit; ++r)
        if (!used[r] && state_.digit_at_rank(r) == color) {
          used[r] = 1;
          pads.push_back(r);
        }
      if (static_cast<int>(c.size() + pads.size()) < orbit) throw Error("internal error: padding cell unavailable");
      c.insert(c.begin() + 1, pads.begin(), pads.end());
    }
    std::vector<Position> arr(static_cast<std::size_t>(n_));
    for (std::size_t j = 0; j < cycles.size(); ++j)
      for (int k = 0; k < orbit; ++k)
        arr[mod(static_cast<long long>(j) + static_cast<long long>(shift) * k, n_)] = position_of(cycles[j][k], n_);
    const PositionArray a(n_, arr);
    std::vector<int> rot(static_cast<std::size_t>(n_), 0);
    rot[0] = shift;
    Axis rot_axis = Axis::H;
    MoveSequence onto(n_);
    if (auto short_onto = economize_ ? three_move_onto(a) : std::nullopt) {
      std::tie(onto, rot_axis) = *short_onto;
    } else {
      onto = optimize::array_onto_graph(a, bottom_, opts_);
    }
    MoveSequence prim = onto;
    prim.push_back(ElementaryMove(rot_axis, rot));
    prim.append(onto.inverse());
    state_ = state_.apply(prim);
    seq_.append(prim);
  }

  void append(const MoveSequence& m) {
    state_ = state_.apply(m);
    seq_.append(m);
  }

  const SquareState& state() const { return state_; }
  const MoveSequence& sequence() const { return seq_; }

 private:
  // VHV onto the bottom row or HVH onto the left column, with the axis of
  // the matching rotation. Only tried for n <= 5.
  std::optional<std::pair<MoveSequence, Axis>> three_move_onto(const PositionArray& a) const {
    const PositionSet s = a.as_set();
    const auto cols = optimize::rows_apart(s.transpose(), opts_.node_budget);
    if (cols.status == ngon::SearchStatus::Found) {
      const ElementaryMove v = cols.move->transpose();
      const PositionArray mid = apply(MoveSequence(n_, {v}), a);
      MoveSequence out(n_, {v});
      out.append(optimize::graph_to_graph_shuffle(transposed_array(mid), transposed_array(bottom_)).transpose());
      return std::pair{out, Axis::H};
    }
    const auto rows = optimize::rows_apart(s, opts_.node_budget);
    if (rows.status == ngon::SearchStatus::Found) {
      const PositionArray mid = apply(MoveSequence(n_, {*rows.move}), a);
      MoveSequence out(n_, {*rows.move});
      out.append(optimize::graph_to_graph_shuffle(mid, left_));
      return std::pair{out, Axis::V};
    }
    return std::nullopt;
  }

  static PositionArray transposed_array(const PositionArray& a) {
    std::vector<Position> cells;
    for (Position p : a.cells()) cells.push_back(transposed(p));
    return PositionArray(a.n(), cells);
  }

  int n_;
  SquareState state_;
  MoveSequence seq_;
  optimize::KeyResultOptions opts_;
  bool economize_;
  PositionArray bottom_{2};
  PositionArray left_{2};
};

std::vector<int> reversed(std::vector<int> v) {
  std::reverse(v.begin(), v.end());
  return v;
}

}  // namespace

MoveSequence bounded_compile(const SquareState& p, const SquareState& q, const optimize::KeyResultOptions& opts,
                             bool economize) {
  const int n = p.n();
  if (q.n() != n) throw Error("states differ in size");
  if (p == q) return MoveSequence(n);

  // A latin V-graph of p and a latin H-graph of q, paired by color.
  const PositionArray g = flows::latin_graph_partition(p, Axis::V).front();
  const PositionArray h = flows::latin_graph_partition(q, Axis::H).front();
  std::vector<Position> g_by_color(static_cast<std::size_t>(n));
  std::vector<Position> h_by_color(static_cast<std::size_t>(n));
  for (Position c : g.cells()) g_by_color[p.digit(c)] = c;
  for (Position c : h.cells()) h_by_color[q.digit(c)] = c;
  const MoveSequence sigma =
      optimize::graph_to_graph_shuffle(PositionArray(n, h_by_color), PositionArray(n, g_by_color));
  const SquareState q_moved = q.apply(sigma);

  const PositionSet g_set = g.as_set();
  const auto rep = flows::part_respecting_representation(p, q_moved, g_set, g_set.cells());

  struct PartPlan {
    std::vector<int> inverse_last;  // cycle of last points, reversed
    std::vector<int> carrier;
  };
  std::vector<PartPlan> plans;
  for (const auto& part : rep.parts) {
    std::vector<int> domain;
    for (Position c : part) domain.push_back(rank_of(c, n));
    const auto dec = carrier_decomposition(rep.map, domain);
    PartPlan plan;
    plan.inverse_last = reversed(dec.last_points);
    // An identity part still needs one cell to stand in the pairing steps.
    if (plan.inverse_last.empty()) plan.inverse_last.push_back(*std::min_element(domain.begin(), domain.end()));
    plan.carrier = dec.carrier;
    plans.push_back(std::move(plan));
  }

  CyclePrimitives prim(p, opts, economize);
  auto carrier = [&](const PartPlan& pl) {
    if (!pl.carrier.empty()) prim.run({pl.carrier}, 1);
  };
  const std::size_t parts = plans.size();
  if (n % 2 == 0) {
    std::size_t i = 0;
    for (; i + 1 < parts; i += 2) {
      prim.run({plans[i].inverse_last, plans[i + 1].inverse_last}, -2);
      carrier(plans[i]);
      carrier(plans[i + 1]);
    }
    if (i < parts) {
      prim.run({plans[i].inverse_last}, 1);
      carrier(plans[i]);
    }
  } else {
    // Pairwise products of the inverse last-point cycles need the
    // transpositions of their final cells first.
    std::vector<int> ys;
    std::vector<int> interleaved;
    for (std::size_t i = 0; i + 1 < parts; i += 2) {
      const int x = plans[i].inverse_last.back();
      const int y = plans[i + 1].inverse_last.back();
      ys.push_back(y);
      interleaved.push_back(x);
      interleaved.push_back(y);
    }
    prim.run({reversed(ys)}, 1);
    prim.run({interleaved}, 1);
    for (std::size_t i = 0; i + 1 < parts; i += 2) {
      std::vector<int> joined = plans[i].inverse_last;
      joined.insert(joined.end(), plans[i + 1].inverse_last.begin(), plans[i + 1].inverse_last.end());
      prim.run({joined}, -2);
      carrier(plans[i]);
      carrier(plans[i + 1]);
    }
    if (parts % 2) {
      prim.run({plans.back().inverse_last}, 1);
      carrier(plans.back());
    }
  }
  if (prim.state() != q_moved) throw Error("internal error: cycle steps did not reach the intermediate state");
  prim.append(sigma.inverse());
  MoveSequence out = normalize(prim.sequence());
  if (p.apply(out) != q) throw Error("internal error: compiled sequence does not reach the target");
  return out;
}

}  // namespace equisq::transit
