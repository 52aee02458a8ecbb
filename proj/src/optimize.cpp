#include "equisq/optimize.hpp"

#include "equisq/random.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

namespace equisq::optimize {

// ---------------------------------------------------------------------------
// Partitions, rows recursion, Minrows

Partition canonical_partition(std::vector<int> parts) {
  std::sort(parts.begin(), parts.end(), std::greater<>());
  return parts;
}

Partition column_partition(const PositionSet& s) {
  std::vector<int> sizes;
  for (const auto& rows : s.column_rows())
    if (!rows.empty()) sizes.push_back(static_cast<int>(rows.size()));
  return canonical_partition(std::move(sizes));
}

namespace {

int ceil_div(long long a, long long b) { return static_cast<int>((a + b - 1) / b); }

int recursion_step(int r, int s, int n) { return r + ceil_div(static_cast<long long>(n - r) * s, n); }

// Maximum of the rows recursion over all orderings of a multiset, by dynamic
// programming over (remaining multiplicities, current value).
class RvalSolver {
 public:
  RvalSolver(std::span<const int> parts, int n) : n_(n) {
    std::map<int, int> counts;
    for (int p : parts) ++counts[p];
    for (auto [v, c] : counts) {
      values_.push_back(v);
      counts_.push_back(c);
    }
    stride_.resize(values_.size());
    std::size_t states = 1;
    for (std::size_t i = 0; i < values_.size(); ++i) {
      stride_[i] = states;
      states *= static_cast<std::size_t>(counts_[i]) + 1;
    }
    memo_.assign(states * static_cast<std::size_t>(n + 1), -1);
  }

  int solve() {
    std::size_t key = 0;
    for (std::size_t i = 0; i < values_.size(); ++i) key += stride_[i] * static_cast<std::size_t>(counts_[i]);
    return go(key, 0);
  }

 private:
  int go(std::size_t key, int r) {
    if (r >= n_) return n_;
    int& slot = memo_[key * static_cast<std::size_t>(n_ + 1) + static_cast<std::size_t>(r)];
    if (slot >= 0) return slot;
    int best = r;
    for (std::size_t i = 0; i < values_.size(); ++i) {
      const std::size_t left = (key / stride_[i]) % (static_cast<std::size_t>(counts_[i]) + 1);
      if (left == 0) continue;
      best = std::max(best, go(key - stride_[i], recursion_step(r, values_[i], n_)));
      if (best == n_) break;
    }
    slot = best;
    return best;
  }

  int n_;
  std::vector<int> values_;
  std::vector<int> counts_;
  std::vector<std::size_t> stride_;
  std::vector<int> memo_;
};

// Partitions of total into exactly c parts of size <= mx, non-increasing.
void for_each_partition(int total, int c, int mx, std::vector<int>& prefix,
                        const std::function<void(const std::vector<int>&)>& visit) {
  if (c == 0) {
    if (total == 0) visit(prefix);
    return;
  }
  for (int p = std::min(mx, total - (c - 1)); p >= 1; --p) {
    if (static_cast<long long>(p) * c < total) break;
    prefix.push_back(p);
    for_each_partition(total - p, c - 1, p, prefix, visit);
    prefix.pop_back();
  }
}

}  // namespace

int rows_recursion(std::span<const int> sizes, int n) {
  require_size(n);
  int r = 0;
  for (int s : sizes) {
    if (s <= 0) throw Error("part sizes must be positive");
    r = recursion_step(r, s, n);
  }
  return r;
}

int rval(std::span<const int> parts, int n) {
  require_size(n);
  for (int p : parts)
    if (p <= 0) throw Error("part sizes must be positive");
  if (parts.empty()) return 0;
  return RvalSolver(parts, n).solve();
}

int rowunique(int n, int s, int f) {
  if (s >= n) throw Error("rowunique needs s < n");
  return std::max(ceil_div(static_cast<long long>(s) * f, n - s), s - f);
}

std::vector<Partition> minrows_critical(int n, int r) {
  require_size(n);
  std::vector<Partition> crit;
  std::vector<int> prefix;
  for (int m = r - 1; m > 1; --m) {
    for (int c = ceil_div(n - m, m); c <= r - m; ++c) {
      for_each_partition(n - m, c, m, prefix, [&](const std::vector<int>& k) {
        int ru = 0;
        for (int s : k) ru += rowunique(n, s, n - r);
        if (ru > r - m) return;
        // Singletons are set aside: each adds exactly one row at the end.
        std::vector<int> body{m};
        for (int s : k)
          if (s > 1) body.push_back(s);
        const int singles = c + 1 - static_cast<int>(body.size());
        if (RvalSolver(body, n).solve() + singles > r) return;
        body.insert(body.end(), static_cast<std::size_t>(singles), 1);
        crit.push_back(canonical_partition(std::move(body)));
      });
    }
  }
  return crit;
}

MinrowsResult minrows(int n) {
  require_size(n);
  for (int r = n / 2 + n % 2 + 1; r < n; ++r) {
    auto crit = minrows_critical(n, r);
    if (!crit.empty()) return {r, std::move(crit)};
  }
  return {n, {}};
}

int n_bf(int b, int f) {
  if (b < 2 || f < b) throw Error("n(b,f) needs 2 <= b <= f");
  const long long s = b + f;
  return static_cast<int>((b - 1) * s * s / (static_cast<long long>(b) * b)) + 1;
}

int spaghetti_boundary(int n) {
  if (n < 2 || n > 80) throw Error("spaghetti boundary is only defined here for 2 <= n <= 80");
  if (n <= 3) return 0;
  int f = 2;
  auto fits = [n](int ff) {
    for (int b = 2; b <= ff; ++b)
      if (n_bf(b, ff) > n) return false;
    return true;
  };
  while (fits(f)) ++f;
  int value = n - (f - 1) - 1;
  if (n % 4 == 0 && n >= 8 && n <= 28) --value;
  if (n == 32 || n == 37 || n == 43 || n == 50) --value;
  return value;
}

// ---------------------------------------------------------------------------
// Row masks

namespace {

using Mask = std::uint64_t;

Mask rotl(Mask m, int v, int n) {
  v = mod(v, n);
  if (v == 0) return m;
  const Mask full = n == 64 ? ~Mask{0} : ((Mask{1} << n) - 1);
  return ((m << v) | (m >> (n - v))) & full;
}

int popcount(Mask m) { return __builtin_popcountll(m); }

void require_mask_size(int n) {
  if (n > 64) throw Error("optimizer supports n <= 64");
}

struct ColumnMasks {
  int n = 0;
  std::vector<int> body;     // columns with >= 2 cells, ascending
  std::vector<int> singles;  // columns with exactly one cell
  std::vector<Mask> rows;    // row mask of each column
};

ColumnMasks column_masks(const PositionSet& s) {
  ColumnMasks cm;
  cm.n = s.n();
  require_mask_size(cm.n);
  cm.rows.assign(static_cast<std::size_t>(cm.n), 0);
  for (Position p : s.cells()) cm.rows[p.col] |= Mask{1} << p.row;
  for (int c = 0; c < cm.n; ++c) {
    const int k = popcount(cm.rows[c]);
    if (k >= 2) cm.body.push_back(c);
    else if (k == 1) cm.singles.push_back(c);
  }
  return cm;
}

int total_rows(int body_rows, int singles, int n) { return body_rows + std::min(singles, n - body_rows); }

// Full V-move from body rotations: singles drop into free rows in ascending
// order.
ElementaryMove assemble_vmove(const ColumnMasks& cm, const std::vector<int>& body_offsets) {
  const int n = cm.n;
  std::vector<int> offsets(static_cast<std::size_t>(n), 0);
  Mask used = 0;
  for (std::size_t i = 0; i < cm.body.size(); ++i) {
    offsets[cm.body[i]] = body_offsets[i];
    used |= rotl(cm.rows[cm.body[i]], body_offsets[i], n);
  }
  int next = 0;
  for (int c : cm.singles) {
    while (next < n && (used >> next & 1)) ++next;
    if (next >= n) break;
    const int row = __builtin_ctzll(cm.rows[c]);
    offsets[c] = next - row;
    used |= Mask{1} << next;
  }
  return ElementaryMove(Axis::V, std::move(offsets));
}

// Exact search over rotations of the body columns, first body column pinned.
class BodySearch {
 public:
  BodySearch(const ColumnMasks& cm, long long budget) : cm_(cm), budget_(budget) {
    const std::size_t b = cm.body.size();
    suffix_.assign(b + 1, 0);
    for (std::size_t i = b; i-- > 0;) suffix_[i] = suffix_[i + 1] + popcount(cm.rows[cm.body[i]]);
    offsets_.assign(b, 0);
  }

  // Maximum number of rows occupied by the body; nullopt on budget exhaustion.
  std::optional<int> best_body_rows() {
    if (cm_.body.empty()) return 0;
    best_ = 0;
    cap_ = std::min(cm_.n, suffix_[0]);
    aborted_ = false;
    maximize(1, cm_.rows[cm_.body[0]]);
    if (aborted_) return std::nullopt;
    return best_;
  }

  // Visits body offset tuples with at least `threshold` body rows in
  // lexicographic order until visit returns true. Returns false if the budget
  // ran out first.
  bool enumerate(int threshold, const std::function<bool(const std::vector<int>&)>& visit) {
    aborted_ = false;
    stop_ = false;
    threshold_ = threshold;
    visit_ = &visit;
    if (cm_.body.empty()) {
      stop_ = visit(offsets_);
      return true;
    }
    walk(1, cm_.rows[cm_.body[0]]);
    return !aborted_;
  }

  long long nodes() const { return nodes_; }

 private:
  bool tick() {
    if (++nodes_ > budget_) aborted_ = true;
    return !aborted_;
  }

  void maximize(std::size_t depth, Mask used) {
    const int have = popcount(used);
    if (depth == cm_.body.size()) {
      if (have > best_) {
        best_ = have;
        best_offsets_ = offsets_;
      }
      return;
    }
    for (int v = 0; v < cm_.n && best_ < cap_; ++v) {
      if (!tick()) return;
      const Mask next = used | rotl(cm_.rows[cm_.body[depth]], v, cm_.n);
      if (popcount(next) + suffix_[depth + 1] <= best_) continue;
      offsets_[depth] = v;
      maximize(depth + 1, next);
      if (aborted_) return;
    }
  }

  void walk(std::size_t depth, Mask used) {
    if (depth == cm_.body.size()) {
      if (popcount(used) >= threshold_) stop_ = (*visit_)(offsets_);
      return;
    }
    for (int v = 0; v < cm_.n; ++v) {
      if (!tick()) return;
      const Mask next = used | rotl(cm_.rows[cm_.body[depth]], v, cm_.n);
      if (popcount(next) + suffix_[depth + 1] < threshold_) continue;
      offsets_[depth] = v;
      walk(depth + 1, next);
      if (aborted_ || stop_) return;
    }
  }

  const ColumnMasks& cm_;
  long long budget_;
  long long nodes_ = 0;
  std::vector<int> suffix_;
  std::vector<int> offsets_;
  std::vector<int> best_offsets_;
  int best_ = 0;
  int cap_ = 0;
  int threshold_ = 0;
  bool aborted_ = false;
  bool stop_ = false;
  const std::function<bool(const std::vector<int>&)>* visit_ = nullptr;
};

// Smallest body row count whose total reaches `total`.
int body_threshold(int total, int singles, int n) {
  for (int b = 0; b <= n; ++b)
    if (total_rows(b, singles, n) >= total) return b;
  return n;
}

struct RowCounter {
  int n;
  std::vector<int> count;
  int rows = 0;

  explicit RowCounter(const PositionSet& s) : n(s.n()), count(static_cast<std::size_t>(s.n()), 0) {
    for (Position p : s.cells())
      if (count[p.row]++ == 0) ++rows;
  }

  // Rows after rotating the cells `column_rows` (one column) by v.
  int rows_after(const std::vector<int>& column_rows, int v) const {
    int r = rows;
    for (int row : column_rows)
      if (count[row] == 1) --r;
    // Rows vacated by the column are free for its rotated cells.
    for (int row : column_rows) {
      const int target = mod(row + v, n);
      bool own = false;
      for (int x : column_rows) own |= x == target;
      const int others = count[target] - (own ? 1 : 0);
      if (others == 0) ++r;
    }
    return r;
  }
};

}  // namespace

// ---------------------------------------------------------------------------
// V-optimization

OptimizationReport hill_climb(const PositionSet& s, const ElementaryMove& start) {
  require_mask_size(s.n());
  const int n = s.n();
  std::vector<int> offsets = start.offsets();
  PositionSet cur = apply(start, s);
  bool improved = true;
  while (improved) {
    improved = false;
    RowCounter rc(cur);
    const auto cols = cur.column_rows();
    for (int c = 0; c < n && !improved; ++c) {
      if (cols[c].empty()) continue;
      for (int v = 1; v < n; ++v) {
        if (rc.rows_after(cols[c], v) > rc.rows) {
          offsets[c] = mod(offsets[c] + v, n);
          std::vector<int> single(static_cast<std::size_t>(n), 0);
          single[c] = v;
          cur = apply(ElementaryMove(Axis::V, single), cur);
          improved = true;
          break;
        }
      }
    }
  }
  ElementaryMove move(Axis::V, offsets);
  const int rows = row_count(cur);
  return {std::move(move), std::move(cur), rows, false};
}

OptimizationReport v_optimize(const PositionSet& s, const OptimizeOptions& opts) {
  const ColumnMasks cm = column_masks(s);
  const int n = cm.n;
  BodySearch search(cm, opts.node_budget);
  const auto best = search.best_body_rows();
  if (best) {
    const int total = total_rows(*best, static_cast<int>(cm.singles.size()), n);
    std::optional<ElementaryMove> move;
    // The first co-optimal tuple in lexicographic order is the reported one.
    BodySearch lex(cm, opts.node_budget);
    const bool done = lex.enumerate(body_threshold(total, static_cast<int>(cm.singles.size()), n),
                                    [&](const std::vector<int>& offsets) {
                                      move = assemble_vmove(cm, offsets);
                                      return true;
                                    });
    if (done && move) {
      PositionSet result = apply(*move, s);
      return {std::move(*move), std::move(result), total, true};
    }
  }
  if (!opts.allow_heuristic) throw BudgetExceeded("exact V-optimization exceeded its node budget");
  Rng rng = make_rng(opts.seed);
  OptimizationReport best_report = hill_climb(s, ElementaryMove::zero(Axis::V, n));
  for (int i = 0; i < opts.restarts && best_report.rows < n; ++i) {
    auto r = hill_climb(s, random_move(Axis::V, n, rng));
    if (r.rows > best_report.rows) best_report = std::move(r);
  }
  return best_report;
}

bool is_weakly_v_optimal(const PositionSet& s) {
  const int n = s.n();
  RowCounter rc(s);
  const auto cols = s.column_rows();
  for (int c = 0; c < n; ++c) {
    if (cols[c].empty()) continue;
    for (int v = 1; v < n; ++v)
      if (rc.rows_after(cols[c], v) > rc.rows) return false;
  }
  return true;
}

ColumnStats column_stats(const PositionSet& s, int column) {
  const int n = s.n();
  if (column < 0 || column >= n) throw Error("column out of range");
  const auto cols = s.column_rows();
  const auto& k = cols[column];
  if (k.empty()) throw Error("column stats need an S-column");
  RowCounter rc(s);
  ColumnStats st;
  st.column = column;
  st.s0 = static_cast<int>(k.size());
  for (int row : k)
    if (rc.count[row] == 1) ++st.u0;
  for (int row = 0; row < n; ++row)
    if (rc.count[row] == 0) ++st.f;
  st.f0 = n - st.s0 - st.f;
  for (int v = 0; v < n; ++v) st.deficit_sum += rc.rows - rc.rows_after(k, v);
  const long long lhs1 = static_cast<long long>(st.s0) * st.f;
  const long long rhs1 = static_cast<long long>(n - st.s0) * st.u0;
  const long long lhs2 = static_cast<long long>(st.s0) * st.f0;
  const long long rhs2 = static_cast<long long>(n - st.s0) * (st.s0 - st.u0);
  st.upper_holds = lhs1 <= rhs1;
  st.lower_holds = lhs2 >= rhs2;
  st.identity_holds = rhs1 - lhs1 == st.deficit_sum && lhs2 - rhs2 == st.deficit_sum;
  return st;
}

// ---------------------------------------------------------------------------
// Graph maps

RowsApartResult rows_apart(const PositionSet& s, long long node_budget) {
  const int n = s.n();
  require_mask_size(n);
  if (static_cast<int>(s.size()) != n) throw Error("rows_apart needs an n-set");
  std::vector<Mask> rows(static_cast<std::size_t>(n), 0);
  for (Position p : s.cells()) rows[p.row] |= Mask{1} << p.col;
  std::vector<int> body_rows;
  std::vector<Mask> masks;
  for (int r = 0; r < n; ++r)
    if (popcount(rows[r]) >= 2) {
      body_rows.push_back(r);
      masks.push_back(rows[r]);
    }
  std::vector<int> offsets(static_cast<std::size_t>(n), 0);
  Mask used = 0;
  if (!masks.empty()) {
    const auto fam = ngon::rotate_apart_masks(n, masks, node_budget);
    if (fam.status != ngon::SearchStatus::Found) return {fam.status, std::nullopt};
    for (std::size_t i = 0; i < masks.size(); ++i) {
      offsets[body_rows[i]] = fam.rotations[i];
      used |= rotl(masks[i], fam.rotations[i], n);
    }
  }
  int next = 0;
  for (int r = 0; r < n; ++r) {
    if (popcount(rows[r]) != 1) continue;
    while (used >> next & 1) ++next;
    offsets[r] = next - __builtin_ctzll(rows[r]);
    used |= Mask{1} << next;
  }
  return {ngon::SearchStatus::Found, ElementaryMove(Axis::H, std::move(offsets))};
}

std::optional<MoveSequence> shuffle_to_hgraph(const PositionSet& s, const KeyResultOptions& opts) {
  const int n = s.n();
  if (static_cast<int>(s.size()) != n) throw Error("shuffle_to_hgraph needs an n-set");
  auto finish = [&](const ElementaryMove& v) -> std::optional<MoveSequence> {
    auto h = rows_apart(apply(v, s), opts.node_budget);
    if (h.status != ngon::SearchStatus::Found) return std::nullopt;
    return MoveSequence(n, {v, *h.move});
  };
  if (auto r = finish(ElementaryMove::zero(Axis::V, n))) return r;

  const ColumnMasks cm = column_masks(s);
  BodySearch search(cm, opts.node_budget);
  if (const auto best = search.best_body_rows()) {
    const int singles = static_cast<int>(cm.singles.size());
    const int total = total_rows(*best, singles, n);
    std::optional<MoveSequence> found;
    BodySearch lex(cm, opts.node_budget);
    lex.enumerate(body_threshold(total, singles, n), [&](const std::vector<int>& offsets) {
      found = finish(assemble_vmove(cm, offsets));
      return found.has_value();
    });
    if (found) return found;
  }

  Rng rng = make_rng(opts.seed);
  for (int i = 0; i < opts.restarts; ++i) {
    const ElementaryMove start = i == 0 ? ElementaryMove::zero(Axis::V, n) : random_move(Axis::V, n, rng);
    if (auto r = finish(hill_climb(s, start).move)) return r;
  }
  return std::nullopt;
}

std::optional<MoveSequence> shuffle_to_vgraph(const PositionSet& s, const KeyResultOptions& opts) {
  auto t = shuffle_to_hgraph(s.transpose(), opts);
  if (!t) return std::nullopt;
  return t->transpose();
}

namespace {

std::vector<Position> transpose_cells(const std::vector<Position>& cells) {
  std::vector<Position> out;
  out.reserve(cells.size());
  for (Position p : cells) out.push_back(transposed(p));
  return out;
}

}  // namespace

MoveSequence array_onto_graph(const PositionArray& a, const PositionArray& target, const KeyResultOptions& opts) {
  const int n = a.n();
  if (target.n() != n || static_cast<int>(a.size()) != n || static_cast<int>(target.size()) != n)
    throw Error("array_onto_graph needs two arrays of n positions in the same square");
  const PositionSet target_set = target.as_set();
  if (!is_hgraph(target_set)) {
    if (!is_vgraph(target_set)) throw Error("target is neither an H-graph nor a V-graph");
    const PositionArray at(n, transpose_cells(a.cells()));
    const PositionArray tt(n, transpose_cells(target.cells()));
    return array_onto_graph(at, tt, opts).transpose();
  }
  if (a == target) {
    return MoveSequence(n, {ElementaryMove::zero(Axis::H, n), ElementaryMove::zero(Axis::V, n),
                            ElementaryMove::zero(Axis::H, n), ElementaryMove::zero(Axis::V, n)});
  }
  auto first = shuffle_to_vgraph(a.as_set(), opts);
  if (!first) throw Error("no HV-shuffle maps the array onto a V-graph");
  const PositionArray mid = apply(*first, a);
  std::vector<int> h(static_cast<std::size_t>(n), 0);
  std::vector<int> v(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i) {
    h[mid[i].row] = target[i].col - mid[i].col;
    v[target[i].col] = target[i].row - mid[i].row;
  }
  MoveSequence seq = *first;
  seq.push_back(ElementaryMove(Axis::H, std::move(h)));
  seq.push_back(ElementaryMove(Axis::V, std::move(v)));
  return seq;
}

MoveSequence graph_to_graph_shuffle(const PositionArray& hgraph, const PositionArray& vgraph) {
  const int n = hgraph.n();
  if (vgraph.n() != n || static_cast<int>(hgraph.size()) != n || static_cast<int>(vgraph.size()) != n)
    throw Error("graph pairing needs two n-arrays in the same square");
  if (!is_hgraph(hgraph.as_set())) throw Error("source is not an H-graph");
  if (!is_vgraph(vgraph.as_set())) throw Error("target is not a V-graph");
  std::vector<int> v(static_cast<std::size_t>(n), 0);
  std::vector<int> h(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i) {
    v[hgraph[i].col] = vgraph[i].row - hgraph[i].row;
    h[vgraph[i].row] = vgraph[i].col - hgraph[i].col;
  }
  return MoveSequence(n, {ElementaryMove(Axis::V, std::move(v)), ElementaryMove(Axis::H, std::move(h))});
}

bool h_moves_to_hgraph(const PositionSet& s) {
  const auto r = rows_apart(s);
  if (r.status == ngon::SearchStatus::Unknown) throw BudgetExceeded("rows_apart search exceeded its budget");
  return r.status == ngon::SearchStatus::Found;
}

bool v_moves_to_vgraph(const PositionSet& s) { return h_moves_to_hgraph(s.transpose()); }

}  // namespace equisq::optimize
