#include "equisq/flows.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <sstream>

namespace equisq::flows {

namespace {

using CellMask = std::uint64_t;

// All latin H-graphs of the state as cell masks (rank bits).
std::vector<CellMask> latin_hgraphs(const SquareState& s) {
  const int n = s.n();
  std::vector<CellMask> out;
  std::vector<char> color_used(static_cast<std::size_t>(n), 0);
  auto rec = [&](auto&& self, int col, CellMask acc) -> void {
    if (col == n) {
      out.push_back(acc);
      return;
    }
    for (int row = 0; row < n; ++row) {
      const int d = s.digit({col, row});
      if (color_used[d]) continue;
      color_used[d] = 1;
      self(self, col + 1, acc | CellMask{1} << rank_of({col, row}, n));
      color_used[d] = 0;
    }
  };
  rec(rec, 0, 0);
  return out;
}

// Exact cover of all n^2 cells by n masks from `options`; `on_cover` decides
// whether to stop. Returns false if the budget ran out.
class CoverSearch {
 public:
  CoverSearch(int cells, const std::vector<CellMask>& options, long long& nodes, long long budget)
      : cells_(cells), options_(options), nodes_(nodes), budget_(budget), by_cell_(static_cast<std::size_t>(cells)) {
    for (std::size_t i = 0; i < options.size(); ++i)
      for (int c = 0; c < cells; ++c)
        if (options[i] >> c & 1) by_cell_[c].push_back(static_cast<int>(i));
  }

  bool run(const std::function<bool(const std::vector<int>&)>& on_cover) {
    on_cover_ = &on_cover;
    stop_ = false;
    aborted_ = false;
    chosen_.clear();
    rec(0);
    return !aborted_;
  }

  bool stopped() const { return stop_; }

 private:
  void rec(CellMask used) {
    const CellMask full = cells_ == 64 ? ~CellMask{0} : ((CellMask{1} << cells_) - 1);
    if (used == full) {
      stop_ = (*on_cover_)(chosen_);
      return;
    }
    const int cell = __builtin_ctzll(~used);
    for (int i : by_cell_[cell]) {
      if (++nodes_ > budget_) {
        aborted_ = true;
        return;
      }
      if (options_[i] & used) continue;
      chosen_.push_back(i);
      rec(used | options_[i]);
      chosen_.pop_back();
      if (stop_ || aborted_) return;
    }
  }

  int cells_;
  const std::vector<CellMask>& options_;
  long long& nodes_;
  long long budget_;
  std::vector<std::vector<int>> by_cell_;
  std::vector<int> chosen_;
  const std::function<bool(const std::vector<int>&)>* on_cover_ = nullptr;
  bool stop_ = false;
  bool aborted_ = false;
};

}  // namespace

WavyResult wavy_latin(const SquareState& state, long long node_budget) {
  const int n = state.n();
  if (n > 8) throw Error("wavy-latin search supports n <= 8");
  const int cells = n * n;
  WavyResult res;
  long long nodes = 0;
  const auto hgraphs = latin_hgraphs(state);
  const auto vgraphs_t = latin_hgraphs(state.transpose());
  // V-graphs of the state are H-graphs of the transpose; map masks back.
  std::vector<CellMask> vgraphs;
  for (CellMask m : vgraphs_t) {
    CellMask back = 0;
    for (int r = 0; r < cells; ++r)
      if (m >> r & 1) back |= CellMask{1} << rank_of(transposed(position_of(r, n)), n);
    vgraphs.push_back(back);
  }

  bool budget_ok = true;
  CoverSearch hsearch(cells, hgraphs, nodes, node_budget);
  const bool hdone = hsearch.run([&](const std::vector<int>& hchoice) {
    std::vector<int> label(static_cast<std::size_t>(cells), -1);
    for (std::size_t g = 0; g < hchoice.size(); ++g)
      for (int c = 0; c < cells; ++c)
        if (hgraphs[hchoice[g]] >> c & 1) label[c] = static_cast<int>(g);
    // V-graphs meeting every H-graph once.
    std::vector<CellMask> compatible;
    for (CellMask m : vgraphs) {
      int seen = 0;
      bool ok = true;
      for (int c = 0; c < cells && ok; ++c) {
        if (!(m >> c & 1)) continue;
        const int bit = 1 << label[c];
        ok = !(seen & bit);
        seen |= bit;
      }
      if (ok) compatible.push_back(m);
    }
    CoverSearch vsearch(cells, compatible, nodes, node_budget);
    bool found = false;
    const bool vdone = vsearch.run([&](const std::vector<int>& vchoice) {
      res.hgraph_of = label;
      res.vgraph_of.assign(static_cast<std::size_t>(cells), -1);
      for (std::size_t g = 0; g < vchoice.size(); ++g)
        for (int c = 0; c < cells; ++c)
          if (compatible[vchoice[g]] >> c & 1) res.vgraph_of[c] = static_cast<int>(g);
      found = true;
      return true;
    });
    if (!vdone) budget_ok = false;
    return found || !vdone;
  });
  if (!hdone || !budget_ok) {
    res.status = ngon::SearchStatus::Unknown;
    res.hgraph_of.clear();
    res.vgraph_of.clear();
  } else {
    res.status = hsearch.stopped() ? ngon::SearchStatus::Found : ngon::SearchStatus::None;
  }
  return res;
}

// ---------------------------------------------------------------------------
// Types

namespace {

// Relabels digits in order of first occurrence (by rank).
void relabel_first_occurrence(std::vector<int>& digits, int n) {
  std::vector<int> map(static_cast<std::size_t>(n), -1);
  int next = 0;
  for (int& d : digits) {
    if (map[d] < 0) map[d] = next++;
    d = map[d];
  }
}

}  // namespace

std::vector<int> canonical_type(const SquareState& state) {
  const int n = state.n();
  if (n > 6) throw Error("canonical types are computed for n <= 6");
  std::vector<int> best;
  std::vector<int> rows(static_cast<std::size_t>(n));
  std::vector<int> cols(static_cast<std::size_t>(n));
  std::vector<int> grid(static_cast<std::size_t>(n) * n);
  for (int t = 0; t < 2; ++t) {
    const SquareState base = t ? state.transpose() : state;
    std::iota(rows.begin(), rows.end(), 0);
    do {
      std::iota(cols.begin(), cols.end(), 0);
      do {
        for (int r = 0; r < n; ++r)
          for (int c = 0; c < n; ++c) grid[c + n * r] = base.digit({cols[c], rows[r]});
        relabel_first_occurrence(grid, n);
        if (best.empty() || grid < best) best = grid;
      } while (std::next_permutation(cols.begin(), cols.end()));
    } while (std::next_permutation(rows.begin(), rows.end()));
  }
  return best;
}

namespace {

// Lexicographic rank among arrangements of n copies of each of n digits.
class MultisetRanker {
 public:
  explicit MultisetRanker(int n) : n_(n), base_(n + 1) {
    int states = 1;
    for (int i = 0; i < n; ++i) states *= base_;
    table_.assign(static_cast<std::size_t>(states), 0);
    std::vector<int> c(static_cast<std::size_t>(n));
    for (int code = 0; code < states; ++code) {
      int x = code;
      int total = 0;
      for (int d = 0; d < n; ++d) {
        c[d] = x % base_;
        x /= base_;
        total += c[d];
      }
      // multinomial(total; c) built up digit by digit as a product of binomials
      std::uint64_t m = 1;
      int acc = 0;
      for (int d = 0; d < n; ++d) {
        for (int j = 1; j <= c[d]; ++j) m = m * static_cast<std::uint64_t>(acc + j) / static_cast<std::uint64_t>(j);
        acc += c[d];
      }
      table_[code] = m;
    }
    full_code_ = 0;
    int w = 1;
    for (int d = 0; d < n; ++d) {
      full_code_ += n * w;
      weight_.push_back(w);
      w *= base_;
    }
  }

  std::uint64_t total() const { return table_[full_code_]; }

  std::uint64_t rank(const int* digits) const {
    int code = full_code_;
    std::uint64_t r = 0;
    const int cells = n_ * n_;
    for (int i = 0; i < cells; ++i) {
      const int a = digits[i];
      for (int d = 0; d < a; ++d) {
        if ((code / weight_[d]) % base_ == 0) continue;
        r += table_[code - weight_[d]];
      }
      code -= weight_[a];
    }
    return r;
  }

 private:
  int n_;
  int base_;
  std::vector<std::uint64_t> table_;
  std::vector<int> weight_;
  int full_code_ = 0;
};

class OrbitMarker {
 public:
  explicit OrbitMarker(int n) : n_(n), ranker_(n), seen_((ranker_.total() + 63) / 64, 0) {
    std::vector<int> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    do perms_.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
  }

  const MultisetRanker& ranker() const { return ranker_; }
  bool seen(std::uint64_t r) const { return seen_[r >> 6] >> (r & 63) & 1; }

  // Marks every image of the arrangement under the symmetry group.
  void mark(const std::vector<int>& digits) {
    const int n = n_;
    std::vector<int> grid(digits.size());
    std::vector<int> img(digits.size());
    for (int t = 0; t < 2; ++t) {
      for (const auto& rp : perms_) {
        for (const auto& cp : perms_) {
          for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) {
              const int sr = t ? cp[c] : rp[r];
              const int sc = t ? rp[r] : cp[c];
              grid[c + n * r] = digits[sc + n * sr];
            }
          for (const auto& sigma : perms_) {
            for (std::size_t i = 0; i < grid.size(); ++i) img[i] = sigma[grid[i]];
            const std::uint64_t r = ranker_.rank(img.data());
            seen_[r >> 6] |= std::uint64_t{1} << (r & 63);
          }
        }
      }
    }
  }

 private:
  int n_;
  MultisetRanker ranker_;
  std::vector<std::uint64_t> seen_;
  std::vector<std::vector<int>> perms_;
};

std::string header_line(int n) { return "# equisq wavy census n=" + std::to_string(n); }

}  // namespace

CensusResult wavy_census(int n, const std::string& checkpoint_path,
                         const std::function<void(long long, long long)>& progress) {
  require_size(n);
  if (n > 4) throw Error("the type census enumerates all states and supports n <= 4");
  CensusResult res;
  res.n = n;
  OrbitMarker marker(n);
  res.states = static_cast<long long>(marker.ranker().total());
  const int cells = n * n;

  auto record = [&](const std::vector<int>& form, bool wavy) {
    ++res.types;
    if (!wavy) {
      ++res.non_wavy;
      res.non_wavy_types.push_back(form);
    }
  };

  std::ofstream out;
  if (!checkpoint_path.empty()) {
    std::ifstream in(checkpoint_path);
    bool has_header = false;
    if (in) {
      std::string line;
      while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
          if (line != header_line(n)) throw Error("checkpoint belongs to a different census: " + line);
          has_header = true;
          continue;
        }
        std::istringstream ls(line);
        std::string digits;
        int flag = -1;
        if (!(ls >> digits >> flag) || static_cast<int>(digits.size()) != cells || (flag != 0 && flag != 1))
          throw Error("malformed checkpoint record: " + line);
        std::vector<int> form;
        for (char ch : digits) form.push_back(ch - '0');
        marker.mark(form);
        record(form, flag == 1);
      }
    }
    out.open(checkpoint_path, std::ios::app);
    if (!out) throw Error("cannot open checkpoint file " + checkpoint_path);
    if (!has_header) out << header_line(n) << '\n' << std::flush;
  }

  std::vector<int> digits;
  for (int d = 0; d < n; ++d)
    for (int i = 0; i < n; ++i) digits.push_back(d);
  long long index = 0;
  do {
    if (!marker.seen(static_cast<std::uint64_t>(index))) {
      const SquareState state(n, digits);
      const auto form = canonical_type(state);
      const auto w = wavy_latin(state);
      if (w.status == ngon::SearchStatus::Unknown) throw Error("wavy-latin search ran out of budget during census");
      const bool wavy = w.status == ngon::SearchStatus::Found;
      marker.mark(digits);
      record(form, wavy);
      if (out.is_open()) {
        for (int d : form) out << d;
        out << ' ' << (wavy ? 1 : 0) << '\n' << std::flush;
      }
    }
    ++index;
    if (progress && (index & 0xFFFFF) == 0) progress(index, res.states);
  } while (std::next_permutation(digits.begin(), digits.end()));
  if (progress) progress(res.states, res.states);
  return res;
}

}  // namespace equisq::flows
