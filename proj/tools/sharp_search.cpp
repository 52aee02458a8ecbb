// Searches for n-sets whose certified V-optimum uses exactly minrows(n) rows,
// and for weakly V-optimal sets that are not V-optimal. Prints fixture lines:
//   sharp <n> c r c r ...
//   weak <n> c r c r ...

#include "equisq/optimize.hpp"
#include "equisq/random.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace equisq;
using namespace equisq::optimize;

namespace {

void print(const char* kind, const PositionSet& s) {
  std::cout << kind << ' ' << s.n();
  for (Position p : s.cells()) std::cout << ' ' << p.col << ' ' << p.row;
  std::cout << '\n' << std::flush;
}

int certified_rows(const PositionSet& s) {
  const auto rep = v_optimize(s);
  return rep.certified ? rep.rows : s.n() + 1;
}

// Random placement of the column sizes in parts, one cell per (col, row).
std::vector<std::vector<int>> random_layout(const Partition& parts, int n, Rng& rng) {
  std::vector<std::vector<int>> rows(parts.size());
  for (std::size_t c = 0; c < parts.size(); ++c) {
    std::vector<int> all(static_cast<std::size_t>(n));
    std::iota(all.begin(), all.end(), 0);
    shuffle_in_place(all, rng);
    rows[c].assign(all.begin(), all.begin() + parts[c]);
  }
  return rows;
}

PositionSet to_set(const std::vector<std::vector<int>>& rows, int n) {
  std::vector<Position> out;
  for (std::size_t c = 0; c < rows.size(); ++c)
    for (int r : rows[c]) out.push_back({static_cast<int>(c), r});
  return PositionSet(n, out);
}

std::optional<PositionSet> search_sharp(int n, long long steps, Rng& rng) {
  const MinrowsResult mr = minrows(n);
  if (mr.critical.empty()) return std::nullopt;
  const Partition& parts = mr.critical[uniform_below(rng, mr.critical.size())];
  auto layout = random_layout(parts, n, rng);
  int score = certified_rows(to_set(layout, n));
  for (long long step = 0; step < steps && score > mr.rows; ++step) {
    const auto c = static_cast<std::size_t>(uniform_below(rng, layout.size()));
    const auto i = static_cast<std::size_t>(uniform_below(rng, layout[c].size()));
    const int fresh = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(n)));
    if (std::find(layout[c].begin(), layout[c].end(), fresh) != layout[c].end()) continue;
    const int old = layout[c][i];
    layout[c][i] = fresh;
    const int next = certified_rows(to_set(layout, n));
    if (next <= score) score = next;
    else layout[c][i] = old;
  }
  if (score != mr.rows) return std::nullopt;
  return v_optimize(to_set(layout, n)).result;
}

std::optional<PositionSet> search_weak(int n, long long samples, Rng& rng) {
  for (long long i = 0; i < samples; ++i) {
    const PositionSet s = random_position_set(n, n, rng);
    if (!is_weakly_v_optimal(s)) continue;
    const auto rep = v_optimize(s);
    if (rep.certified && rep.rows > row_count(s)) return s;
  }
  return std::nullopt;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"search for extremal position sets"};
  int low = 8;
  int high = 12;
  int weak_n = 7;
  std::uint64_t seed = 1;
  long long steps = 20000;
  int restarts = 20;
  app.add_option("--from", low)->check(CLI::Range(2, 64));
  app.add_option("--to", high)->check(CLI::Range(2, 64));
  app.add_option("--weak-n", weak_n)->check(CLI::Range(2, 64));
  app.add_option("--seed", seed);
  app.add_option("--steps", steps);
  app.add_option("--restarts", restarts);
  CLI11_PARSE(app, argc, argv);

  Rng rng = make_rng(seed);
  std::cout << "# seed " << seed << '\n';
  for (int n = low; n <= high; ++n) {
    bool found = false;
    for (int attempt = 0; attempt < restarts && !found; ++attempt)
      if (auto s = search_sharp(n, steps, rng)) {
        print("sharp", *s);
        found = true;
      }
    if (!found) std::cout << "# no sharp set found for n = " << n << '\n';
  }
  if (auto w = search_weak(weak_n, 10'000'000, rng)) print("weak", *w);
  else std::cout << "# no weak witness for n = " << weak_n << '\n';
  return 0;
}
