#include "doctest.h"
#include "equisq/flows.hpp"
#include "equisq/transit.hpp"
#include "helpers.hpp"

#include <numeric>

using namespace equisq;
using namespace equisq::transit;

namespace {

Permutation three_cycle(int cells, int a, int b, int c) {
  Permutation p = identity_permutation(cells);
  p[a] = b;
  p[b] = c;
  p[c] = a;
  return p;
}

}  // namespace

TEST_CASE("representations") {
  Rng rng = make_rng(21);
  const SquareState p = random_state(5, rng);
  CHECK(is_representation(p, p, identity_permutation(25)));
  const auto zeros = p.cells_with(0);
  Permutation swap = identity_permutation(25);
  std::swap(swap[rank_of(zeros[0], 5)], swap[rank_of(zeros[1], 5)]);
  CHECK(is_representation(p, p, swap));

  MoveSequence seq(5, {random_move(Axis::H, 5, rng), random_move(Axis::V, 5, rng)});
  const SquareState q = p.apply(seq);
  CHECK(is_representation(p, q, seq.permutation()));
  CHECK(is_representation(p, q, color_matching_representation(p, q)));
  CHECK(p.apply(color_matching_representation(p, q)) == q);
}

TEST_CASE("three-cycle gadget") {
  CHECK(three_cycle_moves(0, 1, 3).permutation() == three_cycle(9, 0, 1, 3));
  CHECK(three_cycle_moves(2, 3, 5).permutation() == three_cycle(25, 0, 1, 17));
  CHECK(three_cycle_moves(2, 3, 5).half_shuffles() == 5);
  for (int n = 3; n <= 7; ++n)
    for (int r = 1; r < n; ++r)
      for (int k = 0; k < n; ++k)
        CHECK(three_cycle_moves(k, r, n).permutation() == three_cycle(n * n, 0, 1, k + n * r));
  CHECK_THROWS_AS(three_cycle_moves(1, 0, 4), Error);
}

TEST_CASE("long cycle and its powers") {
  const MoveSequence l2 = long_cycle_move(2);
  CHECK(l2.apply({0, 0}) == Position{1, 0});
  CHECK(l2.apply({1, 0}) == Position{0, 1});
  CHECK(l2.apply({0, 1}) == Position{1, 1});
  CHECK(l2.apply({1, 1}) == Position{0, 0});
  for (int n = 2; n <= 7; ++n) {
    const int cells = n * n;
    for (int j = -cells; j <= 2 * cells; ++j) {
      const MoveSequence lj = long_cycle_power(n, j);
      CHECK(lj.size() <= 2);
      for (int r = 0; r < cells; ++r) CHECK(rank_of(lj.apply(position_of(r, n)), n) == mod(r + j, cells));
    }
    MoveSequence all(n);
    for (int i = 0; i < cells; ++i) all.append(long_cycle_move(n));
    CHECK(all.permutation() == identity_permutation(cells));
  }
}

TEST_CASE("odd n: every shuffle is an even permutation") {
  Rng rng = make_rng(4);
  for (int n : {3, 5, 7})
    for (int trial = 0; trial < 30; ++trial) {
      const MoveSequence hv(n, {random_move(Axis::H, n, rng), random_move(Axis::V, n, rng)});
      CHECK(permutation_sign(hv.permutation()) == 1);
    }
}

TEST_CASE("carrier decomposition identity") {
  Rng rng = make_rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    const int size = 1 + static_cast<int>(uniform_below(rng, 50));
    Permutation f = identity_permutation(size);
    shuffle_in_place(f, rng);
    std::vector<int> domain(static_cast<std::size_t>(size));
    std::iota(domain.begin(), domain.end(), 0);
    const auto d = carrier_decomposition(f, domain);
    const Permutation last = inverse(cycle_permutation(size, d.last_points));
    CHECK(compose(last, cycle_permutation(size, d.carrier)) == f);
    for (std::size_t i = 0; i < d.cycles.size(); ++i) {
      CHECK(d.cycles[i].size() >= 2);
      CHECK(d.cycles[i].back() == d.last_points[i]);
      CHECK(*std::min_element(d.cycles[i].begin(), d.cycles[i].end()) == d.last_points[i]);
    }
  }
}

TEST_CASE("naive compiler, exhaustive at n = 2") {
  const auto states = equisq::testing::all_states(2);
  REQUIRE(states.size() == 6);
  // Digit relabelings give the 12 counted states; transitions only see digits.
  int pairs = 0;
  for (const auto& p : states)
    for (const auto& q : states) {
      const MoveSequence seq = naive_compile(p, q);
      CHECK(p.apply(seq) == q);
      CHECK(seq.half_shuffles() <= naive_half_shuffle_bound(2));
      if (p == q) CHECK(seq.empty());
      ++pairs;
    }
  CHECK(pairs == 36);
}

TEST_CASE("naive compiler on random pairs") {
  Rng rng = make_rng(99);
  for (int n = 3; n <= 8; ++n)
    for (int trial = 0; trial < 10; ++trial) {
      const SquareState p = random_state(n, rng);
      const SquareState q = random_state(n, rng);
      const MoveSequence seq = naive_compile(p, q);
      CHECK(p.apply(seq) == q);
      CHECK(seq.half_shuffles() <= naive_half_shuffle_bound(n));
    }
}

TEST_CASE("bounded compiler") {
  Rng rng = make_rng(123);
  for (int n = 2; n <= 9; ++n)
    for (int trial = 0; trial < 8; ++trial) {
      const SquareState p = random_state(n, rng);
      const SquareState q = random_state(n, rng);
      const MoveSequence seq = bounded_compile(p, q);
      CHECK(p.apply(seq) == q);
      CHECK(seq.half_shuffles() <= 2 * bounded_shuffle_budget(n));
    }
  const SquareState p = random_state(6, rng);
  CHECK(bounded_compile(p, p).empty());
  CHECK(bounded_shuffle_budget(16) == 93);
  CHECK(bounded_shuffle_budget(9) == 57);
  CHECK(shuffle_distance_floor(16) == 8);
  CHECK(shuffle_distance_floor(30) == 16);
}

TEST_CASE("bounded compiler regression: rotation directions") {
  // Pins the rotation shifts; a flipped direction fails the exact-target check.
  Rng rng = make_rng(2024);
  for (int n : {4, 5}) {
    const SquareState p = random_state(n, rng);
    const SquareState q = random_state(n, rng);
    CHECK(p.apply(bounded_compile(p, q)) == q);
  }
}

TEST_CASE("bounded compiler, small-n economization") {
  Rng rng = make_rng(77);
  for (int n = 2; n <= 7; ++n) {
    long long plain_total = 0;
    long long short_total = 0;
    for (int trial = 0; trial < 20; ++trial) {
      const SquareState p = random_state(n, rng);
      const SquareState q = random_state(n, rng);
      const MoveSequence plain = bounded_compile(p, q);
      const MoveSequence economized = bounded_compile(p, q, {}, true);
      CHECK(p.apply(economized) == q);
      CHECK(economized.half_shuffles() <= 2 * bounded_shuffle_budget(n));
      plain_total += plain.half_shuffles();
      short_total += economized.half_shuffles();
      if (n > 5) CHECK(economized == plain);
    }
    if (n == 4 || n == 5) CHECK(short_total < plain_total);
  }
}
