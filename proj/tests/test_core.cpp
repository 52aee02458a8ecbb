#include "doctest.h"
#include "equisq/core.hpp"
#include "equisq/random.hpp"
#include "helpers.hpp"

#include <cmath>
#include <set>

using namespace equisq;
using equisq::testing::cells;

TEST_CASE("moves follow the column/row orientation") {
  const ElementaryMove zero = ElementaryMove::zero(Axis::H, 3);
  CHECK(zero.apply({2, 1}) == Position{2, 1});

  const ElementaryMove h(Axis::H, {1, 0});
  CHECK(h.apply({0, 0}) == Position{1, 0});
  CHECK(h.apply({1, 0}) == Position{0, 0});
  CHECK(h.apply({0, 1}) == Position{0, 1});

  const ElementaryMove v(Axis::V, {0, 1, 2});
  CHECK(v.apply({1, 2}) == Position{1, 0});
  CHECK(v.apply({2, 0}) == Position{2, 2});
}

TEST_CASE("offsets are reduced and lengths are checked") {
  const ElementaryMove m(Axis::V, {-1, 5, 3});
  CHECK(m.offsets() == std::vector<int>{2, 2, 0});
  CHECK_THROWS_AS(MoveSequence(3, {ElementaryMove(Axis::H, {1, 0})}), Error);
  CHECK_THROWS_AS(require_size(1), Error);
}

TEST_CASE("a move followed by its inverse is the identity") {
  Rng rng = make_rng(11);
  for (int n = 2; n <= 7; ++n)
    for (Axis axis : {Axis::H, Axis::V}) {
      const ElementaryMove m = random_move(axis, n, rng);
      std::set<int> images;
      for (int r = 0; r < n * n; ++r) {
        const Position p = position_of(r, n);
        CHECK(m.inverse().apply(m.apply(p)) == p);
        images.insert(rank_of(m.apply(p), n));
      }
      CHECK(images.size() == static_cast<std::size_t>(n * n));
    }
}

TEST_CASE("normalize merges neighbours and keeps the permutation") {
  const int n = 4;
  const ElementaryMove up(Axis::H, {1, 1, 1, 1});
  CHECK(normalize(MoveSequence(n, {up, up.inverse()})).empty());

  const ElementaryMove hv(Axis::V, {1, 0, 0, 0});
  MoveSequence five(n, {up, hv, up, hv, up});
  CHECK(five.half_shuffles() == 5);
  CHECK(format_shuffles(five.half_shuffles()) == "2\xC2\xBD");

  // Three blocks of H...H each nine moves long: 27 - 2 merges = 25.
  MoveSequence blocks(n);
  for (int b = 0; b < 3; ++b) {
    for (int i = 0; i < 4; ++i) {
      blocks.push_back(ElementaryMove(Axis::H, {b + 1, i, 0, 2}));
      blocks.push_back(ElementaryMove(Axis::V, {0, 1, b + 1, i}));
    }
    blocks.push_back(ElementaryMove(Axis::H, {1, 2, 3, b + 1}));
  }
  const MoveSequence merged = normalize(blocks);
  CHECK(merged.half_shuffles() == 25);
  CHECK(format_shuffles(merged.half_shuffles()) == "12\xC2\xBD");
  CHECK(merged.permutation() == blocks.permutation());

  Rng rng = make_rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = 2 + static_cast<int>(uniform_below(rng, 6));
    MoveSequence seq(m);
    const int len = static_cast<int>(uniform_below(rng, 9));
    for (int i = 0; i < len; ++i) {
      const Axis axis = uniform_below(rng, 2) ? Axis::H : Axis::V;
      seq.push_back(uniform_below(rng, 4) == 0 ? ElementaryMove::zero(axis, m) : random_move(axis, m, rng));
    }
    const MoveSequence norm = normalize(seq);
    CHECK(norm.permutation() == seq.permutation());
    for (std::size_t i = 1; i < norm.size(); ++i) CHECK(norm.moves()[i].axis() != norm.moves()[i - 1].axis());
  }
}

TEST_CASE("states keep digit multiplicities under moves") {
  Rng rng = make_rng(3);
  for (int n = 2; n <= 9; ++n) {
    SquareState s = random_state(n, rng);
    for (int i = 0; i < 6; ++i) s = s.apply(random_move(i % 2 ? Axis::V : Axis::H, n, rng));
    for (int d = 0; d < n; ++d) CHECK(s.cells_with(d).size() == static_cast<std::size_t>(n));
  }
}

TEST_CASE("apply on states carries digits with cells") {
  const SquareState s(2, {0, 1, 1, 0});
  const SquareState t = s.apply(ElementaryMove(Axis::H, {1, 0}));
  CHECK(t.digit({1, 0}) == 0);
  CHECK(t.digit({0, 0}) == 1);
  const MoveSequence seq(2, {ElementaryMove(Axis::H, {1, 0}), ElementaryMove(Axis::V, {0, 1})});
  CHECK(s.apply(seq) == s.apply(seq.permutation()));
}

TEST_CASE("square text round trip and errors") {
  const SquareState s = parse_square("0 1\n1 0\n");
  CHECK(s.digit({1, 1}) == 0);
  CHECK(s.digit({0, 1}) == 1);
  CHECK(s.digit({1, 0}) == 1);
  CHECK(s.digit({0, 0}) == 0);
  Rng rng = make_rng(8);
  for (int n = 2; n <= 12; ++n) {
    const SquareState r = random_state(n, rng);
    CHECK(parse_square(format_square(r)) == r);
  }
  CHECK_THROWS_AS(parse_square("0 1 1\n1 0\n"), Error);
  CHECK_THROWS_AS(parse_square("0 0\n0 1\n"), Error);
  CHECK_THROWS_AS(parse_square("0 2\n1 0\n"), Error);
}

TEST_CASE("move files round trip") {
  Rng rng = make_rng(9);
  MoveSequence seq(5);
  for (int i = 0; i < 4; ++i) seq.push_back(random_move(i % 2 ? Axis::V : Axis::H, 5, rng));
  CHECK(parse_moves(format_moves(seq)) == seq);
  CHECK(parse_moves(format_moves(MoveSequence(3))).empty());
  CHECK_THROWS_AS(parse_moves("{\"n\": 2, \"moves\": [{\"axis\": \"D\", \"offsets\": [0, 1]}]}"), Error);
  CHECK_THROWS_AS(parse_moves("[1,2"), Error);
}

TEST_CASE("row profiles") {
  const PositionSet vgraph = cells(3, {{0, 0}, {2, 1}, {1, 2}});
  const RowProfile vp = row_profile(vgraph);
  CHECK(vp.rows == 3);
  CHECK(vp.body_rows == 0);
  CHECK(vp.free_rows == 0);

  const PositionSet six = cells(6, {{0, 0}, {1, 0}, {1, 1}, {2, 1}, {0, 2}, {2, 2}});
  const RowProfile sp = row_profile(six);
  CHECK(sp.rows == 3);
  CHECK(sp.body_rows == 3);
  CHECK(sp.free_rows == 3);
  CHECK(sp.row_unique == 0);

  const RowProfile ep = row_profile(PositionSet(4));
  CHECK(ep.rows == 0);
  CHECK(ep.free_rows == 4);
  CHECK(column_profile(six).rows == 3);
}

TEST_CASE("graph predicates") {
  CHECK(is_hgraph(cells(3, {{0, 1}, {1, 1}, {2, 0}})));
  CHECK_FALSE(is_vgraph(cells(3, {{0, 1}, {1, 1}, {2, 0}})));
  CHECK(is_vgraph(cells(3, {{0, 0}, {0, 1}, {0, 2}})));
  CHECK(row_count(cells(3, {{0, 1}, {1, 1}, {2, 0}})) == 2);
}

TEST_CASE("state counts") {
  CHECK(log2_state_count(2) == doctest::Approx(std::log2(12.0)).epsilon(1e-12));
  CHECK(log2_state_count(8) == doctest::Approx(188.900).epsilon(0.001 / 188.9));
  CHECK(log2_ryser_bound(16) == doctest::Approx(392.004).epsilon(0.001 / 392.0));
  CHECK(shuffle_lower_bound(2) == 1);
  CHECK(shuffle_lower_bound(30) == 16);
  CHECK(shuffle_lower_bound(16) == 8);
  for (int n = 3; n <= 99; n += 2) CHECK(shuffle_lower_bound(n) == (n + 1) / 2);
  for (int n = 30; n <= 100; n += 2) CHECK(shuffle_lower_bound(n) == 1 + n / 2);
}

TEST_CASE("average shuffles") {
  CHECK(avg_shuffles_exact(2) == std::pair<std::string, std::string>{"4", "3"});
  CHECK(avg_shuffles_exact(3) == std::pair<std::string, std::string>{"81", "56"});
  CHECK(avg_shuffles(3) == doctest::Approx(729.0 / 504.0).epsilon(1e-12));
  CHECK(avg_shuffles(50000) == doctest::Approx(1.64871).epsilon(1e-5));
  CHECK(avg_shuffles(50000) < std::sqrt(std::exp(1.0)));
  double prev = 1.0;
  for (int n = 2; n <= 2000; ++n) {
    const double v = avg_shuffles(n);
    CHECK(v > prev);
    prev = v;
  }
}

TEST_CASE("permutation helpers") {
  const Permutation p{1, 2, 0, 3};
  CHECK(compose(p, inverse(p)) == identity_permutation(4));
  CHECK(permutation_sign(p) == 1);
  CHECK(permutation_sign({1, 0, 2}) == -1);
}
