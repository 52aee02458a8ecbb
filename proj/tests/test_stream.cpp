#include "doctest.h"
#include "equisq/stream.hpp"
#include "helpers.hpp"

using namespace equisq;
using namespace equisq::stream;

namespace {

// digit(c, r) = r
SquareState row_index_state(int n) {
  std::vector<int> digits(static_cast<std::size_t>(n) * n);
  for (int r = 0; r < n * n; ++r) digits[r] = r / n;
  return SquareState(n, digits);
}

MoveSequence zero_schedule(int n, int steps) {
  MoveSequence m(n);
  for (int i = 0; i < 2 * steps; ++i) {
    m.push_back(ElementaryMove::zero(Axis::H, n));
    m.push_back(ElementaryMove::zero(Axis::V, n));
  }
  return m;
}

}  // namespace

TEST_CASE("base-n numbers") {
  const BaseNNumber x = BaseNNumber::from_value(3, 5);
  CHECK(x.digits() == std::vector<int>{2, 1, 0});
  CHECK(x.to_decimal() == "5");
  CHECK(x.to_digit_string() == "012");
  CHECK(BaseNNumber::parse(3, "012", true) == x);
  CHECK(BaseNNumber::parse(3, " 5\n", false) == x);
  CHECK(BaseNNumber::parse(16, "00000000000000ff", true).value() == 255);
  CHECK_THROWS_AS(BaseNNumber::from_value(3, 27), Error);
  CHECK_THROWS_AS(BaseNNumber::parse(3, "0123", true), Error);
  CHECK_THROWS_AS(BaseNNumber::parse(3, "013", true), Error);
  CHECK_THROWS_AS(BaseNNumber::parse(3, "-1", false), Error);
  const BaseNNumber big = BaseNNumber::from_value(20, power(BigInt(20), 20) - 1);
  for (int d : big.digits()) CHECK(d == 19);
}

TEST_CASE("indirection reads the addressed cells") {
  const SquareState id = row_index_state(5);
  Rng rng = make_rng(1);
  for (int i = 0; i < 20; ++i) {
    const BaseNNumber x = random_number(5, rng);
    CHECK(h_indirect(id, x) == x);
    CHECK(is_hgraph(indirection_graph(x).as_set()));
  }
  // digits (0,0)=0, (1,0)=1, (0,1)=1, (1,1)=0
  const SquareState s(2, {0, 1, 1, 0});
  const BaseNNumber x(2, {1, 0});
  CHECK(x.value() == 1);
  CHECK(h_indirect(s, x).value() == 3);
  CHECK(v_indirect(s, x).digits() == std::vector<int>{s.digit({1, 0}), s.digit({0, 1})});
}

TEST_CASE("indirection is local") {
  Rng rng = make_rng(2);
  const SquareState s = random_state(6, rng);
  const BaseNNumber x = random_number(6, rng);
  const BaseNNumber y = h_indirect(s, x);
  // Swap two cells off the read graph; the output is unchanged.
  const PositionSet graph = indirection_graph(x).as_set();
  std::vector<int> digits = s.digits();
  int a = -1;
  int b = -1;
  for (int r = 0; r < 36 && b < 0; ++r) {
    if (graph.contains(position_of(r, 6))) continue;
    if (a < 0) a = r;
    else if (digits[r] != digits[a]) b = r;
  }
  std::swap(digits[a], digits[b]);
  CHECK(h_indirect(SquareState(6, digits), x) == y);
}

TEST_CASE("standard mode") {
  const int n = 4;
  const SquareState id = row_index_state(n);
  Rng rng = make_rng(3);
  std::vector<BaseNNumber> inputs;
  for (int i = 0; i < 5; ++i) inputs.push_back(random_number(n, rng));

  ShuffleSource zeros = ShuffleSource::schedule(zero_schedule(n, 5));
  const RunResult plain = standard_mode_run(id, inputs, zeros);
  CHECK(plain.outputs == inputs);
  CHECK(zeros.exhausted());
  CHECK_THROWS_AS(zeros.next_step(), Error);

  ShuffleSource a = ShuffleSource::seeded(n, 77);
  ShuffleSource b = ShuffleSource::seeded(n, 77);
  const RunResult ra = standard_mode_run(id, inputs, a);
  const RunResult rb = standard_mode_run(id, inputs, b);
  CHECK(ra.outputs == rb.outputs);
  CHECK(ra.final_state == rb.final_state);
  for (int d = 0; d < n; ++d) CHECK(ra.final_state.cells_with(d).size() == static_cast<std::size_t>(n));
  for (const auto& y : ra.outputs) CHECK(y.value() < power(BigInt(n), n));

  CHECK_THROWS_AS(ShuffleSource::schedule(MoveSequence(n, {ElementaryMove::zero(Axis::V, n)})), Error);
}

TEST_CASE("forcing") {
  Rng rng = make_rng(4);
  for (int n : {2, 3, 5, 8, 11, 16}) {
    const SquareState s = random_state(n, rng);
    for (int trial = 0; trial < 10; ++trial) {
      const BaseNNumber x = random_number(n, rng);
      const BaseNNumber y = random_number(n, rng);
      const MoveSequence m = force_shuffles(s, x, y);
      CHECK(m.size() == 4);
      CHECK(h_indirect(s.apply(m), x) == y);
    }
    const BaseNNumber x = random_number(n, rng);
    const MoveSequence same = force_shuffles(s, x, h_indirect(s, x));
    CHECK(h_indirect(s.apply(same), x) == h_indirect(s, x));
    const BaseNNumber all_d(n, std::vector<int>(static_cast<std::size_t>(n), n - 1));
    CHECK(h_indirect(s.apply(force_shuffles(s, x, all_d)), x) == all_d);
  }
}

TEST_CASE("force_run round trip") {
  Rng rng = make_rng(5);
  for (int n : {5, 8}) {
    const SquareState s = random_state(n, rng);
    std::vector<BaseNNumber> inputs;
    std::vector<BaseNNumber> targets;
    for (int i = 0; i < 8; ++i) {
      inputs.push_back(random_number(n, rng));
      targets.push_back(random_number(n, rng));
    }
    const MoveSequence schedule = force_run(s, inputs, targets);
    CHECK(schedule.size() == 32);
    ShuffleSource src = ShuffleSource::schedule(schedule);
    CHECK(standard_mode_run(s, inputs, src).outputs == targets);

    const MoveSequence one = force_run(s, {inputs[0]}, {targets[0]});
    CHECK(one == force_shuffles(s, inputs[0], targets[0]));
  }
  CHECK_THROWS_AS(force_run(random_state(3, rng), {random_number(3, rng)}, {}), Error);
}

TEST_CASE("bias") {
  const Bias b2 = bias(2);
  CHECK(b2.expected_colors == BigRational(5, 3));
  CHECK(to_fixed(b2.expected_colors, 2) == "1.67");
  CHECK(to_fixed(b2.missing_colors, 2) == "0.33");
  CHECK(to_fixed(bias(10).missing_digits, 2) == "3.49");
  for (int n = 2; n <= 33; ++n) {
    const Bias b = bias(n);
    CHECK(b.expected_colors + b.missing_colors == BigRational(n));
    CHECK(b.missing_colors < b.missing_digits);
    // One color is absent with probability C(n^2 - n, n) / C(n^2, n).
    CHECK(b.missing_colors == BigRational(BigInt(n) * binomial(n * n - n, n), binomial(n * n, n)));
  }
}

TEST_CASE("array indirection allows repeated cells") {
  Rng rng = make_rng(6);
  const SquareState s = random_state(5, rng);
  const BaseNNumber cols(5, {1, 1, 1, 1, 1});
  const BaseNNumber rows(5, {2, 2, 2, 2, 2});
  const BaseNNumber read = array_indirect(s, cols, rows);
  for (int d : read.digits()) CHECK(d == s.digit({1, 2}));
  const BaseNNumber x = random_number(5, rng);
  CHECK(array_indirect(s, BaseNNumber(5, {0, 1, 2, 3, 4}), x) == h_indirect(s, x));
}

TEST_CASE("colorful line") {
  Rng rng = make_rng(7);
  for (int n = 2; n <= 10; ++n) CHECK(has_colorful_line(random_state(n, rng)));
  CHECK(has_colorful_line(row_index_state(4)));
}
