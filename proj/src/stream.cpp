#include "equisq/stream.hpp"

#include <algorithm>
#include <cctype>

namespace equisq::stream {

BaseNNumber::BaseNNumber(int n, std::vector<int> digits) : n_(n), digits_(std::move(digits)) {
  require_size(n);
  if (static_cast<int>(digits_.size()) != n) throw Error("a base-n number has exactly n digits");
  for (int d : digits_)
    if (d < 0 || d >= n) throw Error("digit out of range");
}

BaseNNumber BaseNNumber::from_value(int n, const BigInt& value) {
  require_size(n);
  if (value < 0 || value >= power(BigInt(n), static_cast<unsigned>(n))) throw Error("value must lie in [0, n^n)");
  std::vector<int> digits(static_cast<std::size_t>(n));
  BigInt rest = value;
  for (int k = 0; k < n; ++k) {
    digits[k] = static_cast<int>(rest % n);
    rest /= n;
  }
  return BaseNNumber(n, std::move(digits));
}

BaseNNumber BaseNNumber::parse(int n, std::string_view text, bool digits) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  if (text.empty()) throw Error("empty number");
  if (!digits) {
    for (char ch : text)
      if (!std::isdigit(static_cast<unsigned char>(ch))) throw Error("not a decimal integer: " + std::string(text));
    return from_value(n, BigInt(std::string(text)));
  }
  if (n > 36) throw Error("digit strings need n <= 36");
  if (static_cast<int>(text.size()) != n) throw Error("digit string must have exactly n digits");
  std::vector<int> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const char ch = static_cast<char>(std::tolower(static_cast<unsigned char>(text[i])));
    int d = -1;
    if (ch >= '0' && ch <= '9') d = ch - '0';
    if (ch >= 'a' && ch <= 'z') d = ch - 'a' + 10;
    if (d < 0 || d >= n) throw Error("bad digit in " + std::string(text));
    out[n - 1 - i] = d;
  }
  return BaseNNumber(n, std::move(out));
}

BigInt BaseNNumber::value() const {
  BigInt v = 0;
  for (int k = n_ - 1; k >= 0; --k) v = v * n_ + digits_[k];
  return v;
}

std::string BaseNNumber::to_decimal() const { return value().str(); }

std::string BaseNNumber::to_digit_string() const {
  if (n_ > 36) throw Error("digit strings need n <= 36");
  static constexpr char kSymbols[] = "0123456789abcdefghijklmnopqrstuvwxyz";
  std::string s;
  for (int k = n_ - 1; k >= 0; --k) s.push_back(kSymbols[digits_[k]]);
  return s;
}

BaseNNumber random_number(int n, Rng& rng) {
  std::vector<int> digits(static_cast<std::size_t>(n));
  for (int& d : digits) d = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(n)));
  return BaseNNumber(n, std::move(digits));
}

namespace {
void require_same_size(const SquareState& state, const BaseNNumber& x) {
  if (state.n() != x.n()) throw Error("number and square differ in n");
}
}  // namespace

BaseNNumber h_indirect(const SquareState& state, const BaseNNumber& x) {
  require_same_size(state, x);
  std::vector<int> y(static_cast<std::size_t>(x.n()));
  for (int k = 0; k < x.n(); ++k) y[k] = state.digit({k, x.digit(k)});
  return BaseNNumber(x.n(), std::move(y));
}

BaseNNumber v_indirect(const SquareState& state, const BaseNNumber& x) {
  require_same_size(state, x);
  std::vector<int> y(static_cast<std::size_t>(x.n()));
  for (int k = 0; k < x.n(); ++k) y[k] = state.digit({x.digit(k), k});
  return BaseNNumber(x.n(), std::move(y));
}

BaseNNumber array_indirect(const SquareState& state, const BaseNNumber& cols, const BaseNNumber& rows) {
  require_same_size(state, cols);
  require_same_size(state, rows);
  std::vector<int> y(static_cast<std::size_t>(cols.n()));
  for (int k = 0; k < cols.n(); ++k) y[k] = state.digit({cols.digit(k), rows.digit(k)});
  return BaseNNumber(cols.n(), std::move(y));
}

PositionArray indirection_graph(const BaseNNumber& x) {
  std::vector<Position> cells;
  for (int k = 0; k < x.n(); ++k) cells.push_back({k, x.digit(k)});
  return PositionArray(x.n(), std::move(cells));
}

// ---------------------------------------------------------------------------

ShuffleSource::ShuffleSource(int n, Rng rng, bool from_schedule, MoveSequence moves)
    : n_(n), rng_(std::move(rng)), from_schedule_(from_schedule), moves_(std::move(moves)) {}

ShuffleSource ShuffleSource::seeded(int n, std::uint64_t seed) {
  require_size(n);
  return ShuffleSource(n, make_rng(seed), false, MoveSequence(n));
}

ShuffleSource ShuffleSource::schedule(MoveSequence moves) {
  if (moves.size() % 4 != 0) throw Error("a schedule holds four moves per step");
  for (std::size_t i = 0; i < moves.size(); ++i)
    if (moves.moves()[i].axis() != (i % 2 == 0 ? Axis::H : Axis::V))
      throw Error("schedule moves must alternate H, V starting with H");
  const int n = moves.n();
  return ShuffleSource(n, Rng{}, true, std::move(moves));
}

bool ShuffleSource::exhausted() const { return from_schedule_ && cursor_ >= moves_.size(); }

MoveSequence ShuffleSource::next_step() {
  MoveSequence step(n_);
  if (from_schedule_) {
    if (cursor_ + 4 > moves_.size()) throw Error("shuffle schedule exhausted");
    for (int i = 0; i < 4; ++i) step.push_back(moves_.moves()[cursor_++]);
    return step;
  }
  for (int i = 0; i < 2; ++i) {
    step.push_back(random_move(Axis::H, n_, rng_));
    step.push_back(random_move(Axis::V, n_, rng_));
  }
  return step;
}

RunResult standard_mode_run(const SquareState& state, const std::vector<BaseNNumber>& inputs, ShuffleSource& src) {
  RunResult res{{}, state};
  for (const auto& x : inputs) {
    res.final_state = res.final_state.apply(src.next_step());
    res.outputs.push_back(h_indirect(res.final_state, x));
  }
  return res;
}

MoveSequence force_shuffles(const SquareState& state, const BaseNNumber& x, const BaseNNumber& y,
                            const optimize::KeyResultOptions& opts) {
  require_same_size(state, x);
  require_same_size(state, y);
  const int n = state.n();
  if (h_indirect(state, x) == y) {
    return MoveSequence(n, {ElementaryMove::zero(Axis::H, n), ElementaryMove::zero(Axis::V, n),
                            ElementaryMove::zero(Axis::H, n), ElementaryMove::zero(Axis::V, n)});
  }
  std::vector<std::vector<Position>> pool(static_cast<std::size_t>(n));
  std::vector<std::size_t> next(static_cast<std::size_t>(n), 0);
  for (int d = 0; d < n; ++d) pool[d] = state.cells_with(d);
  std::vector<Position> source;
  for (int k = 0; k < n; ++k) {
    const int d = y.digit(k);
    source.push_back(pool[d][next[d]++]);
  }
  const MoveSequence moves = optimize::array_onto_graph(PositionArray(n, source), indirection_graph(x), opts);
  if (moves.size() != 4 || h_indirect(state.apply(moves), x) != y)
    throw Error("internal error: forcing shuffles do not produce the target");
  return moves;
}

MoveSequence force_run(const SquareState& state, const std::vector<BaseNNumber>& inputs,
                       const std::vector<BaseNNumber>& targets, const optimize::KeyResultOptions& opts) {
  if (inputs.size() != targets.size()) throw Error("inputs and targets differ in length");
  MoveSequence schedule(state.n());
  SquareState cur = state;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const MoveSequence step = force_shuffles(cur, inputs[i], targets[i], opts);
    cur = cur.apply(step);
    for (const auto& m : step.moves()) schedule.push_back(m);
  }
  return schedule;
}

Bias bias(int n) {
  require_size(n);
  // Inclusion-exclusion over the colors that must all appear.
  BigInt weighted = 0;
  for (int r = 1; r <= n; ++r) {
    BigInt exact = 0;
    for (int k = 0; k < r; ++k) {
      const BigInt term = binomial(r, k) * binomial((r - k) * n, n);
      exact += k % 2 == 0 ? term : BigInt(-term);
    }
    weighted += BigInt(r) * binomial(n, r) * exact;
  }
  Bias b;
  b.expected_colors = BigRational(weighted, binomial(n * n, n));
  b.missing_colors = BigRational(n) - b.expected_colors;
  b.missing_digits = BigRational(BigInt(n) * power(BigInt(n - 1), static_cast<unsigned>(n)),
                                 power(BigInt(n), static_cast<unsigned>(n)));
  return b;
}

bool has_colorful_line(const SquareState& state) {
  const int n = state.n();
  for (int axis = 0; axis < 2; ++axis)
    for (int line = 0; line < n; ++line) {
      std::vector<char> seen(static_cast<std::size_t>(n), 0);
      int colors = 0;
      for (int i = 0; i < n; ++i) {
        const Position p = axis == 0 ? Position{i, line} : Position{line, i};
        if (!seen[state.digit(p)]++) ++colors;
      }
      if (static_cast<long long>(colors) * colors >= n) return true;
    }
  return false;
}

}  // namespace equisq::stream
