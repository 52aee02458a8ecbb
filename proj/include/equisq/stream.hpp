#pragma once

// Indirection, the standard operation mode, output forcing and the bias
// quantities of random n-sets.

#include "equisq/bigmath.hpp"
#include "equisq/core.hpp"
#include "equisq/optimize.hpp"
#include "equisq/random.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace equisq::stream {

// n base-n digits; digit 0 is the least significant.
class BaseNNumber {
 public:
  BaseNNumber(int n, std::vector<int> digits);
  static BaseNNumber from_value(int n, const BigInt& value);
  // Decimal integer, or with `digits` set a string of exactly n base-n digits
  // (0-9 then a-z, most significant first; needs n <= 36).
  static BaseNNumber parse(int n, std::string_view text, bool digits);

  int n() const { return n_; }
  int digit(int k) const { return digits_[k]; }
  const std::vector<int>& digits() const { return digits_; }
  BigInt value() const;
  std::string to_decimal() const;
  std::string to_digit_string() const;

  friend bool operator==(const BaseNNumber&, const BaseNNumber&) = default;

 private:
  int n_;
  std::vector<int> digits_;
};

BaseNNumber random_number(int n, Rng& rng);

// y_k is the digit at (k, x_k).
BaseNNumber h_indirect(const SquareState& state, const BaseNNumber& x);
// y_k is the digit at (x_k, k).
BaseNNumber v_indirect(const SquareState& state, const BaseNNumber& x);
// Cells (cols_k, rows_k); cells may repeat.
BaseNNumber array_indirect(const SquareState& state, const BaseNNumber& cols, const BaseNNumber& rows);

// The cells read by h_indirect, as an H-graph listed by column.
PositionArray indirection_graph(const BaseNNumber& x);

// Supplies two HV-shuffles (H, V, H, V) per step, either from a seeded
// generator or from a fixed schedule.
class ShuffleSource {
 public:
  static ShuffleSource seeded(int n, std::uint64_t seed);
  static ShuffleSource schedule(MoveSequence moves);

  // Throws Error once a schedule is used up.
  MoveSequence next_step();
  bool exhausted() const;

 private:
  ShuffleSource(int n, Rng rng, bool from_schedule, MoveSequence moves);

  int n_;
  Rng rng_;
  bool from_schedule_;
  MoveSequence moves_;
  std::size_t cursor_ = 0;
};

struct RunResult {
  std::vector<BaseNNumber> outputs;
  SquareState final_state;
};

RunResult standard_mode_run(const SquareState& state, const std::vector<BaseNNumber>& inputs, ShuffleSource& src);

// Four moves (HVHV) after which h_indirect(., x) reads y.
// Needs 2 <= n <= 34 or n = 37 for the guarantee.
MoveSequence force_shuffles(const SquareState& state, const BaseNNumber& x, const BaseNNumber& y,
                            const optimize::KeyResultOptions& opts = {});

// Concatenated force_shuffles along the run; 4 moves per input.
MoveSequence force_run(const SquareState& state, const std::vector<BaseNNumber>& inputs,
                       const std::vector<BaseNNumber>& targets, const optimize::KeyResultOptions& opts = {});

struct Bias {
  BigRational expected_colors;  // E
  BigRational missing_colors;   // B = n - E
  BigRational missing_digits;   // B_N = n ((n-1)/n)^n
};

Bias bias(int n);

// True when the state has a row or column with at least sqrt(n) colors.
bool has_colorful_line(const SquareState& state);

}  // namespace equisq::stream
