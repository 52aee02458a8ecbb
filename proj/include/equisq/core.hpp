#pragma once

// Formal n-squares: positions, rotation moves, equi-n-square states and the
// closed-form counting quantities attached to them.
//
// Coordinates: a position is (column, row). Columns are numbered right to
// left and rows bottom to top, so an H offset of +1 moves a cell one column
// "left" (col + 1) and a V offset of +1 moves it one row "up" (row + 1).
// The rank of (c, r) is c + n * r.

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace equisq {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Throws Error unless 2 <= n.
void require_size(int n);

inline int mod(long long a, int n) {
  long long r = a % n;
  return static_cast<int>(r < 0 ? r + n : r);
}

enum class Axis : std::uint8_t { H, V };

inline Axis other(Axis a) { return a == Axis::H ? Axis::V : Axis::H; }
char axis_char(Axis a);

struct Position {
  int col = 0;
  int row = 0;

  friend auto operator<=>(const Position&, const Position&) = default;
};

inline int rank_of(Position p, int n) { return p.col + n * p.row; }
inline Position position_of(int rank, int n) { return {rank % n, rank / n}; }
inline Position transposed(Position p) { return {p.row, p.col}; }

// Unordered set of distinct positions; members are kept sorted by rank.
class PositionSet {
 public:
  explicit PositionSet(int n) : n_(n) { require_size(n); }
  PositionSet(int n, std::span<const Position> cells);

  int n() const { return n_; }
  std::size_t size() const { return cells_.size(); }
  bool empty() const { return cells_.empty(); }
  const std::vector<Position>& cells() const { return cells_; }
  bool contains(Position p) const;
  void insert(Position p);

  // Column sets (as sorted column indices) of each row; empty for free rows.
  std::vector<std::vector<int>> row_columns() const;
  // Row sets of each column; empty for unused columns.
  std::vector<std::vector<int>> column_rows() const;

  PositionSet transpose() const;

  friend bool operator==(const PositionSet&, const PositionSet&) = default;

 private:
  int n_;
  std::vector<Position> cells_;
};

// Ordered list of distinct positions.
class PositionArray {
 public:
  explicit PositionArray(int n) : n_(n) { require_size(n); }
  PositionArray(int n, std::vector<Position> cells);

  int n() const { return n_; }
  std::size_t size() const { return cells_.size(); }
  const Position& operator[](std::size_t i) const { return cells_[i]; }
  const std::vector<Position>& cells() const { return cells_; }
  PositionSet as_set() const { return PositionSet(n_, cells_); }

  friend bool operator==(const PositionArray&, const PositionArray&) = default;

 private:
  int n_;
  std::vector<Position> cells_;
};

// Independent rotation of every row (H) or every column (V).
// offsets[i] rotates row i for H, column i for V.
class ElementaryMove {
 public:
  ElementaryMove(Axis axis, std::vector<int> offsets);
  static ElementaryMove zero(Axis axis, int n);

  Axis axis() const { return axis_; }
  int n() const { return static_cast<int>(offsets_.size()); }
  const std::vector<int>& offsets() const { return offsets_; }
  int offset(int line) const { return offsets_[line]; }
  bool is_identity() const;

  Position apply(Position p) const;
  ElementaryMove inverse() const;
  // Componentwise sum; both moves must share the axis.
  ElementaryMove then(const ElementaryMove& next) const;
  // Same rotations with the roles of rows and columns exchanged.
  ElementaryMove transpose() const;

  friend bool operator==(const ElementaryMove&, const ElementaryMove&) = default;

 private:
  Axis axis_;
  std::vector<int> offsets_;
};

// Position permutation on ranks: perm[r] is where the cell of rank r goes.
using Permutation = std::vector<int>;

Permutation identity_permutation(int size);
// Apply `first`, then `second`.
Permutation compose(const Permutation& first, const Permutation& second);
Permutation inverse(const Permutation& p);
int permutation_sign(const Permutation& p);

class MoveSequence {
 public:
  explicit MoveSequence(int n) : n_(n) { require_size(n); }
  MoveSequence(int n, std::vector<ElementaryMove> moves);

  int n() const { return n_; }
  const std::vector<ElementaryMove>& moves() const { return moves_; }
  std::size_t size() const { return moves_.size(); }
  bool empty() const { return moves_.empty(); }

  // Shuffle length in half-shuffles: the number of elementary moves.
  int half_shuffles() const { return static_cast<int>(moves_.size()); }

  void push_back(ElementaryMove m);
  void append(const MoveSequence& other);

  Position apply(Position p) const;
  Permutation permutation() const;
  MoveSequence inverse() const;
  MoveSequence transpose() const;

  friend bool operator==(const MoveSequence&, const MoveSequence&) = default;

 private:
  int n_;
  std::vector<ElementaryMove> moves_;
};

// Drops identity moves and merges adjacent moves on the same axis until no
// two neighbours share an axis. The realized permutation is unchanged.
MoveSequence normalize(const MoveSequence& seq);

// "2½" style rendering of a half-shuffle count.
std::string format_shuffles(int half_shuffles);

// An equi-n-square: every digit 0..n-1 occurs on exactly n cells.
class SquareState {
 public:
  // digits are indexed by rank.
  SquareState(int n, std::vector<int> digits);

  int n() const { return n_; }
  int digit(Position p) const { return digits_[rank_of(p, n_)]; }
  int digit_at_rank(int r) const { return digits_[r]; }
  const std::vector<int>& digits() const { return digits_; }

  SquareState apply(const ElementaryMove& m) const;
  SquareState apply(const MoveSequence& seq) const;
  // Cell content at rank r moves to perm[r].
  SquareState apply(const Permutation& perm) const;
  SquareState transpose() const;

  // Cells carrying the given digit, in rank order.
  std::vector<Position> cells_with(int digit) const;
  bool is_latin(std::span<const Position> cells) const;

  friend bool operator==(const SquareState&, const SquareState&) = default;

 private:
  int n_;
  std::vector<int> digits_;
};

// Pointwise images; array order is preserved.
PositionSet apply(const ElementaryMove& m, const PositionSet& s);
PositionSet apply(const MoveSequence& seq, const PositionSet& s);
PositionArray apply(const MoveSequence& seq, const PositionArray& a);

// One cell per column / one cell per row.
bool is_hgraph(const PositionSet& s);
bool is_vgraph(const PositionSet& s);
int row_count(const PositionSet& s);
int column_count(const PositionSet& s);

SquareState parse_square(std::string_view text);
std::string format_square(const SquareState& state);

MoveSequence parse_moves(std::string_view json_text);
std::string format_moves(const MoveSequence& seq);

struct RowProfile {
  int rows = 0;         // S-rows
  int free_rows = 0;    // n - rows
  int body_rows = 0;    // S-rows with at least two cells
  int row_unique = 0;   // cells alone in their row
  int body_size = 0;    // cells on body rows
  std::vector<std::vector<int>> row_columns;
};

RowProfile row_profile(const PositionSet& s);
RowProfile column_profile(const PositionSet& s);

// log2 of s_n = (n^2)! / (n!)^(n-1), from exact factorials.
double log2_state_count(int n);
// log2 of Ryser's latin-square lower bound (n!)^(2n) / n^(n^2).
double log2_ryser_bound(int n);
// ceil(log2(s_n) / (2 n log2 n)).
int shuffle_lower_bound(int n);

// n^(2n) / (n^2 (n^2 - 1) ... (n^2 - n + 1)), evaluated in log space.
double avg_shuffles(int n);
// Exact numerator/denominator in lowest terms, as decimal strings.
std::pair<std::string, std::string> avg_shuffles_exact(int n);

}  // namespace equisq
