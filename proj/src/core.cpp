#include "equisq/core.hpp"

#include "equisq/bigmath.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace equisq {

void require_size(int n) {
  if (n < 2) throw Error("square size must be at least 2, got " + std::to_string(n));
}

char axis_char(Axis a) { return a == Axis::H ? 'H' : 'V'; }

// ---------------------------------------------------------------------------
// PositionSet / PositionArray

namespace {

void check_in_range(Position p, int n) {
  if (p.col < 0 || p.col >= n || p.row < 0 || p.row >= n)
    throw Error("position (" + std::to_string(p.col) + "," + std::to_string(p.row) +
                ") out of range for n=" + std::to_string(n));
}

bool rank_less(Position a, Position b) {
  return a.row != b.row ? a.row < b.row : a.col < b.col;
}

}  // namespace

PositionSet::PositionSet(int n, std::span<const Position> cells) : n_(n) {
  require_size(n);
  cells_.reserve(cells.size());
  for (Position p : cells) {
    check_in_range(p, n);
    cells_.push_back(p);
  }
  std::sort(cells_.begin(), cells_.end(), rank_less);
  cells_.erase(std::unique(cells_.begin(), cells_.end()), cells_.end());
}

bool PositionSet::contains(Position p) const {
  return std::binary_search(cells_.begin(), cells_.end(), p, rank_less);
}

void PositionSet::insert(Position p) {
  check_in_range(p, n_);
  auto it = std::lower_bound(cells_.begin(), cells_.end(), p, rank_less);
  if (it == cells_.end() || *it != p) cells_.insert(it, p);
}

std::vector<std::vector<int>> PositionSet::row_columns() const {
  std::vector<std::vector<int>> rows(static_cast<std::size_t>(n_));
  for (Position p : cells_) rows[p.row].push_back(p.col);
  return rows;
}

std::vector<std::vector<int>> PositionSet::column_rows() const {
  std::vector<std::vector<int>> cols(static_cast<std::size_t>(n_));
  for (Position p : cells_) cols[p.col].push_back(p.row);
  return cols;
}

PositionSet PositionSet::transpose() const {
  std::vector<Position> t;
  t.reserve(cells_.size());
  for (Position p : cells_) t.push_back(transposed(p));
  return PositionSet(n_, t);
}

PositionArray::PositionArray(int n, std::vector<Position> cells) : n_(n), cells_(std::move(cells)) {
  require_size(n);
  std::vector<Position> sorted = cells_;
  for (Position p : sorted) check_in_range(p, n);
  std::sort(sorted.begin(), sorted.end(), rank_less);
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw Error("position array contains a repeated position");
}

// ---------------------------------------------------------------------------
// Moves

ElementaryMove::ElementaryMove(Axis axis, std::vector<int> offsets) : axis_(axis), offsets_(std::move(offsets)) {
  const int n = static_cast<int>(offsets_.size());
  require_size(n);
  for (int& o : offsets_) o = mod(o, n);
}

ElementaryMove ElementaryMove::zero(Axis axis, int n) {
  return ElementaryMove(axis, std::vector<int>(static_cast<std::size_t>(n), 0));
}

bool ElementaryMove::is_identity() const {
  return std::all_of(offsets_.begin(), offsets_.end(), [](int o) { return o == 0; });
}

Position ElementaryMove::apply(Position p) const {
  const int n = this->n();
  if (axis_ == Axis::H) return {mod(p.col + offsets_[p.row], n), p.row};
  return {p.col, mod(p.row + offsets_[p.col], n)};
}

ElementaryMove ElementaryMove::inverse() const {
  std::vector<int> inv(offsets_.size());
  for (std::size_t i = 0; i < offsets_.size(); ++i) inv[i] = -offsets_[i];
  return ElementaryMove(axis_, std::move(inv));
}

ElementaryMove ElementaryMove::then(const ElementaryMove& next) const {
  if (next.axis_ != axis_ || next.n() != n()) throw Error("cannot merge moves of different axis or size");
  std::vector<int> sum(offsets_.size());
  for (std::size_t i = 0; i < offsets_.size(); ++i) sum[i] = offsets_[i] + next.offsets_[i];
  return ElementaryMove(axis_, std::move(sum));
}

ElementaryMove ElementaryMove::transpose() const { return ElementaryMove(other(axis_), offsets_); }

Permutation identity_permutation(int size) {
  Permutation p(static_cast<std::size_t>(size));
  for (int i = 0; i < size; ++i) p[i] = i;
  return p;
}

Permutation compose(const Permutation& first, const Permutation& second) {
  Permutation r(first.size());
  for (std::size_t i = 0; i < first.size(); ++i) r[i] = second[first[i]];
  return r;
}

Permutation inverse(const Permutation& p) {
  Permutation r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[p[i]] = static_cast<int>(i);
  return r;
}

int permutation_sign(const Permutation& p) {
  std::vector<char> seen(p.size(), 0);
  int sign = 1;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(p[j])) {
      seen[j] = 1;
      ++len;
    }
    if (len % 2 == 0) sign = -sign;
  }
  return sign;
}

MoveSequence::MoveSequence(int n, std::vector<ElementaryMove> moves) : n_(n) {
  require_size(n);
  for (auto& m : moves) push_back(std::move(m));
}

void MoveSequence::push_back(ElementaryMove m) {
  if (m.n() != n_) throw Error("move size " + std::to_string(m.n()) + " does not match square size " + std::to_string(n_));
  moves_.push_back(std::move(m));
}

void MoveSequence::append(const MoveSequence& other) {
  for (const auto& m : other.moves_) push_back(m);
}

Position MoveSequence::apply(Position p) const {
  for (const auto& m : moves_) p = m.apply(p);
  return p;
}

Permutation MoveSequence::permutation() const {
  const int cells = n_ * n_;
  Permutation perm(static_cast<std::size_t>(cells));
  for (int r = 0; r < cells; ++r) perm[r] = rank_of(apply(position_of(r, n_)), n_);
  return perm;
}

MoveSequence MoveSequence::inverse() const {
  MoveSequence inv(n_);
  for (auto it = moves_.rbegin(); it != moves_.rend(); ++it) inv.push_back(it->inverse());
  return inv;
}

MoveSequence MoveSequence::transpose() const {
  MoveSequence t(n_);
  for (const auto& m : moves_) t.push_back(m.transpose());
  return t;
}

MoveSequence normalize(const MoveSequence& seq) {
  std::vector<ElementaryMove> out;
  out.reserve(seq.size());
  for (const auto& m : seq.moves()) {
    if (m.is_identity()) continue;
    out.push_back(m);
    // Merging may produce an identity, which exposes a new adjacent pair.
    while (out.size() >= 2 && out[out.size() - 2].axis() == out.back().axis()) {
      ElementaryMove merged = out[out.size() - 2].then(out.back());
      out.pop_back();
      out.pop_back();
      if (!merged.is_identity()) out.push_back(std::move(merged));
    }
  }
  return MoveSequence(seq.n(), std::move(out));
}

std::string format_shuffles(int half_shuffles) {
  std::string s = std::to_string(half_shuffles / 2);
  if (half_shuffles % 2) s += "\xC2\xBD";
  return s;
}

// ---------------------------------------------------------------------------
// States

SquareState::SquareState(int n, std::vector<int> digits) : n_(n), digits_(std::move(digits)) {
  require_size(n);
  if (digits_.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n))
    throw Error("state must have n^2 cells");
  std::vector<int> count(static_cast<std::size_t>(n), 0);
  for (int d : digits_) {
    if (d < 0 || d >= n) throw Error("digit " + std::to_string(d) + " out of range for n=" + std::to_string(n));
    ++count[d];
  }
  for (int d = 0; d < n; ++d)
    if (count[d] != n)
      throw Error("digit " + std::to_string(d) + " occurs " + std::to_string(count[d]) + " times, expected " +
                  std::to_string(n));
}

SquareState SquareState::apply(const ElementaryMove& m) const {
  if (m.n() != n_) throw Error("move size does not match square size");
  std::vector<int> out(digits_.size());
  for (int r = 0; r < n_ * n_; ++r) out[rank_of(m.apply(position_of(r, n_)), n_)] = digits_[r];
  return SquareState(n_, std::move(out));
}

SquareState SquareState::apply(const MoveSequence& seq) const {
  if (seq.n() != n_) throw Error("move sequence size does not match square size");
  return apply(seq.permutation());
}

SquareState SquareState::apply(const Permutation& perm) const {
  if (perm.size() != digits_.size()) throw Error("permutation size does not match square");
  std::vector<int> out(digits_.size());
  for (std::size_t r = 0; r < digits_.size(); ++r) out[perm[r]] = digits_[r];
  return SquareState(n_, std::move(out));
}

SquareState SquareState::transpose() const {
  std::vector<int> out(digits_.size());
  for (int r = 0; r < n_ * n_; ++r) out[rank_of(transposed(position_of(r, n_)), n_)] = digits_[r];
  return SquareState(n_, std::move(out));
}

std::vector<Position> SquareState::cells_with(int digit) const {
  std::vector<Position> out;
  for (int r = 0; r < n_ * n_; ++r)
    if (digits_[r] == digit) out.push_back(position_of(r, n_));
  return out;
}

bool SquareState::is_latin(std::span<const Position> cells) const {
  std::vector<char> seen(static_cast<std::size_t>(n_), 0);
  for (Position p : cells) {
    int d = digit(p);
    if (seen[d]) return false;
    seen[d] = 1;
  }
  return true;
}

PositionSet apply(const ElementaryMove& m, const PositionSet& s) {
  std::vector<Position> out;
  out.reserve(s.size());
  for (Position p : s.cells()) out.push_back(m.apply(p));
  return PositionSet(s.n(), out);
}

PositionSet apply(const MoveSequence& seq, const PositionSet& s) {
  std::vector<Position> out;
  out.reserve(s.size());
  for (Position p : s.cells()) out.push_back(seq.apply(p));
  return PositionSet(s.n(), out);
}

PositionArray apply(const MoveSequence& seq, const PositionArray& a) {
  std::vector<Position> out;
  out.reserve(a.size());
  for (Position p : a.cells()) out.push_back(seq.apply(p));
  return PositionArray(a.n(), std::move(out));
}

namespace {

bool one_per_line(const PositionSet& s, bool by_column) {
  if (static_cast<int>(s.size()) != s.n()) return false;
  std::vector<char> seen(static_cast<std::size_t>(s.n()), 0);
  for (Position p : s.cells()) {
    const int line = by_column ? p.col : p.row;
    if (seen[line]) return false;
    seen[line] = 1;
  }
  return true;
}

int distinct_lines(const PositionSet& s, bool by_column) {
  std::vector<char> seen(static_cast<std::size_t>(s.n()), 0);
  int count = 0;
  for (Position p : s.cells()) {
    const int line = by_column ? p.col : p.row;
    if (!seen[line]) ++count;
    seen[line] = 1;
  }
  return count;
}

}  // namespace

bool is_hgraph(const PositionSet& s) { return one_per_line(s, true); }
bool is_vgraph(const PositionSet& s) { return one_per_line(s, false); }
int row_count(const PositionSet& s) { return distinct_lines(s, false); }
int column_count(const PositionSet& s) { return distinct_lines(s, true); }

SquareState parse_square(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  const int n = static_cast<int>(lines.size());
  if (n < 2) throw Error("square text must have at least 2 lines");
  std::vector<int> digits(static_cast<std::size_t>(n * n));
  for (int li = 0; li < n; ++li) {
    const int row = n - 1 - li;
    std::string_view line = lines[li];
    std::vector<std::string_view> tokens;
    std::size_t p = 0;
    while (true) {
      std::size_t q = line.find(' ', p);
      tokens.push_back(line.substr(p, q == std::string_view::npos ? std::string_view::npos : q - p));
      if (q == std::string_view::npos) break;
      p = q + 1;
    }
    if (static_cast<int>(tokens.size()) != n)
      throw Error("line " + std::to_string(li + 1) + " has " + std::to_string(tokens.size()) + " tokens, expected " +
                  std::to_string(n));
    for (int ti = 0; ti < n; ++ti) {
      std::string_view tok = tokens[ti];
      if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](char c) { return c >= '0' && c <= '9'; }))
        throw Error("line " + std::to_string(li + 1) + ": bad token '" + std::string(tok) + "'");
      const int value = std::stoi(std::string(tok));
      const int col = n - 1 - ti;
      digits[rank_of({col, row}, n)] = value;
    }
  }
  return SquareState(n, std::move(digits));
}

std::string format_square(const SquareState& state) {
  const int n = state.n();
  std::string out;
  for (int row = n - 1; row >= 0; --row) {
    for (int col = n - 1; col >= 0; --col) {
      out += std::to_string(state.digit({col, row}));
      out += col == 0 ? '\n' : ' ';
    }
  }
  return out;
}

MoveSequence parse_moves(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("move file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("moves"))
    throw Error("move file must be an object with \"n\" and \"moves\"");
  const int n = doc.at("n").get<int>();
  MoveSequence seq(n);
  for (const auto& rec : doc.at("moves")) {
    const std::string axis = rec.at("axis").get<std::string>();
    if (axis != "H" && axis != "V") throw Error("axis must be \"H\" or \"V\"");
    auto offsets = rec.at("offsets").get<std::vector<int>>();
    if (static_cast<int>(offsets.size()) != n) throw Error("move must have exactly n offsets");
    for (int o : offsets)
      if (o < 0 || o >= n) throw Error("offsets must lie in [0, n)");
    seq.push_back(ElementaryMove(axis == "H" ? Axis::H : Axis::V, std::move(offsets)));
  }
  return seq;
}

std::string format_moves(const MoveSequence& seq) {
  // One record per line keeps the files diffable.
  std::ostringstream out;
  out << "{\"n\": " << seq.n() << ", \"moves\": [";
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const auto& m = seq.moves()[i];
    out << (i ? ",\n  " : "\n  ") << "{\"axis\": \"" << axis_char(m.axis()) << "\", \"offsets\": [";
    for (int j = 0; j < m.n(); ++j) out << (j ? ", " : "") << m.offset(j);
    out << "]}";
  }
  out << (seq.empty() ? "]}\n" : "\n]}\n");
  return out.str();
}

// ---------------------------------------------------------------------------
// Profiles and counting

RowProfile row_profile(const PositionSet& s) {
  RowProfile p;
  p.row_columns = s.row_columns();
  for (const auto& cols : p.row_columns) {
    if (cols.empty()) continue;
    ++p.rows;
    if (cols.size() == 1) {
      ++p.row_unique;
    } else {
      ++p.body_rows;
      p.body_size += static_cast<int>(cols.size());
    }
  }
  p.free_rows = s.n() - p.rows;
  return p;
}

RowProfile column_profile(const PositionSet& s) { return row_profile(s.transpose()); }

double log2_state_count(int n) {
  require_size(n);
  const BigInt num = factorial(n * n);
  const BigInt den = power(factorial(n), static_cast<unsigned>(n - 1));
  return log2_big(num) - log2_big(den);
}

double log2_ryser_bound(int n) {
  require_size(n);
  return 2.0 * n * log2_big(factorial(n)) - static_cast<double>(n) * n * std::log2(static_cast<double>(n));
}

int shuffle_lower_bound(int n) {
  require_size(n);
  return static_cast<int>(std::ceil(log2_state_count(n) / (2.0 * n * std::log2(static_cast<double>(n)))));
}

double avg_shuffles(int n) {
  require_size(n);
  // ln sh(n) = -sum_{k=1}^{n-1} ln(1 - k/n^2)
  const double nn = static_cast<double>(n) * n;
  double acc = 0.0;
  for (int k = n - 1; k >= 1; --k) acc -= std::log1p(-k / nn);
  return std::exp(acc);
}

std::pair<std::string, std::string> avg_shuffles_exact(int n) {
  require_size(n);
  BigInt num = power(BigInt(n), static_cast<unsigned>(2 * n));
  BigInt den = 1;
  for (int k = 0; k < n; ++k) den *= n * n - k;
  BigRational q(num, den);
  return {boost::multiprecision::numerator(q).str(), boost::multiprecision::denominator(q).str()};
}

}  // namespace equisq
