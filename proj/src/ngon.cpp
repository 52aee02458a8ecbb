#include "equisq/ngon.hpp"

#include <algorithm>
#include <bitset>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

namespace equisq::ngon {

NGonSet::NGonSet(int n, std::span<const int> members) : NGonSet(n) {
  for (int v : members) members_.push_back(mod(v, n));
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

NGonSet::NGonSet(int n, std::initializer_list<int> members)
    : NGonSet(n, std::span<const int>(members.begin(), members.size())) {}

bool NGonSet::contains(int v) const { return std::binary_search(members_.begin(), members_.end(), mod(v, n_)); }

NGonSet NGonSet::shifted(int v) const {
  std::vector<int> m(members_);
  for (int& x : m) x += v;
  return NGonSet(n_, m);
}

NGonSet NGonSet::negated() const {
  std::vector<int> m(members_);
  for (int& x : m) x = -x;
  return NGonSet(n_, m);
}

std::size_t NGonSet::intersection_size(const NGonSet& other) const {
  std::size_t c = 0;
  for (int v : members_) c += other.contains(v) ? 1 : 0;
  return c;
}

// ---------------------------------------------------------------------------
// IntPoly

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw Error("polynomial coefficient overflow");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error("polynomial coefficient overflow");
  return r;
}

}  // namespace

IntPoly::IntPoly(std::vector<std::int64_t> coeffs) : c_(std::move(coeffs)) { trim(); }

void IntPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

IntPoly IntPoly::monomial(int degree, std::int64_t c) {
  std::vector<std::int64_t> v(static_cast<std::size_t>(degree) + 1, 0);
  v.back() = c;
  return IntPoly(std::move(v));
}

IntPoly IntPoly::of_set(const NGonSet& s) {
  std::vector<std::int64_t> v(static_cast<std::size_t>(s.n()), 0);
  for (int m : s.members()) v[m] = 1;
  return IntPoly(std::move(v));
}

std::int64_t IntPoly::value_at_one() const {
  std::int64_t s = 0;
  for (auto c : c_) s = checked_add(s, c);
  return s;
}

IntPoly IntPoly::operator+(const IntPoly& o) const {
  std::vector<std::int64_t> r(std::max(c_.size(), o.c_.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = checked_add(coeff(static_cast<int>(i)), o.coeff(static_cast<int>(i)));
  return IntPoly(std::move(r));
}

IntPoly IntPoly::operator-(const IntPoly& o) const {
  std::vector<std::int64_t> neg(o.c_);
  for (auto& c : neg) c = -c;
  return *this + IntPoly(std::move(neg));
}

IntPoly IntPoly::operator*(const IntPoly& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<std::int64_t> r(c_.size() + o.c_.size() - 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] = checked_add(r[i + j], checked_mul(c_[i], o.c_[j]));
  }
  return IntPoly(std::move(r));
}

IntPoly::DivMod IntPoly::divmod(const IntPoly& divisor) const {
  if (divisor.is_zero() || divisor.c_.back() != 1) throw Error("polynomial division needs a monic divisor");
  const int dd = divisor.degree();
  std::vector<std::int64_t> rem(c_);
  if (degree() < dd) return {IntPoly{}, *this};
  std::vector<std::int64_t> quot(static_cast<std::size_t>(degree() - dd) + 1, 0);
  for (int i = degree(); i >= dd; --i) {
    const std::int64_t lead = rem[i];
    if (lead == 0) continue;
    quot[i - dd] = lead;
    for (int j = 0; j <= dd; ++j) rem[i - dd + j] = checked_add(rem[i - dd + j], -checked_mul(lead, divisor.c_[j]));
  }
  return {IntPoly(std::move(quot)), IntPoly(std::move(rem))};
}

bool IntPoly::divisible_by(const IntPoly& divisor) const { return divmod(divisor).remainder.is_zero(); }

std::string IntPoly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    std::int64_t c = c_[i];
    if (c == 0) continue;
    if (!first) out << (c < 0 ? " - " : " + ");
    else if (c < 0) out << "-";
    const std::int64_t a = c < 0 ? -c : c;
    if (a != 1 || i == 0) out << a;
    if (i >= 1) out << "x";
    if (i >= 2) out << "^" << i;
    first = false;
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Rotations

const char* to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::Found: return "found";
    case SearchStatus::None: return "none";
    case SearchStatus::Unknown: return "unknown";
  }
  return "?";
}

namespace {

void check_same_modulus(std::span<const NGonSet> sets) {
  for (const auto& s : sets)
    if (s.n() != sets.front().n()) throw Error("n-gon sets have different moduli");
}

// Rotation-based DFS shared by the 64-bit and wide mask paths. Sets are tried
// largest first; rotation values ascend, so the witness is deterministic.
template <class Mask>
struct FamilySearch {
  int n;
  // rotated[i][v] = mask of set order[i] shifted by v
  std::vector<std::vector<Mask>> rotated;
  std::vector<int> choice;
  long long budget;
  long long nodes = 0;
  bool out_of_budget = false;

  bool dfs(std::size_t depth, const Mask& used) {
    if (depth == rotated.size()) return true;
    const auto& options = rotated[depth];
    for (int v = 0; v < static_cast<int>(options.size()); ++v) {
      if (++nodes > budget) {
        out_of_budget = true;
        return false;
      }
      if ((options[v] & used) != Mask{}) continue;
      choice[depth] = v;
      if (dfs(depth + 1, used | options[v])) return true;
      if (out_of_budget) return false;
    }
    return false;
  }
};

template <class Mask, class RotateFn>
FamilyResult search_family(int n, const std::vector<Mask>& masks, const std::vector<std::size_t>& sizes,
                           long long budget, RotateFn rotate) {
  FamilyResult res;
  const std::size_t b = masks.size();
  if (b == 0) {
    res.status = SearchStatus::Found;
    return res;
  }
  if (std::accumulate(sizes.begin(), sizes.end(), std::size_t{0}) > static_cast<std::size_t>(n)) {
    res.status = SearchStatus::None;
    return res;
  }
  std::vector<std::size_t> order(b);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t c) { return sizes[a] > sizes[c]; });

  FamilySearch<Mask> fs{n, {}, std::vector<int>(b, 0), budget};
  fs.rotated.resize(b);
  for (std::size_t i = 0; i < b; ++i) {
    const Mask& m = masks[order[i]];
    // The first set in search order is pinned at rotation 0.
    const int choices = i == 0 ? 1 : n;
    fs.rotated[i].reserve(static_cast<std::size_t>(choices));
    for (int v = 0; v < choices; ++v) fs.rotated[i].push_back(rotate(m, v));
  }
  const bool found = fs.dfs(0, Mask{});
  res.nodes = fs.nodes;
  if (found) {
    res.status = SearchStatus::Found;
    std::vector<int> rot(b, 0);
    for (std::size_t i = 0; i < b; ++i) rot[order[i]] = fs.choice[i];
    const int base = rot[0];
    for (int& r : rot) r = mod(r - base, n);
    res.rotations = std::move(rot);
  } else {
    res.status = fs.out_of_budget ? SearchStatus::Unknown : SearchStatus::None;
  }
  return res;
}

std::uint64_t rotl64(std::uint64_t m, int v, int n) {
  if (v == 0) return m;
  const std::uint64_t full = n == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
  return ((m << v) | (m >> (n - v))) & full;
}

using WideMask = std::bitset<kMaxModulus>;

struct WideRotate {
  int n;
  WideMask full;
  WideMask operator()(const WideMask& m, int v) const {
    if (v == 0) return m;
    return ((m << v) | (m >> (n - v))) & full;
  }
};

}  // namespace

std::optional<int> rotate_apart_pair(const NGonSet& s, const NGonSet& t) {
  if (s.n() != t.n()) throw Error("n-gon sets have different moduli");
  const int n = s.n();
  std::vector<char> in_t(static_cast<std::size_t>(n), 0);
  for (int m : t.members()) in_t[m] = 1;
  for (int v = 0; v < n; ++v) {
    bool ok = true;
    for (int m : s.members())
      if (in_t[mod(m + v, n)]) {
        ok = false;
        break;
      }
    if (ok) return v;
  }
  return std::nullopt;
}

FamilyResult rotate_apart_masks(int n, std::span<const std::uint64_t> masks, long long node_budget) {
  if (n < 1 || n > 64) throw Error("64-bit mask search needs 1 <= n <= 64");
  std::vector<std::uint64_t> m(masks.begin(), masks.end());
  std::vector<std::size_t> sizes;
  sizes.reserve(m.size());
  for (auto x : m) sizes.push_back(static_cast<std::size_t>(__builtin_popcountll(x)));
  return search_family<std::uint64_t>(n, m, sizes, node_budget,
                                      [n](std::uint64_t x, int v) { return rotl64(x, v, n); });
}

FamilyResult rotate_apart_family(std::span<const NGonSet> sets, long long node_budget) {
  if (sets.empty()) return {SearchStatus::Found, {}, 0};
  check_same_modulus(sets);
  const int n = sets.front().n();
  if (n > kMaxModulus) throw Error("n-gon modulus above " + std::to_string(kMaxModulus) + " not supported");
  if (n <= 64) {
    std::vector<std::uint64_t> masks;
    for (const auto& s : sets) {
      std::uint64_t x = 0;
      for (int v : s.members()) x |= std::uint64_t{1} << v;
      masks.push_back(x);
    }
    return rotate_apart_masks(n, masks, node_budget);
  }
  std::vector<WideMask> masks;
  std::vector<std::size_t> sizes;
  for (const auto& s : sets) {
    WideMask x;
    for (int v : s.members()) x.set(static_cast<std::size_t>(v));
    masks.push_back(x);
    sizes.push_back(s.size());
  }
  WideMask full;
  for (int i = 0; i < n; ++i) full.set(static_cast<std::size_t>(i));
  return search_family<WideMask>(n, masks, sizes, node_budget, WideRotate{n, full});
}

bool pair_separation_guarantee(int s1, int s2, int c, int n) {
  return static_cast<long long>(s1) * s2 < static_cast<long long>(n) + c - 1;
}

bool family_separation_guarantee(std::span<const int> sizes, int n) {
  const long long b = static_cast<long long>(sizes.size());
  if (b == 0) return true;
  long long s = 0;
  for (int x : sizes) s += x;
  // (b-1)/b^2 * s^2 < n  <=>  (b-1) s^2 < n b^2
  const bool main = (b - 1) * s * s < static_cast<long long>(n) * b * b;
  const bool all_equal = std::adjacent_find(sizes.begin(), sizes.end(), std::not_equal_to<>()) == sizes.end();
  return main && (b <= 2 || all_equal || s - b <= 21);
}

// ---------------------------------------------------------------------------
// Cyclotomic polynomials

int euler_phi(int n) {
  if (n < 1) throw Error("totient needs n >= 1");
  int result = n;
  int m = n;
  for (int p = 2; p * p <= m; ++p) {
    if (m % p) continue;
    while (m % p == 0) m /= p;
    result -= result / p;
  }
  if (m > 1) result -= result / m;
  return result;
}

IntPoly cyclotomic(int n) {
  if (n < 1) throw Error("cyclotomic index must be positive");
  std::vector<int> divisors;
  for (int d = 1; d <= n; ++d)
    if (n % d == 0) divisors.push_back(d);
  std::map<int, IntPoly> known;
  for (int d : divisors) {
    IntPoly p = IntPoly::monomial(d) - IntPoly::monomial(0);
    for (const auto& [e, ce] : known)
      if (d % e == 0) p = p.divmod(ce).quotient;
    known.emplace(d, std::move(p));
  }
  return known.at(n);
}

bool is_d_balanced(const NGonSet& s, int d) {
  const int n = s.n();
  if (d < 1 || d >= n) throw Error("balance index must satisfy 1 <= d < n");
  const int m = n / std::gcd(n, d);
  return IntPoly::of_set(s).divisible_by(cyclotomic(m));
}

bool perfect_sum_cover(const NGonSet& s, const NGonSet& t) {
  if (s.n() != t.n()) throw Error("n-gon sets have different moduli");
  const int n = s.n();
  if (static_cast<long long>(s.size()) * static_cast<long long>(t.size()) != n)
    throw Error("perfect sum cover needs #S * #T = n");
  std::vector<int> hits(static_cast<std::size_t>(n), 0);
  for (int i : s.members())
    for (int j : t.members())
      if (++hits[mod(i + j, n)] > 1) return false;
  return true;
}

std::optional<int> is_regular_subpolygon(const NGonSet& s) {
  const int n = s.n();
  const int m = static_cast<int>(s.size());
  if (m == 0 || n % m != 0) return std::nullopt;
  const int step = n / m;
  const int a = s.members().front();
  for (int k = 0; k < m; ++k)
    if (s.members()[k] != a + k * step) return std::nullopt;
  return m;
}

}  // namespace equisq::ngon
