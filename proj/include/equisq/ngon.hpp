#pragma once

// Subsets of Z/nZ seen as vertex sets of a regular n-gon: rotating sets
// apart, integer polynomials, cyclotomic divisibility and balance.

#include "equisq/core.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace equisq::ngon {

// Largest modulus accepted by the rotation searches.
inline constexpr int kMaxModulus = 256;

class NGonSet {
 public:
  explicit NGonSet(int n) : n_(n) {
    if (n < 1) throw Error("modulus must be positive");
  }
  // Members are reduced modulo n; duplicates collapse.
  NGonSet(int n, std::span<const int> members);
  NGonSet(int n, std::initializer_list<int> members);

  int n() const { return n_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  const std::vector<int>& members() const { return members_; }
  bool contains(int v) const;

  NGonSet shifted(int v) const;
  NGonSet negated() const;
  std::size_t intersection_size(const NGonSet& other) const;

  friend bool operator==(const NGonSet&, const NGonSet&) = default;

 private:
  int n_;
  std::vector<int> members_;
};

// Dense integer polynomial; coefficient i multiplies x^i. Trailing zeros are
// trimmed so the zero polynomial has no coefficients.
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<std::int64_t> coeffs);
  static IntPoly monomial(int degree, std::int64_t c = 1);
  // sum of x^i over members of s.
  static IntPoly of_set(const NGonSet& s);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  std::int64_t coeff(int i) const { return i < static_cast<int>(c_.size()) ? c_[i] : 0; }
  const std::vector<std::int64_t>& coeffs() const { return c_; }
  std::int64_t value_at_one() const;

  IntPoly operator+(const IntPoly& o) const;
  IntPoly operator-(const IntPoly& o) const;
  IntPoly operator*(const IntPoly& o) const;

  // Division by a monic divisor; throws Error if the divisor is not monic or
  // a coefficient overflows.
  struct DivMod;
  DivMod divmod(const IntPoly& divisor) const;
  bool divisible_by(const IntPoly& divisor) const;

  std::string to_string() const;

  friend bool operator==(const IntPoly&, const IntPoly&) = default;

 private:
  void trim();
  std::vector<std::int64_t> c_;
};

struct IntPoly::DivMod {
  IntPoly quotient;
  IntPoly remainder;
};

enum class SearchStatus { Found, None, Unknown };
const char* to_string(SearchStatus s);

// Some v with (s + v) and t disjoint, or nullopt when no rotation works.
std::optional<int> rotate_apart_pair(const NGonSet& s, const NGonSet& t);

struct FamilyResult {
  SearchStatus status = SearchStatus::Unknown;
  // rotations[i] applies to sets[i]; rotations[0] == 0.
  std::vector<int> rotations;
  long long nodes = 0;
};

inline constexpr long long kDefaultFamilyBudget = 20'000'000;

// Rotations making all sets pairwise disjoint. The backtracking search is
// complete, so None is a proof of impossibility; Unknown means the node
// budget ran out first.
FamilyResult rotate_apart_family(std::span<const NGonSet> sets, long long node_budget = kDefaultFamilyBudget);

// s1 * s2 < n + c - 1
bool pair_separation_guarantee(int s1, int s2, int c, int n);
// (b-1)/b^2 * s^2 < n together with the side condition on b.
bool family_separation_guarantee(std::span<const int> sizes, int n);

int euler_phi(int n);
IntPoly cyclotomic(int n);

// S(omega^d) == 0, certified by C_m | S(x) with m = n / gcd(n, d).
bool is_d_balanced(const NGonSet& s, int d);

// Every k in Z/n is i + j for exactly one (i, j) in s x t.
bool perfect_sum_cover(const NGonSet& s, const NGonSet& t);

// #S when S is a coset of the subgroup generated by n / #S.
std::optional<int> is_regular_subpolygon(const NGonSet& s);

// Low-level family search over 64-bit masks (n <= 64), used by the position
// set code on its hot path. masks[i] has bit v set for member v.
FamilyResult rotate_apart_masks(int n, std::span<const std::uint64_t> masks, long long node_budget);

}  // namespace equisq::ngon
