#include "doctest.h"
#include "equisq/ngon.hpp"
#include "equisq/random.hpp"

#include <numeric>

using namespace equisq;
using namespace equisq::ngon;

namespace {

bool pairwise_disjoint(std::span<const NGonSet> sets, const std::vector<int>& rot) {
  const int n = sets[0].n();
  std::vector<int> hit(static_cast<std::size_t>(n), 0);
  for (std::size_t i = 0; i < sets.size(); ++i) {
    const NGonSet moved = sets[i].shifted(rot[i]);
    for (int v : moved.members())
      if (hit[v]++) return false;
  }
  return true;
}

// Some rotation separates s and t iff the differences t - s miss a residue.
bool differences_cover(const NGonSet& s, const NGonSet& t) {
  std::vector<char> seen(static_cast<std::size_t>(s.n()), 0);
  for (int a : s.members())
    for (int b : t.members()) seen[mod(b - a, s.n())] = 1;
  return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
}

NGonSet random_subset(int n, int k, Rng& rng) {
  std::vector<int> all(static_cast<std::size_t>(n));
  std::iota(all.begin(), all.end(), 0);
  shuffle_in_place(all, rng);
  return NGonSet(n, std::span<const int>(all.data(), static_cast<std::size_t>(k)));
}

// Subsets of size k containing 0.
std::vector<NGonSet> pinned_subsets(int n, int k) {
  std::vector<NGonSet> out;
  std::vector<int> idx(static_cast<std::size_t>(k - 1));
  std::iota(idx.begin(), idx.end(), 1);
  while (true) {
    std::vector<int> members{0};
    members.insert(members.end(), idx.begin(), idx.end());
    out.emplace_back(n, members);
    int i = k - 2;
    while (i >= 0 && idx[i] == n - (k - 1) + i) --i;
    if (i < 0) return out;
    ++idx[i];
    for (int j = i + 1; j < k - 1; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

TEST_CASE("n-gon sets") {
  const NGonSet s(5, {7, 1, 2});
  CHECK(s.members() == std::vector<int>{1, 2});
  CHECK(s.shifted(4).members() == std::vector<int>{0, 1});
  CHECK(s.negated().members() == std::vector<int>{3, 4});
  CHECK(s.intersection_size(NGonSet(5, {2, 3})) == 1);
}

TEST_CASE("pair separation") {
  CHECK(rotate_apart_pair(NGonSet(2, {0}), NGonSet(2, {0})) == 1);
  CHECK_FALSE(rotate_apart_pair(NGonSet(36, {25, 24, 13, 12, 1, 0}), NGonSet(36, {10, 8, 6, 4, 2, 0})).has_value());
  const auto v = rotate_apart_pair(NGonSet(5, {0, 1}), NGonSet(5, {0, 2}));
  REQUIRE(v.has_value());
  CHECK(NGonSet(5, {0, 1}).shifted(*v).intersection_size(NGonSet(5, {0, 2})) == 0);
  CHECK_THROWS_AS(rotate_apart_pair(NGonSet(5, {0}), NGonSet(6, {0})), Error);

  Rng rng = make_rng(31);
  for (int trial = 0; trial < 3000; ++trial) {
    const int n = 2 + static_cast<int>(uniform_below(rng, 19));
    const NGonSet a = random_subset(n, 1 + static_cast<int>(uniform_below(rng, n)), rng);
    const NGonSet b = random_subset(n, 1 + static_cast<int>(uniform_below(rng, n)), rng);
    const auto r = rotate_apart_pair(a, b);
    CHECK(r.has_value() == !differences_cover(a, b));
    if (r) CHECK(a.shifted(*r).intersection_size(b) == 0);
    if (a.size() * b.size() + 1 < static_cast<std::size_t>(n) + a.intersection_size(b))
      CHECK(r.has_value());
  }
}

TEST_CASE("separation guarantees") {
  CHECK_FALSE(pair_separation_guarantee(2, 2, 1, 4));
  CHECK(pair_separation_guarantee(2, 2, 0, 6));
  const std::vector<int> twos{2, 2, 2};
  const std::vector<int> fours{4, 4, 4};
  CHECK_FALSE(family_separation_guarantee(twos, 8));
  CHECK(family_separation_guarantee(fours, 33));
  CHECK_FALSE(family_separation_guarantee(fours, 32));
}

TEST_CASE("family search") {
  const std::vector<NGonSet> sets{NGonSet(8, {0, 1}), NGonSet(8, {0, 2}), NGonSet(8, {0, 3})};
  const FamilyResult r = rotate_apart_family(sets);
  REQUIRE(r.status == SearchStatus::Found);
  CHECK(r.rotations[0] == 0);
  CHECK(pairwise_disjoint(sets, r.rotations));

  const std::vector<NGonSet> crowded{NGonSet(4, {0, 1}), NGonSet(4, {0, 1}), NGonSet(4, {0})};
  CHECK(rotate_apart_family(crowded).status == SearchStatus::None);

  // A regular 3-gon and a full transversal of its cosets in the 15-gon.
  const std::vector<NGonSet> blocked{NGonSet(15, {0, 5, 10}), NGonSet(15, {0, 1, 2, 3, 4})};
  CHECK(rotate_apart_family(blocked).status == SearchStatus::None);

  const std::vector<NGonSet> large{NGonSet(64, {0, 1, 2, 3}), NGonSet(64, {0, 5, 9}), NGonSet(64, {0, 7})};
  CHECK(rotate_apart_family(large, 1).status == SearchStatus::Unknown);

  Rng rng = make_rng(32);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 4 + static_cast<int>(uniform_below(rng, 12));
    std::vector<NGonSet> fam;
    const int b = 2 + static_cast<int>(uniform_below(rng, 3));
    for (int i = 0; i < b; ++i) fam.push_back(random_subset(n, 1 + static_cast<int>(uniform_below(rng, 3)), rng));
    const FamilyResult res = rotate_apart_family(fam);
    // Brute force over every rotation tuple with the first set fixed.
    bool any = false;
    std::vector<int> rot(static_cast<std::size_t>(b), 0);
    while (true) {
      if (pairwise_disjoint(fam, rot)) any = true;
      int i = b - 1;
      while (i >= 1 && rot[i] == n - 1) rot[i--] = 0;
      if (i < 1) break;
      ++rot[i];
    }
    CHECK((res.status == SearchStatus::Found) == any);
    if (res.status == SearchStatus::Found) CHECK(pairwise_disjoint(fam, res.rotations));
  }
}

TEST_CASE("two-element families in the 4(b-1)-gon always separate") {
  for (int n : {8, 12, 16}) {
    const int b = n / 4 + 1;
    // Only the distance inside each 2-set matters.
    std::vector<int> dist(static_cast<std::size_t>(b), 1);
    long long families = 0;
    while (true) {
      std::vector<NGonSet> fam;
      for (int d : dist) fam.emplace_back(n, std::initializer_list<int>{0, d});
      const FamilyResult r = rotate_apart_family(fam);
      CHECK(r.status == SearchStatus::Found);
      ++families;
      int i = b - 1;
      while (i >= 0 && dist[i] == n / 2) --i;
      if (i < 0) break;
      ++dist[i];
      for (int j = i + 1; j < b; ++j) dist[j] = dist[i];
    }
    CHECK(families > 0);
  }
}

TEST_CASE("t + 1 sets of size m in the t m^2-gon separate") {
  Rng rng = make_rng(33);
  for (auto [t, m] : {std::pair{2, 2}, std::pair{2, 3}, std::pair{3, 2}}) {
    const int n = t * m * m;
    for (int trial = 0; trial < 500; ++trial) {
      std::vector<NGonSet> fam;
      for (int i = 0; i <= t; ++i) fam.push_back(random_subset(n, m, rng));
      CHECK(rotate_apart_family(fam).status == SearchStatus::Found);
    }
  }
}

TEST_CASE("cyclotomic polynomials") {
  CHECK(cyclotomic(1) == IntPoly({-1, 1}));
  CHECK(cyclotomic(36).to_string() == "x^12 - x^6 + 1");
  CHECK(cyclotomic(36) == IntPoly({1, 0, 0, 0, 0, 0, -1, 0, 0, 0, 0, 0, 1}));
  for (int n = 1; n <= 200; ++n) {
    CHECK(cyclotomic(n).degree() == euler_phi(n));
    IntPoly prod({1});
    for (int d = 1; d <= n; ++d)
      if (n % d == 0) prod = prod * cyclotomic(d);
    CHECK(prod == IntPoly::monomial(n) - IntPoly({1}));
  }
  const auto dm = (IntPoly::monomial(5) + IntPoly({3})).divmod(IntPoly({-1, 1}));
  CHECK(dm.remainder == IntPoly({4}));
}

TEST_CASE("balance") {
  CHECK(is_d_balanced(NGonSet(36, {25, 24, 13, 12, 1, 0}), 1));
  for (int n : {5, 12, 36})
    for (int d = 1; d < n; ++d) CHECK_FALSE(is_d_balanced(NGonSet(n, {3}), d));
  for (int p : {2, 3, 5, 7}) {
    std::vector<int> gon;
    for (int i = 0; i < p; ++i) gon.push_back(i * p);
    CHECK(is_d_balanced(NGonSet(p * p, gon), 1));
  }
}

TEST_CASE("perfect sum covers") {
  CHECK(perfect_sum_cover(NGonSet(4, {0, 1}), NGonSet(4, {0, 2})));
  CHECK_FALSE(perfect_sum_cover(NGonSet(4, {0, 1}), NGonSet(4, {0, 1})));
  CHECK(perfect_sum_cover(NGonSet(15, {0, 5, 10}), NGonSet(15, {0, 1, 2, 3, 4})));
  CHECK_THROWS_AS(perfect_sum_cover(NGonSet(6, {0, 1}), NGonSet(6, {0, 1})), Error);
  // A perfect cover of S and T is exactly the inseparability of -S and T.
  for (int n : {6, 8, 9, 12})
    for (int a = 2; a < n; ++a) {
      if (n % a) continue;
      for (const auto& s : pinned_subsets(n, a))
        for (const auto& t : pinned_subsets(n, n / a))
          CHECK(perfect_sum_cover(s, t) == !rotate_apart_pair(s.negated(), t).has_value());
    }
}

TEST_CASE("regular subpolygons") {
  CHECK(is_regular_subpolygon(NGonSet(36, {0, 12, 24})) == 3);
  CHECK(is_regular_subpolygon(NGonSet(36, {1, 13, 25})) == 3);
  CHECK_FALSE(is_regular_subpolygon(NGonSet(36, {25, 24, 13, 12, 1, 0})).has_value());
  CHECK_FALSE(is_regular_subpolygon(NGonSet(36, {10, 8, 6, 4, 2, 0})).has_value());
}

TEST_CASE("inseparable pairs of complementary size are balanced") {
  for (int n : {4, 9, 16}) {
    for (int a = 2; a < n; ++a) {
      if (n % a) continue;
      for (const auto& s : pinned_subsets(n, a))
        for (const auto& t : pinned_subsets(n, n / a)) {
          if (rotate_apart_pair(s, t)) continue;
          for (int d = 1; d < n; ++d) CHECK((is_d_balanced(s, d) || is_d_balanced(t, d)));
        }
    }
  }
}

TEST_CASE("no three pairwise inseparable root-size sets") {
  for (int s : {2, 3, 4}) {
    const int n = s * s;
    const auto sets = pinned_subsets(n, s);
    const std::size_t m = sets.size();
    std::vector<std::vector<char>> blocked(m, std::vector<char>(m, 0));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i; j < m; ++j) blocked[i][j] = blocked[j][i] = !rotate_apart_pair(sets[i], sets[j]).has_value();
    long long triangles = 0;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i; j < m; ++j) {
        if (!blocked[i][j]) continue;
        for (std::size_t k = j; k < m; ++k)
          if (blocked[i][k] && blocked[j][k]) ++triangles;
      }
    CHECK(triangles == 0);
  }
}
