#include <gtest/gtest.h>

#include <set>

#include "oracles.hpp"
#include "spectopo/enumerate.hpp"

using namespace spectopo;

namespace {

oracle::Bits bits(const Relation& r) {
  oracle::Bits b(r.size(), std::vector<bool>(r.size()));
  for (Elem i = 0; i < r.size(); ++i)
    for (Elem j = 0; j < r.size(); ++j) b[i][j] = r.test(i, j);
  return b;
}

/// Isomorphism classes of (order, specialization) pairs: every partial order
/// on n points, every transitive relation above it (respecting joins when
/// asked), reduced by the all-permutations minimum.
std::size_t oracle_spec_classes(std::size_t n, bool joins) {
  std::set<std::vector<bool>> classes;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << (n * n)); ++m) {
    const oracle::Bits leq = oracle::from_mask(n, m);
    if (!oracle::is_partial_order(leq)) continue;
    if (joins && !oracle::has_all_joins(leq)) continue;
    for (std::uint64_t k = 0; k < (std::uint64_t{1} << (n * n)); ++k) {
      const oracle::Bits s = oracle::from_mask(n, k);
      if (!oracle::transitive(s)) continue;
      bool ok = true;
      for (std::size_t a = 0; a < n && ok; ++a)
        for (std::size_t b = 0; b < n && ok; ++b) {
          if (leq[a][b] && !s[a][b]) ok = false;
          if (joins)
            for (std::size_t c = 0; c < n && ok; ++c)
              if (s[a][b] && s[c][b] && !s[static_cast<std::size_t>(oracle::lub(leq, a, c))][b]) ok = false;
        }
      if (ok) classes.insert(oracle::min_code({leq, s}));
    }
  }
  return classes.size();
}

std::string guard_code(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code() + witness_text(e.witness());
  }
  return "";
}

}  // namespace

TEST(EnumPosets, CountsMatchBruteForceUpToFour) {
  for (std::size_t n = 0; n <= 4; ++n) EXPECT_EQ(enum_posets(n).size(), oracle::count_posets(n)) << n;
}

TEST(EnumPosets, FrozenCountsAtFiveAndSix) {
  // 63 and the size-5 semilattice count were computed once by the same
  // brute-force oracles, which are too slow for every build; 318 is the
  // published number of unlabeled posets on six points.
  EXPECT_EQ(enum_posets(5).size(), 63u);
  EXPECT_EQ(enum_posets(6).size(), 318u);
}

TEST(EnumPosets, ValidPairwiseDistinctAndSorted) {
  for (std::size_t n = 1; n <= 5; ++n) {
    const auto all = enum_posets(n);
    std::vector<CanonCode> codes;
    for (const Poset& p : all) {
      EXPECT_TRUE(oracle::is_partial_order(bits(p.relation())));
      codes.push_back(canonical(p).code);
    }
    EXPECT_TRUE(std::is_sorted(codes.begin(), codes.end()));
    EXPECT_EQ(std::set<CanonCode>(codes.begin(), codes.end()).size(), codes.size());
  }
  EXPECT_EQ(enum_posets(4), enum_posets(4));
}

TEST(EnumJoinSemilattices, CountsMatchBruteForce) {
  EXPECT_TRUE(enum_join_semilattices(0).empty());
  for (std::size_t n = 1; n <= 4; ++n)
    EXPECT_EQ(enum_join_semilattices(n).size(), oracle::count_join_semilattices(n)) << n;
  EXPECT_EQ(enum_join_semilattices(5).size(), 15u);
}

TEST(EnumSpecializations, SmallBases) {
  EXPECT_EQ(enum_specializations(enum_posets(1)[0]).size(), 1u);
  // On the 2-chain: ≤ itself and the universal relation.
  for (const Poset& p : enum_posets(2))
    if (p.relation().count() == 3) { EXPECT_EQ(enum_specializations(p).size(), 2u); }
}

TEST(EnumSpecializations, CountsMatchFilterAllRelations) {
  for (std::size_t n = 1; n <= 3; ++n) {
    for (const Poset& p : enum_posets(n))
      EXPECT_EQ(enum_specializations(p).size(), oracle::count_specializations(bits(p.relation()), false));
    for (const JoinSemilattice& j : enum_join_semilattices(n))
      EXPECT_EQ(enum_specializations(j).size(),
                oracle::count_specializations(bits(order_from_join(j).relation()), true));
  }
}

TEST(EnumSpecializations, FormACompleteLatticeWithEndpoints) {
  for (std::size_t n = 1; n <= 4; ++n)
    for (const JoinSemilattice& j : enum_join_semilattices(n)) {
      const Relation leq = order_from_join(j).relation();
      const auto all = enum_specializations(j);
      auto has = [&](const Relation& r) { return std::find(all.begin(), all.end(), r) != all.end(); };
      EXPECT_TRUE(has(leq));
      Relation universal(n);
      for (Elem a = 0; a < n; ++a)
        for (Elem b = 0; b < n; ++b) universal.set(a, b);
      EXPECT_TRUE(has(universal));
      // Meets are intersections.
      for (const Relation& r : all) {
        EXPECT_TRUE(check_axioms(SpecSemilattice(j, r)).axioms_hold());
        for (const Relation& s : all) EXPECT_TRUE(has(r & s));
      }
    }
}

TEST(EnumSpecStructures, CountsMatchBruteForceUpToThree) {
  for (std::size_t n = 1; n <= 3; ++n) {
    EXPECT_EQ(enum_spec_posets(n).size(), oracle_spec_classes(n, false)) << n;
    EXPECT_EQ(enum_spec_semilattices(n).size(), oracle_spec_classes(n, true)) << n;
  }
}

TEST(EnumSpecStructures, FrozenCountsAtFour) {
  // Same oracle as above, run once at n = 4.
  EXPECT_EQ(enum_spec_posets(4).size(), 412u);
  EXPECT_EQ(enum_spec_semilattices(4).size(), 31u);
}

TEST(EnumSpecStructures, EverySemilatticeIsPrincipal) {
  for (std::size_t n = 1; n <= 4; ++n)
    for (const SpecSemilattice& s : enum_spec_semilattices(n)) EXPECT_TRUE(check_axioms(s).principal);
}

TEST(EnumMoore, LabeledCountsMatchFilterAllFamilies) {
  for (std::size_t m = 0; m <= 4; ++m) {
    const auto fams = enum_moore_families(m);
    const auto ref = oracle::moore_families(m);
    EXPECT_EQ(fams.size(), ref.size()) << m;
    std::vector<std::uint64_t> ours;
    for (const auto& x : fams) {
      std::uint64_t f = 0;
      for (Subset c : x.closed()) f |= std::uint64_t{1} << c;
      ours.push_back(f);
    }
    std::sort(ours.begin(), ours.end());
    EXPECT_EQ(ours, ref);
  }
  EXPECT_EQ(enum_moore_families(3).size(), 61u);
  EXPECT_EQ(enum_moore_families(4).size(), 2480u);
}

TEST(EnumTopologies, LabeledCountsMatchFilter) {
  for (std::size_t m = 0; m <= 4; ++m) {
    std::size_t ref = 0;
    for (std::uint64_t f : oracle::moore_families(m)) ref += oracle::union_closed_with_empty(f, m);
    EXPECT_EQ(enum_topologies(m).size(), ref) << m;
  }
  EXPECT_EQ(enum_topologies(3).size(), 29u);
  EXPECT_EQ(enum_topologies(4).size(), 355u);
}

TEST(Enumerate, SizeGuards) {
  EXPECT_EQ(guard_code([] { enum_posets(7); }), "SizeGuard(7,6)");
  EXPECT_EQ(guard_code([] { enum_join_semilattices(6); }), "SizeGuard(6,5)");
  EXPECT_EQ(guard_code([] { enum_spec_semilattices(5); }), "SizeGuard(5,4)");
  EXPECT_EQ(guard_code([] { enum_moore_families(5); }), "SizeGuard(5,4)");
  EXPECT_EQ(guard_code([] { enum_specializations(enum_posets(5)[0]); }), "SizeGuard(5,4)");
}

TEST(StrideSample, EvenlySpaced) {
  const std::vector<int> v = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  EXPECT_EQ(stride_sample(v, 4), (std::vector<int>{0, 2, 5, 7}));
  EXPECT_EQ(stride_sample(v, 20), v);
}
