#include <gtest/gtest.h>

#include <array>
#include <functional>

#include "oracles.hpp"
#include "spectopo/enumerate.hpp"
#include "spectopo/spec.hpp"
#include "structures.hpp"

using namespace spectopo;

namespace {

// Each law as a predicate over a full tuple; the reference witness is the
// least tuple, in odometer order, on which it fails.
template <class M>
std::optional<std::vector<Elem>> reference_witness(const M& m, int law) {
  const std::size_t n = m.size();
  static const std::array<int, 10> arity = {0, 2, 3, 3, 1, 3, 3, 4, 2, 3};
  const int k = arity[static_cast<std::size_t>(law)];
  auto j = [&](Elem a, Elem b) -> Elem {
    if constexpr (SpecJoinModel<M>)
      return m.join(a, b);
    else
      return 0;
  };
  std::vector<Elem> t(static_cast<std::size_t>(k), 0);
  std::size_t total = 1;
  for (int i = 0; i < k; ++i) total *= n;
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rest = idx;
    for (int i = k - 1; i >= 0; --i) {
      t[static_cast<std::size_t>(i)] = rest % n;
      rest /= n;
    }
    bool ok = true;
    switch (law) {
      case 1: ok = !m.leq(t[0], t[1]) || m.sqle(t[0], t[1]); break;
      case 2: ok = !(m.sqle(t[0], t[1]) && m.sqle(t[1], t[2])) || m.sqle(t[0], t[2]); break;
      case 3: ok = !(m.sqle(t[0], t[2]) && m.sqle(t[1], t[2])) || m.sqle(j(t[0], t[1]), t[2]); break;
      case 4: ok = m.sqle(t[0], t[0]); break;
      case 5: ok = !(m.sqle(t[0], t[1]) && m.leq(t[1], t[2])) || m.sqle(t[0], t[2]); break;
      case 6: ok = !(m.leq(t[0], t[1]) && m.sqle(t[1], t[2])) || m.sqle(t[0], t[2]); break;
      case 7: ok = !(m.sqle(t[0], t[1]) && m.sqle(t[2], t[3])) || m.sqle(j(t[0], t[2]), j(t[1], t[3])); break;
      case 8: ok = !m.sqle(t[0], t[1]) || m.sqle(j(t[0], t[1]), t[1]); break;
      case 9: ok = !m.sqle(t[0], t[1]) || m.sqle(j(t[0], t[2]), j(t[1], t[2])); break;
    }
    if (!ok) return t;
  }
  return std::nullopt;
}

template <class M>
void expect_laws_match_reference(const M& m) {
  for (int law = 1; law <= 9; ++law) {
    const LawVerdict v = check_law(m, law);
    if (!v.checked) {
      EXPECT_FALSE(SpecJoinModel<M>);
      continue;
    }
    const auto ref = reference_witness(m, law);
    EXPECT_EQ(v.holds, !ref.has_value()) << "law " << law;
    if (ref) { EXPECT_EQ(v.witness, *ref) << "law " << law; }
  }
}

Relation random_relation(std::size_t n, const Relation& base, std::mt19937& g) {
  Relation r = base;
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      if (g() % 3 == 0) r.set(a, b, !r.test(a, b));
  return r;
}

}  // namespace

TEST(Laws, DiamondFailsS3WithWitnessAB0) {
  const SpecSemilattice s = fx::diamond();
  const AxiomReport r = check_axioms(s);
  EXPECT_TRUE(r.law(1).holds);
  EXPECT_TRUE(r.law(2).holds);
  ASSERT_FALSE(r.law(3).holds);
  EXPECT_EQ(r.law(3).witness, (std::vector<Elem>{1, 2, 0}));
  EXPECT_EQ(s.join(1, 2), Elem{3});
  EXPECT_FALSE(r.axioms_hold());
}

TEST(Laws, DiamondAsPosetIsValidButNotPrincipal) {
  const AxiomReport r = check_axioms(fx::diamond_poset());
  EXPECT_TRUE(r.axioms_hold());
  EXPECT_FALSE(r.law(3).checked);
  EXPECT_FALSE(r.principal);
  EXPECT_EQ(r.nonprincipal_at, Elem{0});
}

TEST(Laws, Chain4PassesAll) {
  const AxiomReport r = check_axioms(fx::chain4());
  for (int i = 1; i <= 9; ++i) EXPECT_TRUE(r.law(i).holds) << i;
}

TEST(Laws, OrderAsSpecializationPassesEverything) {
  for (const Poset& p : enum_posets(4)) {
    const AxiomReport r = check_axioms(SpecPoset(p, p.relation()));
    EXPECT_TRUE(r.all_checked_hold());
    EXPECT_TRUE(r.principal);
    for (Elem b = 0; b < p.size(); ++b) EXPECT_EQ(r.kmap(b), b);
  }
}

TEST(Laws, AgreeWithReferenceOnRandomRelations) {
  auto& g = oracle::rng();
  for (std::size_t n = 1; n <= 4; ++n) {
    for (const Poset& p : enum_posets(n))
      for (int i = 0; i < 6; ++i) expect_laws_match_reference(SpecPoset(p, random_relation(n, p.relation(), g)));
    for (const JoinSemilattice& j : enum_join_semilattices(n))
      for (int i = 0; i < 12; ++i)
        expect_laws_match_reference(SpecSemilattice(j, random_relation(n, order_from_join(j).relation(), g)));
  }
}

TEST(Laws, DerivedLawsHoldWheneverAxiomsDo) {
  for (std::size_t n = 1; n <= 4; ++n) {
    for (const SpecSemilattice& s : enum_spec_semilattices(n)) EXPECT_TRUE(check_axioms(s).all_checked_hold());
    for (const SpecPoset& s : enum_spec_posets(n)) EXPECT_TRUE(check_axioms(s).all_checked_hold());
  }
}

TEST(KMap, NonadditiveValues) {
  const SpecSemilattice s = fx::nonadditive();
  const KMap k = compute_kmap(s);
  ASSERT_TRUE(k.total());
  EXPECT_EQ(k.values(), (std::vector<Elem>{0, 1, 3, 3}));
  EXPECT_TRUE(k.characterization_holds);
}

TEST(KMap, PartialMapThrowsOnUse) {
  const KMap k = compute_kmap(fx::diamond_poset());
  EXPECT_FALSE(k.total());
  EXPECT_EQ(k.undefined(), (std::vector<Elem>{0, 1, 2}));
  EXPECT_THROW(k(0), Error);
  EXPECT_EQ(k(3), Elem{3});
}

TEST(KMap, CharacterizationOnEveryPrincipalStructure) {
  for (std::size_t n = 1; n <= 4; ++n)
    for (const SpecPoset& s : enum_spec_posets(n)) {
      const KMap k = compute_kmap(s);
      EXPECT_TRUE(k.characterization_holds);
      for (Elem b = 0; b < n; ++b) {
        if (!k.k[b]) continue;
        const Elem kb = *k.k[b];
        EXPECT_TRUE(s.leq(b, kb));
        EXPECT_EQ(*k.k[kb], kb);
        for (Elem a = 0; a < n; ++a) {
          EXPECT_EQ(s.sqle(a, b), s.leq(a, kb));
          EXPECT_EQ(s.sqle(a, b), s.sqle(a, kb));
          if (k.k[a]) { EXPECT_EQ(s.sqle(a, b), s.leq(*k.k[a], kb)); }
          if (s.leq(a, b) && k.k[a]) { EXPECT_TRUE(s.leq(*k.k[a], kb)); }
        }
      }
    }
}

TEST(KMap, TotalOnEveryEnumeratedSpecSemilattice) {
  for (std::size_t n = 1; n <= 4; ++n)
    for (const SpecSemilattice& s : enum_spec_semilattices(n)) EXPECT_TRUE(compute_kmap(s).total());
}

TEST(Additivity, NonadditiveFailsAtAB) {
  const SpecSemilattice s = fx::nonadditive();
  const AdditivityVerdict v = is_additive(s, compute_kmap(s));
  EXPECT_FALSE(v.additive);
  EXPECT_EQ(v.witness, (std::vector<Elem>{0, 1}));
  EXPECT_FALSE(v.fixed_point_form);
}

TEST(Additivity, Chain4Holds) {
  const SpecSemilattice s = fx::chain4();
  const KMap k = compute_kmap(s);
  EXPECT_EQ(k.values(), (std::vector<Elem>{1, 1, 3, 3}));
  EXPECT_TRUE(is_additive(s, k).additive);
}

TEST(Additivity, AgreesWithFixedPointForm) {
  for (std::size_t n = 1; n <= 4; ++n)
    for (const SpecSemilattice& s : enum_spec_semilattices(n)) {
      const AdditivityVerdict v = is_additive(s, compute_kmap(s));
      EXPECT_EQ(v.additive, v.fixed_point_form);
    }
}

TEST(Cech, NonIdempotentOperatorOnChain) {
  const SpecPoset s = from_operator(fx::chain(3), {1, 2, 2}, false);
  const CechVerdict c = cech_check(s);
  EXPECT_TRUE(c.poset);
  EXPECT_FALSE(check_law(s, 2).holds);
  EXPECT_EQ(check_law(s, 2).witness, (std::vector<Elem>{2, 1, 0}));
}

TEST(Cech, EmptyRelationFailsS1) {
  const Poset p = fx::chain(2);
  const CechVerdict c = cech_check(SpecPoset(p, Relation(2)));
  EXPECT_FALSE(c.poset);
  EXPECT_EQ(c.failed_laws.front(), 1);
}

TEST(Cech, ValidStructuresAreCech) {
  for (const SpecSemilattice& s : enum_spec_semilattices(3)) {
    const CechVerdict c = cech_check(s);
    EXPECT_TRUE(c.poset);
    EXPECT_TRUE(c.semilattice.value());
  }
}

TEST(Close, ChainWithReversePairBecomesUniversal) {
  const Poset p = fx::chain(2);
  EXPECT_EQ(close_specialization(p, Relation::from_pairs(2, {{1, 0}})), Relation::universal(2));
  EXPECT_EQ(close_specialization(p, Relation(2)), p.relation());
}

TEST(Close, IsIdempotentAndLeast) {
  for (const SpecSemilattice& s : enum_spec_semilattices(3))
    EXPECT_EQ(close_specialization(s.base(), s.specialization()), s.specialization());
  auto& g = oracle::rng();
  for (const JoinSemilattice& j : enum_join_semilattices(4)) {
    const Relation gen = random_relation(4, Relation(4), g);
    const Relation c = close_specialization(j, gen);
    EXPECT_TRUE(check_axioms(SpecSemilattice(j, c)).axioms_hold());
    for (const Relation& r : enum_specializations(j))
      if (gen.subset_of(r)) { EXPECT_TRUE(c.subset_of(r)); }
  }
}

TEST(FromOperator, Examples) {
  const Poset p = fx::chain(3);
  EXPECT_EQ(from_operator(p, {0, 1, 2}).specialization(), p.relation());
  // k(0) = 0, everything else goes to the top.
  const JoinSemilattice j = joins_from_order(p);
  const SpecSemilattice s = from_operator(j, {0, 2, 2});
  for (Elem a = 0; a < 3; ++a)
    for (Elem b = 0; b < 3; ++b) EXPECT_EQ(s.sqle(a, b), b != 0 || a == 0);
  try {
    from_operator(p, {1, 0, 2});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "NotIsotone");
  }
  try {
    from_operator(p, {0, 0, 2});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "NotExtensive");
    EXPECT_EQ(e.witness(), std::vector<Elem>{1});
  }
  try {
    from_operator(p, {1, 2, 2});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "NotIdempotent");
  }
}

TEST(FromOperator, BijectionWithPrincipalStructures) {
  for (std::size_t n = 1; n <= 4; ++n) {
    for (const SpecPoset& s : enum_spec_posets(n)) {
      const KMap k = compute_kmap(s);
      if (!k.total()) continue;
      const SpecPoset back = from_operator(s.base(), k.values());
      EXPECT_EQ(back, s);
      EXPECT_EQ(compute_kmap(back).values(), k.values());
    }
    for (const SpecSemilattice& s : enum_spec_semilattices(n))
      EXPECT_EQ(from_operator(s.base(), compute_kmap(s).values()), s);
  }
}

TEST(FromHom, Examples) {
  const SpecSemilattice e = fx::nonadditive();
  const JoinSemilattice& s = e.base();
  EXPECT_EQ(from_hom(s, s, {0, 1, 2, 3}).specialization(), order_from_join(s).relation());
  // Collapse {c, 1}: the quotient a, b, c~1.
  const JoinSemilattice t =
      joins_from_order(poset_from_pairs(Carrier({"a", "b", "c1"}), {{0, 2}, {1, 2}}));
  const SpecSemilattice h = from_hom(s, t, {0, 1, 2, 2});
  EXPECT_TRUE(h.sqle(3, 2));
  EXPECT_TRUE(check_axioms(h).axioms_hold());
  const JoinSemilattice one = joins_from_order(fx::chain(1));
  EXPECT_EQ(from_hom(s, one, {0, 0, 0, 0}).specialization(), Relation::universal(4));
  EXPECT_THROW(from_hom(s, t, {0, 1, 1, 2}), Error);
}

TEST(FromTolerance, Examples) {
  const Carrier g({"1", "2", "3"});
  const SpecSemilattice id = from_tolerance(g, Relation::identity(3));
  for (Elem a = 0; a < 8; ++a)
    for (Elem b = 0; b < 8; ++b) EXPECT_EQ(id.sqle(a, b), subset_of(a, b));
  const SpecSemilattice all = from_tolerance(g, Relation::universal(3));
  for (Elem a = 0; a < 8; ++a)
    for (Elem b = 0; b < 8; ++b) EXPECT_EQ(all.sqle(a, b), a == 0 || b != 0);
  Relation path = Relation::identity(3);
  path.set(0, 1);
  path.set(1, 0);
  path.set(1, 2);
  path.set(2, 1);
  const SpecSemilattice p = from_tolerance(g, path);
  EXPECT_TRUE(p.sqle(0b001, 0b010));
  EXPECT_FALSE(p.sqle(0b010, 0b001));
  EXPECT_TRUE(check_axioms(p).axioms_hold());
  Relation bad = Relation::identity(3);
  bad.set(0, 1);
  EXPECT_THROW(from_tolerance(g, bad), Error);
  EXPECT_THROW(from_tolerance(Carrier::numbered(6), Relation::identity(6)), Error);
}

TEST(FromWeight, CountingMeasureBreaksS3) {
  const Carrier g({"1", "2"});
  const WeightResult w = from_weight(g, {0b00, 0b01, 0b10, 0b11}, {{0, 1}, {1, 1}, {1, 1}, {2, 1}});
  EXPECT_TRUE(check_axioms(w.poset).axioms_hold());
  EXPECT_EQ(w.advisory, WeightAdvisory::S3Fails);
  // {1} ⊑ {1} and {2} ⊑ {1} by cardinality, but {1,2} is heavier than {1}.
  EXPECT_EQ(w.s3_witness, (std::vector<Elem>{1, 2, 1}));
  EXPECT_FALSE(w.semilattice.has_value());
}

TEST(FromWeight, TwoValuedMeasureGivesSemilattice) {
  const Carrier g({"1", "2"});
  const WeightResult w = from_weight(g, {0b00, 0b01, 0b10, 0b11}, {{0, 1}, {1, 1}, {1, 1}, {1, 1}});
  ASSERT_TRUE(w.semilattice.has_value());
  EXPECT_TRUE(check_axioms(*w.semilattice).axioms_hold());
  const WeightResult flat = from_weight(g, {0b00, 0b01, 0b10, 0b11}, {{3, 2}, {3, 2}, {6, 4}, {3, 2}});
  EXPECT_EQ(flat.poset.specialization(), Relation::universal(4));
}

TEST(FromWeight, Rejections) {
  const Carrier g({"1", "2"});
  try {
    from_weight(g, {0b00, 0b01}, {{1, 1}, {0, 1}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "NotMonotone");
  }
  EXPECT_THROW(from_weight(g, {0b00, 0b00}, {{0, 1}, {0, 1}}), Error);
  EXPECT_THROW(from_weight(g, {0b00}, {{0, 0}}), Error);
  EXPECT_EQ(from_weight(g, {0b01, 0b10}, {{1, 1}, {1, 1}}).advisory, WeightAdvisory::NotUnionClosed);
}

TEST(SpecLattice, FinestCoarsestMeetJoin) {
  const SpecSemilattice s = fx::chain4();
  const SpecSemilattice top(s.base(), finest_specialization(s.base()));
  const SpecSemilattice bottom(s.base(), coarsest_specialization(s.base()));
  EXPECT_TRUE(check_axioms(top).axioms_hold());
  EXPECT_TRUE(check_axioms(bottom).axioms_hold());
  const std::vector<SpecSemilattice> pair1{s, top};
  EXPECT_EQ(meet_specializations<SpecSemilattice>(pair1), s);
  const std::vector<SpecSemilattice> pair2{bottom, bottom};
  EXPECT_EQ(join_specializations<SpecSemilattice>(pair2), bottom);

  const auto all = enum_specializations(s.base());
  for (const Relation& r1 : all)
    for (const Relation& r2 : all) {
      const std::vector<SpecSemilattice> two{SpecSemilattice(s.base(), r1), SpecSemilattice(s.base(), r2)};
      const SpecSemilattice m = meet_specializations<SpecSemilattice>(two);
      EXPECT_EQ(m.specialization(), r1 & r2);
      const SpecSemilattice j = join_specializations<SpecSemilattice>(two);
      EXPECT_TRUE((r1 | r2).subset_of(j.specialization()));
      EXPECT_TRUE(check_axioms(j).axioms_hold());
    }
}

TEST(SpecLattice, RejectsMixedBases) {
  const std::vector<SpecSemilattice> mixed{fx::chain4(), fx::nonadditive()};
  try {
    meet_specializations<SpecSemilattice>(mixed);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "BaseMismatch");
  }
}

TEST(Reduct, EverySemilatticeReductIsASpecPoset) {
  EXPECT_EQ(order_spec_reduct(fx::chain4()).base(), fx::chain(4));
  for (std::size_t n = 1; n <= 4; ++n)
    for (const SpecSemilattice& s : enum_spec_semilattices(n))
      EXPECT_TRUE(check_axioms(order_spec_reduct(s)).axioms_hold());
}
