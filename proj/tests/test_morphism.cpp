#include <gtest/gtest.h>

#include "oracles.hpp"
#include "spectopo/canonical.hpp"
#include "spectopo/enumerate.hpp"
#include "spectopo/morphism.hpp"
#include "structures.hpp"

using namespace spectopo;

namespace {

std::vector<Elem> identity(std::size_t n) {
  std::vector<Elem> v(n);
  for (Elem a = 0; a < n; ++a) v[a] = a;
  return v;
}

}  // namespace

TEST(VerifyMap, IdentityIsEmbeddingInBothModes) {
  const SpecSemilattice s = fx::nonadditive();
  const Certificate c = verify_map(s, s, identity(s.size()));
  EXPECT_TRUE(c.semilattice_mode);
  EXPECT_TRUE(c.is_embedding());
  EXPECT_TRUE(c.meets.holds);
  EXPECT_EQ(certificate_failures(c), "");
  const SpecPoset p = order_spec_reduct(s);
  const Certificate cp = verify_map(p, p, identity(p.size()));
  EXPECT_FALSE(cp.semilattice_mode);
  EXPECT_TRUE(cp.is_embedding());
}

TEST(VerifyMap, ForcedPosetModeOnSemilattices) {
  const SpecSemilattice s = fx::nonadditive();
  EXPECT_FALSE(verify_map(s, s, identity(4), MapKind::Poset).semilattice_mode);
  EXPECT_THROW(verify_map(order_spec_reduct(s), s, identity(4), MapKind::Semilattice), Error);
}

TEST(VerifyMap, ConstantMapFailsInjectivityAndE) {
  // Everything goes to c. Join-preserving and (M) hold trivially.
  const SpecSemilattice s = fx::nonadditive();
  const Certificate c = verify_map(s, s, {2, 2, 2, 2});
  EXPECT_TRUE(c.is_hom());
  EXPECT_FALSE(c.injective.holds);
  EXPECT_EQ(c.injective.witness, (std::vector<Elem>{0, 1}));
  // c ⊑ c but a ⋢ b.
  EXPECT_FALSE(c.e.holds);
  EXPECT_EQ(c.e.witness, (std::vector<Elem>{0, 1}));
  EXPECT_FALSE(c.is_embedding());
  EXPECT_EQ(certificate_failures(c), "injective(0,1), (E)(0,1)");
}

TEST(VerifyMap, JoinFailureWitness) {
  // Swap a and b on nonadditive is an automorphism; sending a,b to themselves and
  // c to 1 breaks a \/ b = c.
  const SpecSemilattice s = fx::nonadditive();
  EXPECT_TRUE(verify_map(s, s, {1, 0, 2, 3}).is_embedding());
  const Certificate c = verify_map(s, s, {0, 1, 3, 3});
  EXPECT_FALSE(c.structure_hom.holds);
  EXPECT_EQ(c.structure_hom.witness, (std::vector<Elem>{0, 1}));
}

TEST(VerifyMap, MFailureOnOrderPreservingMap) {
  // 1 ⊑ c in nonadditive; the identity into the same lattice with ⊑ = ≤ breaks (M).
  const SpecSemilattice s = fx::nonadditive();
  const SpecSemilattice plain(s.base(), order_from_join(s.base()).relation());
  const Certificate c = verify_map(s, plain, identity(4));
  EXPECT_TRUE(c.structure_hom.holds);
  EXPECT_FALSE(c.m.holds);
  EXPECT_EQ(c.m.witness, (std::vector<Elem>{3, 2}));
  // The other direction is a homomorphism but not an embedding.
  const Certificate back = verify_map(plain, s, identity(4));
  EXPECT_TRUE(back.is_hom());
  EXPECT_FALSE(back.e.holds);
}

TEST(VerifyMap, OrderEmbeddingMattersOnlyInPosetMode) {
  // Two-element antichain into a 2-chain, injective and order-preserving
  // but not reflecting.
  const SpecPoset anti(poset_from_pairs(Carrier({"x", "y"}), {}), Relation::identity(2));
  const Poset ch = fx::chain(2);
  const SpecPoset chain(ch, ch.relation());
  const Certificate c = verify_map(anti, chain, {0, 1});
  EXPECT_TRUE(c.is_hom());
  EXPECT_TRUE(c.injective.holds);
  EXPECT_FALSE(c.order_embedding.holds);
  EXPECT_FALSE(c.is_embedding());
}

TEST(VerifyMap, MeetsFlag) {
  // m3 into the powerset of {a,b,c}: a ∧ b = 0 in m3 but the images meet in
  // a nonempty set when 1 is sent to {a,b,c} and atoms to pairs.
  const SpecSemilattice m3 = fx::m3();
  const JoinSemilattice p3 = powerset_semilattice(Carrier({"x", "y", "z"}));
  const SpecSemilattice s3(p3, order_from_join(p3).relation());
  // 0 -> {}, a -> {x y}, b -> {y z}, c -> {x z}, 1 -> {x y z}
  const Certificate c = verify_map(m3, s3, {0, 3, 6, 5, 7});
  EXPECT_TRUE(c.is_embedding());
  EXPECT_FALSE(c.meets.holds);
  EXPECT_EQ(c.meets.witness, (std::vector<Elem>{1, 2}));
}

TEST(VerifyMap, InputValidation) {
  const SpecSemilattice s = fx::nonadditive();
  EXPECT_THROW(verify_map(s, s, {0, 1}), Error);
  EXPECT_THROW(verify_map(s, s, {0, 1, 2, 9}), Error);
}

TEST(Compose, AppliesFirstThenSecond) {
  EXPECT_EQ(compose({1, 2, 0}, {5, 6, 7}), (std::vector<Elem>{6, 7, 5}));
  EXPECT_THROW(compose({3}, {0, 1}), std::out_of_range);
}

TEST(VerifyMap, IsomorphismsOfEnumeratedStructuresAreEmbeddings) {
  // Random relabellings of every spec-semilattice of size 3 give embeddings
  // with full certificates, and composing back gives the identity.
  auto& g = oracle::rng();
  for (const SpecSemilattice& s : enum_spec_semilattices(3)) {
    std::vector<Elem> perm = identity(3);
    std::shuffle(perm.begin(), perm.end(), g);
    const SpecSemilattice t = permute(s, perm);
    // New element i is old perm[i], so old a goes to inv[a].
    std::vector<Elem> inv(3);
    for (Elem a = 0; a < 3; ++a) inv[perm[a]] = a;
    const Certificate c = verify_map(s, t, inv);
    EXPECT_TRUE(c.is_embedding()) << certificate_failures(c);
    EXPECT_TRUE(verify_map(t, s, perm).is_embedding());
    EXPECT_EQ(compose(inv, perm), identity(3));
  }
}
