#pragma once

// Finite closure spaces, their closure operators, the structures S(X) and P(X),
// subspaces, continuity, closure posets and the ternary model M(X).

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "spectopo/morphism.hpp"
#include "spectopo/powerset.hpp"
#include "spectopo/spec.hpp"

namespace spectopo {

class ClosureSpace;
ClosureSpace complete_family(Carrier ground, std::vector<Subset> sets);

/// A finite ground set with an intersection-closed family of closed sets that
/// contains the ground set. Closed sets are kept sorted and duplicate-free, so
/// equality of spaces is equality of the stored data.
class ClosureSpace {
 public:
  ClosureSpace() : closed_{0} {}

  /// Validates an explicit family (X present, pairwise ∩-closed).
  static ClosureSpace from_family(Carrier ground, std::vector<Subset> sets) {
    if (ground.size() > kMaxGround) throw make_error("GroundTooLarge", {ground.size(), kMaxGround});
    const Subset top = full_set(ground.size());
    ClosureSpace x;
    x.ground_ = std::move(ground);
    x.closed_ = normalize(std::move(sets));
    for (Elem i = 0; i < x.closed_.size(); ++i)
      if (!subset_of(x.closed_[i], top)) throw make_error("OutOfRange", {i});
    if (!x.is_closed(top)) throw make_error("GroundNotClosed", {});
    for (Elem i = 0; i < x.closed_.size(); ++i)
      for (Elem j = i + 1; j < x.closed_.size(); ++j)
        if (!x.is_closed(x.closed_[i] & x.closed_[j])) throw make_error("NotIntersectionClosed", {i, j});
    return x;
  }

  const Carrier& ground() const noexcept { return ground_; }
  std::size_t points() const noexcept { return ground_.size(); }
  Subset full() const noexcept { return full_set(ground_.size()); }
  const std::vector<Subset>& closed() const noexcept { return closed_; }

  bool is_closed(Subset s) const { return std::binary_search(closed_.begin(), closed_.end(), s); }

  /// Intersection of all closed supersets of a.
  Subset closure_of(Subset a) const {
    Subset out = full();
    for (Subset c : closed_)
      if (subset_of(a, c)) out &= c;
    return out;
  }

  bool operator==(const ClosureSpace&) const = default;

 private:
  friend ClosureSpace complete_family(Carrier, std::vector<Subset>);

  static std::vector<Subset> normalize(std::vector<Subset> sets) {
    std::sort(sets.begin(), sets.end());
    sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
    return sets;
  }

  Carrier ground_;
  std::vector<Subset> closed_;
};

/// Least family containing sets and X that is closed under intersections.
/// At finite scale pairwise intersection plus X gives all intersections.
inline ClosureSpace complete_family(Carrier ground, std::vector<Subset> sets) {
  if (ground.size() > kMaxGround) throw make_error("GroundTooLarge", {ground.size(), kMaxGround});
  const Subset top = full_set(ground.size());
  for (Elem i = 0; i < sets.size(); ++i)
    if (!subset_of(sets[i], top)) throw make_error("OutOfRange", {i});
  sets.push_back(top);
  sets = ClosureSpace::normalize(std::move(sets));
  while (true) {
    std::vector<Subset> fresh;
    for (std::size_t i = 0; i < sets.size(); ++i)
      for (std::size_t j = i + 1; j < sets.size(); ++j) {
        const Subset m = sets[i] & sets[j];
        if (!std::binary_search(sets.begin(), sets.end(), m)) fresh.push_back(m);
      }
    if (fresh.empty()) break;
    sets.insert(sets.end(), fresh.begin(), fresh.end());
    sets = ClosureSpace::normalize(std::move(sets));
  }
  ClosureSpace x;
  x.ground_ = std::move(ground);
  x.closed_ = std::move(sets);
  return x;
}

struct TopologyTag {
  bool is_topology = false;
  bool empty_closed = false;
  /// Least pair of closed sets whose union is not closed.
  std::optional<std::pair<Subset, Subset>> union_witness;
};

inline TopologyTag topology_tag(const ClosureSpace& x) {
  TopologyTag t;
  t.empty_closed = x.is_closed(0);
  const auto& f = x.closed();
  for (std::size_t i = 0; i < f.size() && !t.union_witness; ++i)
    for (std::size_t j = i + 1; j < f.size(); ++j)
      if (!x.is_closed(f[i] | f[j])) {
        t.union_witness = std::make_pair(f[i], f[j]);
        break;
      }
  t.is_topology = t.empty_closed && !t.union_witness;
  return t;
}

// ---------------------------------------------------------------------------
// S(X) and P(X)

/// S(X) (with joins) or P(X) (without) evaluated on demand over a space;
/// element index == subset mask. Nothing is materialized, so the ground may
/// be as large as a mask allows.
template <bool Joins>
class PowersetSpec {
 public:
  explicit PowersetSpec(ClosureSpace x) : x_(std::move(x)) {
    if (x_.points() >= 32) throw make_error("GroundTooLarge", {x_.points(), 31});
  }

  const ClosureSpace& space() const noexcept { return x_; }
  std::size_t size() const noexcept { return std::size_t{1} << x_.points(); }
  bool leq(Elem a, Elem b) const { return subset_of(a, b); }
  bool sqle(Elem a, Elem b) const { return subset_of(a, x_.closure_of(b)); }
  Elem join(Elem a, Elem b) const
    requires Joins
  {
    return a | b;
  }
  std::optional<Elem> meet(Elem a, Elem b) const { return a & b; }
  std::string name(Elem a) const { return subset_name(x_.ground(), a); }

 private:
  ClosureSpace x_;
};

using SModel = PowersetSpec<true>;
using PModel = PowersetSpec<false>;

struct SpecOfSpace {
  SpecSemilattice s;
  SpecPoset p;
};

/// Materialized S(X) and P(X); a ⊑ b iff a ⊆ K b.
inline SpecOfSpace spec_of(const ClosureSpace& x, std::size_t guard = kDefaultPowersetGuard) {
  check_ground_guard(x.points(), guard);
  JoinSemilattice ps = powerset_semilattice(x.ground());
  Relation r(ps.size());
  for (Elem b = 0; b < ps.size(); ++b) {
    const Subset kb = x.closure_of(b);
    for (Elem a = 0; a < ps.size(); ++a) r.set(a, b, subset_of(a, kb));
  }
  Poset order = order_from_join(ps);
  return {SpecSemilattice(std::move(ps), r), SpecPoset(std::move(order), r)};
}

// ---------------------------------------------------------------------------
// Subspaces

struct Subspace {
  ClosureSpace space;
  /// points[i] is the index in the parent ground of subspace point i.
  std::vector<Elem> points;

  Subset lift(Subset s) const {
    Subset out = 0;
    for (Elem i = 0; i < points.size(); ++i)
      if (contains(s, i)) out |= Subset{1} << points[i];
    return out;
  }
  Subset restrict(Subset s) const {
    Subset out = 0;
    for (Elem i = 0; i < points.size(); ++i)
      if (contains(s, points[i])) out |= Subset{1} << i;
    return out;
  }
};

/// Closed sets {z ∩ c | c closed}, re-indexed to the points of z.
inline Subspace subspace(const ClosureSpace& x, Subset z) {
  if (!subset_of(z, x.full())) throw make_error("OutOfRange", {});
  Subspace out;
  std::vector<std::string> names;
  for (Elem p = 0; p < x.points(); ++p)
    if (contains(z, p)) {
      out.points.push_back(p);
      names.push_back(x.ground().name(p));
    }
  std::vector<Subset> sets;
  for (Subset c : x.closed()) sets.push_back(out.restrict(c & z));
  out.space = ClosureSpace::from_family(Carrier(std::move(names)), std::move(sets));
  return out;
}

// ---------------------------------------------------------------------------
// Maps between spaces

struct PointMap {
  ClosureSpace from;
  ClosureSpace to;
  std::vector<Elem> send;

  void validate() const {
    if (send.size() != from.points()) throw make_error("SizeMismatch", {from.points(), send.size()});
    for (Elem p = 0; p < send.size(); ++p)
      if (send[p] >= to.points()) throw make_error("OutOfRange", {p});
  }
  Subset image(Subset a) const {
    Subset out = 0;
    for (Elem p = 0; p < send.size(); ++p)
      if (contains(a, p)) out |= Subset{1} << send[p];
    return out;
  }
  Subset preimage(Subset c) const {
    Subset out = 0;
    for (Elem p = 0; p < send.size(); ++p)
      if (contains(c, send[p])) out |= Subset{1} << p;
    return out;
  }
  /// The image function on subsets as an index map P(X) -> P(Y).
  std::vector<Elem> image_function() const {
    std::vector<Elem> out(std::size_t{1} << from.points());
    for (Subset a = 0; a < out.size(); ++a) out[a] = image(a);
    return out;
  }
};

struct ContinuityVerdict {
  bool continuous = false;
  /// A closed set of the target whose preimage is not closed.
  std::optional<Subset> closed_witness;
  /// A subset z of the source with φ(Kz) ⊄ Kφ(z).
  std::optional<Subset> operator_witness;
};

/// Computes continuity by the preimage criterion and by the image-operator
/// criterion; the two must agree.
inline ContinuityVerdict is_continuous(const PointMap& f) {
  f.validate();
  ContinuityVerdict v;
  for (Subset c : f.to.closed())
    if (!f.from.is_closed(f.preimage(c))) {
      v.closed_witness = c;
      break;
    }
  for (Subset z = 0; z <= f.from.full(); ++z)
    if (!subset_of(f.image(f.from.closure_of(z)), f.to.closure_of(f.image(z)))) {
      v.operator_witness = z;
      break;
    }
  if (v.closed_witness.has_value() != v.operator_witness.has_value())
    throw std::logic_error("continuity criteria disagree");
  v.continuous = !v.closed_witness;
  return v;
}

struct MapVerdict {
  bool holds = true;
  std::optional<Subset> witness;
};

/// Image of every closed set is closed.
inline MapVerdict is_closed_map(const PointMap& f) {
  f.validate();
  for (Subset c : f.from.closed())
    if (!f.to.is_closed(f.image(c))) return {false, c};
  return {};
}

/// Image of every open set is open; openness is taken through complements,
/// so the target must be a topology.
inline MapVerdict is_open_map(const PointMap& f) {
  f.validate();
  if (!topology_tag(f.to).is_topology) throw make_error("OpenMapNeedsTopology", {});
  for (Subset c : f.from.closed()) {
    const Subset open = f.from.full() & ~c;
    if (!f.to.is_closed(f.to.full() & ~f.image(open))) return {false, open};
  }
  return {};
}

/// Injective, and the preimages of the closed sets of the target are exactly
/// the closed sets of the source (a homeomorphism onto the image subspace).
inline bool is_space_embedding(const PointMap& f) {
  f.validate();
  for (Elem p = 0; p < f.send.size(); ++p)
    for (Elem q = p + 1; q < f.send.size(); ++q)
      if (f.send[p] == f.send[q]) return false;
  std::vector<Subset> pre;
  for (Subset c : f.to.closed()) pre.push_back(f.preimage(c));
  std::sort(pre.begin(), pre.end());
  pre.erase(std::unique(pre.begin(), pre.end()), pre.end());
  return pre == f.from.closed();
}

struct ContinuityEquivalence {
  bool continuous = false;
  bool s_hom = false;
  bool p_hom = false;
  bool space_embedding = false;
  bool s_embedding = false;
  bool p_embedding = false;
  /// (M) witness pair of subsets when the image function is not a homomorphism.
  std::vector<Elem> m_witness;

  bool homs_agree() const { return continuous == s_hom && s_hom == p_hom; }
  bool embeddings_agree() const { return space_embedding == s_embedding && s_embedding == p_embedding; }
  bool agree() const { return homs_agree() && embeddings_agree(); }
};

/// Continuity versus the image function being a homomorphism S(X)->S(Y) and
/// P(X)->P(Y), and the same for embeddings.
inline ContinuityEquivalence continuity_equivalence(const PointMap& f, std::size_t guard = 4) {
  f.validate();
  check_ground_guard(f.from.points(), guard);
  check_ground_guard(f.to.points(), guard);
  const auto img = f.image_function();
  const SModel sx(f.from), sy(f.to);
  const PModel px(f.from), py(f.to);
  const Certificate cs = verify_map(sx, sy, img, MapKind::Semilattice);
  const Certificate cp = verify_map(px, py, img, MapKind::Poset);
  ContinuityEquivalence r;
  r.continuous = is_continuous(f).continuous;
  r.s_hom = cs.is_hom();
  r.p_hom = cp.is_hom();
  r.m_witness = cs.m.witness;
  r.space_embedding = is_space_embedding(f);
  r.s_embedding = cs.is_embedding();
  r.p_embedding = cp.is_embedding();
  return r;
}

// ---------------------------------------------------------------------------
// Closure posets and semilattices

template <class Base>
struct ClosurePoset {
  Base base;
  std::vector<Elem> k;
};

template <class Base>
ClosurePoset<Base> make_closure_poset(Base base, std::vector<Elem> k) {
  detail::check_operator(base, k, true);
  return {std::move(base), std::move(k)};
}

struct ClosureContinuity {
  bool continuous = false;
  /// Least a with ψ(K a) not below K ψ(a).
  std::optional<Elem> witness;
  bool spec_hom = false;
};

/// ψ(K_P a) <= K_Q ψ(a) for all a, checked against ψ being a homomorphism of
/// the associated specialization structures.
template <class Base>
ClosureContinuity closure_poset_continuity(const std::vector<Elem>& psi, const ClosurePoset<Base>& p,
                                           const ClosurePoset<Base>& q) {
  const std::size_t n = p.base.size();
  if (psi.size() != n) throw make_error("SizeMismatch", {n, psi.size()});
  for (Elem a = 0; a < n; ++a)
    if (psi[a] >= q.base.size()) throw make_error("OutOfRange", {a});
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) {
      bool ok = true;
      if constexpr (requires { p.base.join(a, b); })
        ok = psi[p.base.join(a, b)] == q.base.join(psi[a], psi[b]);
      else
        ok = !p.base.leq(a, b) || q.base.leq(psi[a], psi[b]);
      if (!ok) throw make_error("NotMorphism", {a, b});
    }
  ClosureContinuity r;
  r.continuous = true;
  for (Elem a = 0; a < n; ++a)
    if (!q.base.leq(psi[p.k[a]], q.k[psi[a]])) {
      r.continuous = false;
      r.witness = a;
      break;
    }
  const auto sp = from_operator(p.base, p.k);
  const auto sq = from_operator(q.base, q.k);
  r.spec_hom = verify_map(sp, sq, psi).is_hom();
  if (r.spec_hom != r.continuous) throw std::logic_error("closure-poset continuity disagrees with homomorphism");
  return r;
}

// ---------------------------------------------------------------------------
// The correspondence between closure spaces and principal structures on P(X)

struct ClosureRoundTrip {
  bool principal = false;
  bool roundtrip = false;
  bool additive = false;
  /// a ⊑ ∅ implies a = ∅.
  bool strict_empty = false;
  bool is_topology = false;
};

inline ClosureRoundTrip closure_roundtrip(const ClosureSpace& x, std::size_t guard = 4) {
  check_ground_guard(x.points(), guard);
  const SpecOfSpace sp = spec_of(x, guard);
  const KMap k = compute_kmap(sp.s);
  ClosureRoundTrip r;
  r.principal = k.total();
  r.is_topology = topology_tag(x).is_topology;
  if (!r.principal) return r;
  std::vector<Subset> fixed;
  for (Elem s = 0; s < sp.s.size(); ++s)
    if (k(s) == s) fixed.push_back(s);
  r.roundtrip = ClosureSpace::from_family(x.ground(), fixed) == x;
  r.additive = is_additive(sp.s, k).additive;
  r.strict_empty = true;
  for (Elem a = 1; a < sp.s.size(); ++a)
    if (sp.s.sqle(a, 0)) r.strict_empty = false;
  return r;
}

// ---------------------------------------------------------------------------
// The ternary model M(X) = (P(X), ∪, R) with R(a; b, c) iff a ⊆ Kb ∪ Kc.

class TernaryModel {
 public:
  explicit TernaryModel(const ClosureSpace& x, std::size_t guard = 4) : x_(x) {
    check_ground_guard(x.points(), guard);
    const std::size_t n = size();
    std::vector<Subset> k(n);
    for (Subset s = 0; s < n; ++s) k[s] = x.closure_of(s);
    table_.assign(n * n * n, 0);
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b)
        for (Elem c = 0; c < n; ++c) table_[(a * n + b) * n + c] = subset_of(a, k[b] | k[c]) ? 1 : 0;
  }

  const ClosureSpace& space() const noexcept { return x_; }
  std::size_t size() const noexcept { return std::size_t{1} << x_.points(); }
  bool leq(Elem a, Elem b) const { return subset_of(a, b); }
  Elem join(Elem a, Elem b) const { return a | b; }
  bool r(Elem a, Elem b, Elem c) const { return table_[(a * size() + b) * size() + c] != 0; }
  std::string name(Elem a) const { return subset_name(x_.ground(), a); }

 private:
  ClosureSpace x_;
  std::vector<std::uint8_t> table_;
};

inline TernaryModel ternary_model(const ClosureSpace& x, std::size_t guard = 4) { return TernaryModel(x, guard); }

}  // namespace spectopo
