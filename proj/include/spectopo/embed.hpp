#pragma once

// Constructive embeddings: congruence quotients, principalization, zero
// adjunction, topologization and the downset embedding of posets. Every
// construction returns a certificate computed by exhaustive rescan.

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "spectopo/canonical.hpp"
#include "spectopo/closure.hpp"
#include "spectopo/morphism.hpp"
#include "spectopo/spec.hpp"

namespace spectopo {

/// A partition of a carrier, stored as a class index per element. Classes are
/// numbered in order of their least member.
class EquivRelation {
 public:
  EquivRelation() = default;

  static EquivRelation from_classes(std::size_t n, const std::vector<std::vector<Elem>>& classes) {
    std::vector<std::optional<std::size_t>> raw(n);
    for (std::size_t c = 0; c < classes.size(); ++c) {
      if (classes[c].empty()) throw make_error("BadPartition", {}, "empty class");
      for (Elem a : classes[c]) {
        if (a >= n) throw make_error("OutOfRange", {a});
        if (raw[a]) throw make_error("BadPartition", {a}, "element in two classes");
        raw[a] = c;
      }
    }
    std::vector<Elem> ids(n);
    for (Elem a = 0; a < n; ++a) {
      if (!raw[a]) throw make_error("BadPartition", {a}, "element in no class");
      ids[a] = *raw[a];
    }
    return from_ids(std::move(ids));
  }

  /// Any labelling of classes; renumbered by least member.
  static EquivRelation from_ids(const std::vector<Elem>& ids) {
    EquivRelation e;
    std::vector<std::optional<Elem>> renum;
    e.id_.resize(ids.size());
    for (Elem a = 0; a < ids.size(); ++a) {
      if (ids[a] >= renum.size()) renum.resize(ids[a] + 1);
      if (!renum[ids[a]]) {
        renum[ids[a]] = e.members_.size();
        e.members_.emplace_back();
      }
      e.id_[a] = *renum[ids[a]];
      e.members_[e.id_[a]].push_back(a);
    }
    return e;
  }

  std::size_t size() const noexcept { return id_.size(); }
  std::size_t classes() const noexcept { return members_.size(); }
  Elem class_of(Elem a) const { return id_.at(a); }
  bool same(Elem a, Elem b) const { return id_.at(a) == id_.at(b); }
  const std::vector<Elem>& members(Elem c) const { return members_.at(c); }
  const std::vector<Elem>& ids() const noexcept { return id_; }

 private:
  std::vector<Elem> id_;
  std::vector<std::vector<Elem>> members_;
};

/// Θ: a Θ b iff a ⊑ b and b ⊑ a.
template <SpecModel M>
EquivRelation theta(const M& m) {
  std::vector<Elem> ids(m.size());
  for (Elem a = 0; a < m.size(); ++a) {
    ids[a] = a;
    for (Elem b = 0; b < a; ++b)
      if (m.sqle(a, b) && m.sqle(b, a)) {
        ids[a] = ids[b];
        break;
      }
  }
  return EquivRelation::from_ids(ids);
}

namespace detail {

inline std::string fresh_name(std::string base, const std::set<std::string>& taken) {
  while (taken.count(base)) base += "'";
  return base;
}

}  // namespace detail

struct QuotientResult {
  SpecSemilattice quotient;
  EquivRelation classes;
  std::vector<Elem> projection;
  AxiomReport report;
  Certificate projection_certificate;
  bool forced = false;
};

/// Quotient by a join-congruence in which identified elements specialize each other: a ~ b implies a ⊑ b and
/// b ⊑ a. With force, that requirement is waived and ⊑ on classes is existential over
/// representatives; the congruence is still required because the join must
/// be well defined. Class names default to member names joined by "~".
inline QuotientResult quotient(const SpecSemilattice& s, const EquivRelation& e, bool force = false,
                               std::vector<std::string> class_names = {}) {
  const std::size_t n = s.size();
  if (e.size() != n) throw make_error("SizeMismatch", {n, e.size()});
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) {
      if (a == b || !e.same(a, b)) continue;
      for (Elem c = 0; c < n; ++c)
        if (!e.same(s.join(a, c), s.join(b, c))) throw make_error("NotCongruence", {a, b, c});
    }
  if (!force)
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b)
        if (e.same(a, b) && !s.sqle(a, b)) throw make_error("NotMutuallySpecialized", {a, b});

  const std::size_t q = e.classes();
  if (class_names.empty()) {
    for (Elem c = 0; c < q; ++c) {
      std::string name;
      for (Elem a : e.members(c)) name += (name.empty() ? "" : "~") + s.name(a);
      class_names.push_back(name);
    }
  }
  std::vector<Elem> table(q * q);
  for (Elem c = 0; c < q; ++c)
    for (Elem d = 0; d < q; ++d) table[c * q + d] = e.class_of(s.join(e.members(c)[0], e.members(d)[0]));
  Relation r(q);
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      if (s.sqle(a, b)) r.set(e.class_of(a), e.class_of(b));

  QuotientResult out;
  out.quotient = SpecSemilattice(semilattice_from_table(Carrier(std::move(class_names)), std::move(table)), r);
  out.classes = e;
  out.projection = e.ids();
  out.report = check_axioms(out.quotient);
  out.projection_certificate = verify_map(s, out.quotient, out.projection, MapKind::Semilattice);
  out.forced = force;
  return out;
}

namespace detail {

inline Error invalid_input(const AxiomReport& r) {
  for (int law : {1, 2, 3}) {
    const LawVerdict& v = r.law(law);
    if (v.checked && !v.holds) return make_error("InvalidInput", v.witness, "(S" + std::to_string(law) + ") fails");
  }
  return make_error("InvalidInput", {});
}

template <class Structure>
void require_axioms(const Structure& s) {
  const AxiomReport r = check_axioms(s);
  if (!r.axioms_hold()) throw invalid_input(r);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Principalization

struct PrincipalizeResult {
  SpecSemilattice u;
  /// kappa(a) = [a,0]; level-0 classes come first, so kappa(a) = a.
  std::vector<Elem> kappa;
  AxiomReport report;
  Certificate certificate;
  /// K[a1,a2] = [a1,1] for every pair of the product.
  bool k_formula = false;
  std::vector<Elem> k_formula_witness;

  bool principal() const { return report.principal; }
  bool additive() const { return report.additivity && report.additivity->additive; }
  bool ok() const {
    return report.axioms_hold() && principal() && additive() && certificate.is_embedding() && k_formula;
  }
};

/// Product with the two-element structure whose ⊑ is universal, then the
/// quotient identifying (a,1) and (b,1) when a Θ b.
inline PrincipalizeResult principalize(const SpecSemilattice& s) {
  detail::require_axioms(s);
  const std::size_t n = s.size();
  const std::size_t m = 2 * n;
  auto idx = [n](Elem a, Elem t) { return t * n + a; };

  std::set<std::string> taken(s.carrier().names().begin(), s.carrier().names().end());
  std::vector<std::string> names(m);
  for (Elem a = 0; a < n; ++a) names[idx(a, 0)] = s.name(a);
  for (Elem a = 0; a < n; ++a) {
    names[idx(a, 1)] = detail::fresh_name("K(" + s.name(a) + ")", taken);
    taken.insert(names[idx(a, 1)]);
  }
  std::vector<Elem> table(m * m);
  Relation r(m);
  for (Elem t = 0; t < 2; ++t)
    for (Elem a = 0; a < n; ++a)
      for (Elem u = 0; u < 2; ++u)
        for (Elem b = 0; b < n; ++b) {
          table[idx(a, t) * m + idx(b, u)] = idx(s.join(a, b), std::max(t, u));
          r.set(idx(a, t), idx(b, u), s.sqle(a, b));
        }
  const SpecSemilattice product(semilattice_from_table(Carrier(names), std::move(table)), std::move(r));

  const EquivRelation th = theta(s);
  std::vector<Elem> ids(m);
  for (Elem a = 0; a < n; ++a) {
    ids[idx(a, 0)] = idx(a, 0);
    ids[idx(a, 1)] = idx(th.members(th.class_of(a))[0], 1);
  }
  const EquivRelation sim = EquivRelation::from_ids(ids);
  std::vector<std::string> class_names;
  for (Elem c = 0; c < sim.classes(); ++c) class_names.push_back(names[sim.members(c)[0]]);
  QuotientResult q = quotient(product, sim, false, std::move(class_names));

  PrincipalizeResult out;
  out.u = std::move(q.quotient);
  out.kappa.resize(n);
  for (Elem a = 0; a < n; ++a) out.kappa[a] = sim.class_of(idx(a, 0));
  out.report = check_axioms(out.u);
  out.certificate = verify_map(s, out.u, out.kappa, MapKind::Semilattice);
  out.k_formula = out.report.principal;
  for (Elem t = 0; t < 2 && out.k_formula; ++t)
    for (Elem a = 0; a < n; ++a)
      if (out.report.kmap(sim.class_of(idx(a, t))) != sim.class_of(idx(a, 1))) {
        out.k_formula = false;
        out.k_formula_witness = {a, t};
        break;
      }
  return out;
}

/// The same extension assembled directly as S plus V = S/Θ, each class of V
/// placed above its members. Used as an independent cross-check.
inline SpecSemilattice alt_principalize(const SpecSemilattice& s) {
  detail::require_axioms(s);
  const std::size_t n = s.size();
  const EquivRelation th = theta(s);
  const std::size_t v = th.classes();
  const std::size_t m = n + v;
  auto vjoin = [&](Elem c, Elem d) { return th.class_of(s.join(th.members(c)[0], th.members(d)[0])); };
  auto rep = [&](Elem x) { return x < n ? x : th.members(x - n)[0]; };

  std::vector<Elem> table(m * m);
  for (Elem x = 0; x < m; ++x)
    for (Elem y = 0; y < m; ++y) {
      Elem j;
      if (x < n && y < n)
        j = s.join(x, y);
      else
        j = n + vjoin(x < n ? th.class_of(x) : x - n, y < n ? th.class_of(y) : y - n);
      table[x * m + y] = j;
    }
  Relation r(m);
  for (Elem x = 0; x < m; ++x)
    for (Elem y = 0; y < m; ++y) r.set(x, y, s.sqle(rep(x), rep(y)));
  return SpecSemilattice(semilattice_from_table(Carrier::numbered(m), std::move(table)), std::move(r));
}

inline bool isomorphic(const SpecSemilattice& a, const SpecSemilattice& b) {
  return a.size() == b.size() && canonical(a).code == canonical(b).code;
}

// ---------------------------------------------------------------------------
// Zero adjunction

/// Index of a minimum z with a ⊑ z iff a = z, if there is one.
template <SpecModel M>
std::optional<Elem> strict_zero(const M& m) {
  for (Elem z = 0; z < m.size(); ++z) {
    bool bottom = true;
    for (Elem a = 0; a < m.size() && bottom; ++a) bottom = m.leq(z, a);
    if (!bottom) continue;
    for (Elem a = 0; a < m.size(); ++a)
      if (m.sqle(a, z) != (a == z)) return std::nullopt;
    return z;
  }
  return std::nullopt;
}

struct ZeroResult {
  SpecSemilattice s0;
  std::vector<Elem> inclusion;
  bool added = false;
  Certificate certificate;
};

/// Adds a new ∨-neutral element below everything, ⊑ every element and with
/// nothing from S ⊑ it, unless a strict zero is already present. The new
/// element is appended last.
inline ZeroResult adjoin_zero(const SpecSemilattice& s) {
  const std::size_t n = s.size();
  ZeroResult out;
  out.inclusion.resize(n);
  for (Elem a = 0; a < n; ++a) out.inclusion[a] = a;
  if (strict_zero(s)) {
    out.s0 = s;
  } else {
    out.added = true;
    const std::set<std::string> taken(s.carrier().names().begin(), s.carrier().names().end());
    std::string zname = "0";
    for (int i = 0; taken.count(zname); ++i) zname = i == 0 ? "bot" : "bot" + std::to_string(i);
    std::vector<std::string> names = s.carrier().names();
    names.push_back(zname);
    const std::size_t m = n + 1;
    std::vector<Elem> table(m * m);
    Relation r(m);
    for (Elem x = 0; x < m; ++x)
      for (Elem y = 0; y < m; ++y) {
        table[x * m + y] = x == n ? y : y == n ? x : s.join(x, y);
        r.set(x, y, x == n || (y != n && s.sqle(x, y)));
      }
    out.s0 = SpecSemilattice(semilattice_from_table(Carrier(std::move(names)), std::move(table)), std::move(r));
  }
  out.certificate = verify_map(s, out.s0, out.inclusion, MapKind::Semilattice);
  return out;
}

// ---------------------------------------------------------------------------
// Topologization

enum class TopologizeVariant { Character, Complement };

struct TopologizeResult {
  TopologizeVariant variant = TopologizeVariant::Character;
  ClosureSpace space;
  TopologyTag tag;
  /// phi(a) as a subset mask of the ground (= carrier of the input).
  std::vector<Elem> phi;
  /// Against S(X) with ⊑ computed by brute-force closure.
  Certificate certificate;

  bool ok() const { return tag.is_topology && certificate.is_embedding(); }
};

/// Character variant: phi(a) = {b | a ≰ b}, closed base {phi(Kc)}.
/// Complement variant: phi(a) = {b | a ⋢ b}, closed base {phi(Kc)}.
/// Requires a principal additive structure with a strict zero.
inline TopologizeResult topologize(const SpecSemilattice& s,
                                   TopologizeVariant variant = TopologizeVariant::Character) {
  const std::size_t n = s.size();
  const KMap k = compute_kmap(s);
  std::string missing;
  auto note = [&](const char* what) { missing += missing.empty() ? what : std::string(", ") + what; };
  if (!k.total()) note("principal");
  if (k.total() && !is_additive(s, k).additive) note("additive");
  if (!strict_zero(s)) note("strict-zero");
  if (!missing.empty()) throw make_error("PreconditionFailed", {}, missing);
  if (n >= 32) throw make_error("GroundTooLarge", {n, 31});

  TopologizeResult out;
  out.variant = variant;
  out.phi.resize(n);
  for (Elem a = 0; a < n; ++a) {
    Subset m = 0;
    for (Elem b = 0; b < n; ++b) {
      const bool in = variant == TopologizeVariant::Character ? !s.leq(a, b) : !s.sqle(a, b);
      if (in) m |= Subset{1} << b;
    }
    out.phi[a] = m;
  }
  std::vector<Subset> base;
  for (Elem c = 0; c < n; ++c) base.push_back(out.phi[k(c)]);
  out.space = complete_family(s.carrier(), std::move(base));
  out.tag = topology_tag(out.space);
  out.certificate = verify_map(s, SModel(out.space), out.phi, MapKind::Semilattice);
  return out;
}

struct FullEmbedResult {
  PrincipalizeResult principal;
  ZeroResult zero;
  TopologizeResult topo;
  /// Input element -> subset mask of the final ground.
  std::vector<Elem> composite;
  Certificate certificate;
  bool associative = false;

  bool ok() const {
    return principal.ok() && zero.certificate.is_embedding() && topo.ok() && certificate.is_embedding() &&
           associative;
  }
};

/// principalize, then adjoin a strict zero if needed, then topologize.
inline FullEmbedResult topologize_full(const SpecSemilattice& s,
                                       TopologizeVariant variant = TopologizeVariant::Character) {
  FullEmbedResult out;
  out.principal = principalize(s);
  out.zero = adjoin_zero(out.principal.u);
  out.topo = topologize(out.zero.s0, variant);
  out.composite = compose(compose(out.principal.kappa, out.zero.inclusion), out.topo.phi);
  out.associative = out.composite == compose(out.principal.kappa, compose(out.zero.inclusion, out.topo.phi));
  out.certificate = verify_map(s, SModel(out.topo.space), out.composite, MapKind::Semilattice);
  return out;
}

// ---------------------------------------------------------------------------
// Posets

struct DownsetResult {
  SpecSemilattice s;
  /// The subset mask of input points represented by each element of s.
  std::vector<Subset> sets;
  std::vector<Elem> iota;
  Certificate certificate;

  bool ok() const { return certificate.is_embedding() && certificate.meets.holds; }
};

/// Carrier: all finite unions of principal downsets (with the empty union),
/// ordered by mask. X ⊑ Y iff every c in X is ⊑ some d in Y.
inline DownsetResult downset_embed(const SpecPoset& p) {
  detail::require_axioms(p);
  const std::size_t n = p.size();
  if (n > kMaxGround) throw make_error("GroundTooLarge", {n, kMaxGround});
  std::vector<Subset> down(n, 0);
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      if (p.leq(b, a)) down[a] |= Subset{1} << b;
  std::set<Subset> all{0};
  std::vector<Subset> frontier{0};
  while (!frontier.empty()) {
    std::vector<Subset> next;
    for (Subset x : frontier)
      for (Subset d : down)
        if (all.insert(x | d).second) next.push_back(x | d);
    frontier = std::move(next);
  }
  DownsetResult out;
  out.sets.assign(all.begin(), all.end());
  const std::size_t m = out.sets.size();
  auto index = [&](Subset x) {
    return static_cast<Elem>(std::lower_bound(out.sets.begin(), out.sets.end(), x) - out.sets.begin());
  };
  std::vector<std::string> names;
  for (Subset x : out.sets) names.push_back(subset_name(p.carrier(), x));
  std::vector<Elem> table(m * m);
  Relation r(m);
  for (Elem i = 0; i < m; ++i)
    for (Elem j = 0; j < m; ++j) {
      table[i * m + j] = index(out.sets[i] | out.sets[j]);
      bool ok = true;
      for (Elem c = 0; c < n && ok; ++c) {
        if (!contains(out.sets[i], c)) continue;
        bool found = false;
        for (Elem d = 0; d < n && !found; ++d) found = contains(out.sets[j], d) && p.sqle(c, d);
        ok = found;
      }
      r.set(i, j, ok);
    }
  out.s = SpecSemilattice(semilattice_from_table(Carrier(std::move(names)), std::move(table)), std::move(r));
  for (Elem a = 0; a < n; ++a) out.iota.push_back(index(down[a]));
  out.certificate = verify_map(p, out.s, out.iota, MapKind::Poset);
  return out;
}

struct PosetEmbedResult {
  DownsetResult downset;
  FullEmbedResult full;
  std::vector<Elem> composite;
  /// Against P(X), the order-specialization reduct of S(X).
  Certificate certificate;

  bool ok() const {
    return downset.certificate.is_embedding() && full.ok() && certificate.is_embedding();
  }
};

inline PosetEmbedResult poset_topologize(const SpecPoset& p,
                                         TopologizeVariant variant = TopologizeVariant::Character) {
  PosetEmbedResult out;
  out.downset = downset_embed(p);
  out.full = topologize_full(out.downset.s, variant);
  out.composite = compose(out.downset.iota, out.full.composite);
  out.certificate = verify_map(p, PModel(out.full.topo.space), out.composite, MapKind::Poset);
  return out;
}

}  // namespace spectopo
