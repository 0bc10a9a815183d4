#pragma once

// Specialization posets and semilattices: axiom checkers, the closure map K,
// additivity, Čech checks and the constructors from the example families.

#include <array>
#include <concepts>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "spectopo/finorder.hpp"
#include "spectopo/powerset.hpp"

namespace spectopo {

/// A poset together with a relation ⊑. The axioms are not enforced here;
/// check_axioms reports on them.
class SpecPoset {
 public:
  SpecPoset() = default;
  SpecPoset(Poset base, Relation sqle) : base_(std::move(base)), sqle_(std::move(sqle)) {
    if (sqle_.size() != base_.size()) throw make_error("SizeMismatch", {base_.size(), sqle_.size()});
  }

  const Poset& base() const noexcept { return base_; }
  const Carrier& carrier() const noexcept { return base_.carrier(); }
  const Relation& specialization() const noexcept { return sqle_; }
  std::size_t size() const noexcept { return base_.size(); }
  bool leq(Elem a, Elem b) const { return base_.leq(a, b); }
  bool sqle(Elem a, Elem b) const { return sqle_.test(a, b); }
  std::optional<Elem> meet(Elem a, Elem b) const { return base_.meet(a, b); }
  const std::string& name(Elem a) const { return base_.name(a); }

  bool operator==(const SpecPoset&) const = default;

 private:
  Poset base_;
  Relation sqle_;
};

/// A join-semilattice together with a relation ⊑.
class SpecSemilattice {
 public:
  SpecSemilattice() = default;
  SpecSemilattice(JoinSemilattice base, Relation sqle) : base_(std::move(base)), sqle_(std::move(sqle)) {
    if (sqle_.size() != base_.size()) throw make_error("SizeMismatch", {base_.size(), sqle_.size()});
  }

  const JoinSemilattice& base() const noexcept { return base_; }
  const Carrier& carrier() const noexcept { return base_.carrier(); }
  const Relation& specialization() const noexcept { return sqle_; }
  std::size_t size() const noexcept { return base_.size(); }
  bool leq(Elem a, Elem b) const { return base_.leq(a, b); }
  Elem join(Elem a, Elem b) const { return base_.join(a, b); }
  bool sqle(Elem a, Elem b) const { return sqle_.test(a, b); }
  std::optional<Elem> meet(Elem a, Elem b) const { return base_.meet(a, b); }
  const std::string& name(Elem a) const { return base_.name(a); }

  bool operator==(const SpecSemilattice&) const = default;

 private:
  JoinSemilattice base_;
  Relation sqle_;
};

template <class M>
concept SpecModel = requires(const M& m, Elem a, Elem b) {
  { m.size() } -> std::convertible_to<std::size_t>;
  { m.leq(a, b) } -> std::convertible_to<bool>;
  { m.sqle(a, b) } -> std::convertible_to<bool>;
};

template <class M>
concept SpecJoinModel = SpecModel<M> && requires(const M& m, Elem a, Elem b) {
  { m.join(a, b) } -> std::convertible_to<Elem>;
};

inline SpecPoset order_spec_reduct(const SpecSemilattice& s) {
  return SpecPoset(order_from_join(s.base()), s.specialization());
}

// ---------------------------------------------------------------------------
// Axioms (S1)-(S9)

struct LawVerdict {
  bool checked = false;
  bool holds = true;
  /// Least failing tuple, variables in the order the law names them.
  std::vector<Elem> witness;
};

namespace detail {

inline LawVerdict pass() { return {true, true, {}}; }
inline LawVerdict fail(std::vector<Elem> w) { return {true, false, std::move(w)}; }

}  // namespace detail

/// Checks law i (1..9) by exhaustive scan. Laws S3 and S7-S9 need joins and
/// come back unchecked on poset-only models.
///   S1 a<=b => a[=b                     witness (a,b)
///   S2 a[=b & b[=c => a[=c              (a,b,c)
///   S3 a[=b & a1[=b => a\/a1 [= b       (a,a1,b)
///   S4 a[=a                             (a)
///   S5 a[=b & b<=c => a[=c              (a,b,c)
///   S6 a<=b & b[=c => a[=c              (a,b,c)
///   S7 a[=b & a1[=b1 => a\/a1 [= b\/b1  (a,b,a1,b1)
///   S8 a[=b => a\/b [= b                (a,b)
///   S9 a[=b => a\/a1 [= b\/a1           (a,b,a1)
template <SpecModel M>
LawVerdict check_law(const M& m, int law) {
  using detail::fail;
  using detail::pass;
  const std::size_t n = m.size();
  switch (law) {
    case 1:
      for (Elem a = 0; a < n; ++a)
        for (Elem b = 0; b < n; ++b)
          if (m.leq(a, b) && !m.sqle(a, b)) return fail({a, b});
      return pass();
    case 2:
      for (Elem a = 0; a < n; ++a)
        for (Elem b = 0; b < n; ++b) {
          if (!m.sqle(a, b)) continue;
          for (Elem c = 0; c < n; ++c)
            if (m.sqle(b, c) && !m.sqle(a, c)) return fail({a, b, c});
        }
      return pass();
    case 4:
      for (Elem a = 0; a < n; ++a)
        if (!m.sqle(a, a)) return fail({a});
      return pass();
    case 5:
      for (Elem a = 0; a < n; ++a)
        for (Elem b = 0; b < n; ++b) {
          if (!m.sqle(a, b)) continue;
          for (Elem c = 0; c < n; ++c)
            if (m.leq(b, c) && !m.sqle(a, c)) return fail({a, b, c});
        }
      return pass();
    case 6:
      for (Elem a = 0; a < n; ++a)
        for (Elem b = 0; b < n; ++b) {
          if (!m.leq(a, b)) continue;
          for (Elem c = 0; c < n; ++c)
            if (m.sqle(b, c) && !m.sqle(a, c)) return fail({a, b, c});
        }
      return pass();
    default:
      break;
  }
  if constexpr (SpecJoinModel<M>) {
    switch (law) {
      case 3:
        for (Elem a = 0; a < n; ++a)
          for (Elem a1 = 0; a1 < n; ++a1)
            for (Elem b = 0; b < n; ++b)
              if (m.sqle(a, b) && m.sqle(a1, b) && !m.sqle(m.join(a, a1), b)) return fail({a, a1, b});
        return pass();
      case 7:
        for (Elem a = 0; a < n; ++a)
          for (Elem b = 0; b < n; ++b) {
            if (!m.sqle(a, b)) continue;
            for (Elem a1 = 0; a1 < n; ++a1)
              for (Elem b1 = 0; b1 < n; ++b1)
                if (m.sqle(a1, b1) && !m.sqle(m.join(a, a1), m.join(b, b1))) return fail({a, b, a1, b1});
          }
        return pass();
      case 8:
        for (Elem a = 0; a < n; ++a)
          for (Elem b = 0; b < n; ++b)
            if (m.sqle(a, b) && !m.sqle(m.join(a, b), b)) return fail({a, b});
        return pass();
      case 9:
        for (Elem a = 0; a < n; ++a)
          for (Elem b = 0; b < n; ++b) {
            if (!m.sqle(a, b)) continue;
            for (Elem a1 = 0; a1 < n; ++a1)
              if (!m.sqle(m.join(a, a1), m.join(b, a1))) return fail({a, b, a1});
          }
        return pass();
      default:
        break;
    }
  }
  return {};
}

// ---------------------------------------------------------------------------
// The closure map K: Kb = max{a | a ⊑ b} wherever that maximum exists.

struct KMap {
  std::vector<std::optional<Elem>> k;
  /// a ⊑ b iff a <= Kb iff a ⊑ Kb, and Ka <= Kb, rechecked wherever K is
  /// defined; witness (a,b).
  bool characterization_holds = true;
  std::vector<Elem> characterization_witness;

  bool total() const {
    for (const auto& v : k)
      if (!v) return false;
    return true;
  }
  std::vector<Elem> undefined() const {
    std::vector<Elem> out;
    for (Elem b = 0; b < k.size(); ++b)
      if (!k[b]) out.push_back(b);
    return out;
  }
  Elem operator()(Elem b) const {
    if (!k.at(b)) throw make_error("NotPrincipal", {b});
    return *k[b];
  }
  std::vector<Elem> values() const {
    std::vector<Elem> out;
    for (Elem b = 0; b < k.size(); ++b) out.push_back((*this)(b));
    return out;
  }
};

template <SpecModel M>
KMap compute_kmap(const M& m) {
  const std::size_t n = m.size();
  KMap km;
  km.k.resize(n);
  for (Elem b = 0; b < n; ++b) {
    for (Elem c = 0; c < n && !km.k[b]; ++c) {
      if (!m.sqle(c, b)) continue;
      bool is_max = true;
      for (Elem a = 0; a < n && is_max; ++a)
        if (m.sqle(a, b)) is_max = m.leq(a, c);
      if (is_max) km.k[b] = c;
    }
  }
  for (Elem b = 0; b < n && km.characterization_holds; ++b) {
    if (!km.k[b]) continue;
    const Elem kb = *km.k[b];
    if (km.k[kb] != kb) {
      km.characterization_holds = false;
      km.characterization_witness = {kb, b};
      break;
    }
    for (Elem a = 0; a < n; ++a) {
      const bool i = m.sqle(a, b);
      const bool ii = m.leq(a, kb);
      const bool iii = m.sqle(a, kb);
      bool ok = i == ii && ii == iii;
      if (ok && km.k[a]) ok = m.leq(*km.k[a], kb) == i && m.sqle(*km.k[a], kb) == i;
      if (!ok) {
        km.characterization_holds = false;
        km.characterization_witness = {a, b};
        break;
      }
    }
  }
  return km;
}

struct AdditivityVerdict {
  bool additive = false;
  /// Least pair (a,b) with K(a\/b) != Ka \/ Kb.
  std::vector<Elem> witness;
  /// The fixed-point formulation: K(c\/d) = c\/d whenever Kc = c and Kd = d.
  bool fixed_point_form = false;
  std::vector<Elem> fixed_point_witness;
};

template <SpecJoinModel M>
AdditivityVerdict is_additive(const M& m, const KMap& k) {
  if (!k.total()) throw make_error("NotPrincipal", {k.undefined().front()});
  const std::size_t n = m.size();
  AdditivityVerdict v;
  v.additive = true;
  for (Elem a = 0; a < n && v.additive; ++a)
    for (Elem b = 0; b < n; ++b)
      if (k(m.join(a, b)) != m.join(k(a), k(b))) {
        v.additive = false;
        v.witness = {a, b};
        break;
      }
  v.fixed_point_form = true;
  for (Elem c = 0; c < n && v.fixed_point_form; ++c) {
    if (k(c) != c) continue;
    for (Elem d = 0; d < n; ++d)
      if (k(d) == d && k(m.join(c, d)) != m.join(c, d)) {
        v.fixed_point_form = false;
        v.fixed_point_witness = {c, d};
        break;
      }
  }
  return v;
}

/// Čech-poset: (S1), (S5), (S6). Čech-semilattice additionally (S3).
struct CechVerdict {
  bool poset = false;
  std::optional<bool> semilattice;
  std::vector<int> failed_laws;
};

template <SpecModel M>
CechVerdict cech_check(const M& m) {
  CechVerdict v;
  v.poset = true;
  for (int law : {1, 5, 6})
    if (!check_law(m, law).holds) {
      v.poset = false;
      v.failed_laws.push_back(law);
    }
  if constexpr (SpecJoinModel<M>) {
    const bool s3 = check_law(m, 3).holds;
    if (!s3) v.failed_laws.push_back(3);
    v.semilattice = v.poset && s3;
  }
  return v;
}

struct AxiomReport {
  bool semilattice = false;
  std::array<LawVerdict, 9> laws{};
  bool principal = false;
  /// Least b whose S_b = {a | a ⊑ b} has no maximum.
  std::optional<Elem> nonprincipal_at;
  KMap kmap;
  std::optional<AdditivityVerdict> additivity;
  CechVerdict cech;

  const LawVerdict& law(int i) const { return laws.at(static_cast<std::size_t>(i - 1)); }
  /// (S1)-(S2), plus (S3) for semilattices.
  bool axioms_hold() const { return law(1).holds && law(2).holds && (!semilattice || law(3).holds); }
  bool all_checked_hold() const {
    for (const auto& l : laws)
      if (l.checked && !l.holds) return false;
    return true;
  }
};

template <SpecModel M>
AxiomReport check_axioms(const M& m) {
  AxiomReport r;
  r.semilattice = SpecJoinModel<M>;
  for (int i = 1; i <= 9; ++i) r.laws[static_cast<std::size_t>(i - 1)] = check_law(m, i);
  r.kmap = compute_kmap(m);
  r.principal = r.kmap.total();
  if (!r.principal) r.nonprincipal_at = r.kmap.undefined().front();
  if constexpr (SpecJoinModel<M>) {
    if (r.principal) r.additivity = is_additive(m, r.kmap);
  }
  r.cech = cech_check(m);
  return r;
}

// ---------------------------------------------------------------------------
// Least specialization containing a set of generator pairs.

namespace detail {

template <class Base>
Relation close_relation(const Base& base, Relation r) {
  const std::size_t n = base.size();
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      if (base.leq(a, b)) r.set(a, b);
  bool changed = true;
  while (changed) {
    changed = false;
    Relation t = refl_trans_close(r);
    if (!(t == r)) {
      r = std::move(t);
      changed = true;
    }
    if constexpr (requires(const Base& s, Elem a) { s.join(a, a); }) {
      for (Elem b = 0; b < n; ++b)
        for (Elem a = 0; a < n; ++a) {
          if (!r.test(a, b)) continue;
          for (Elem a1 = 0; a1 < n; ++a1)
            if (r.test(a1, b) && !r.test(base.join(a, a1), b)) {
              r.set(base.join(a, a1), b);
              changed = true;
            }
        }
    }
  }
  return r;
}

}  // namespace detail

/// Fixpoint of (S1), (S2) over the generators.
inline Relation close_specialization(const Poset& base, const Relation& generators) {
  return detail::close_relation(base, generators);
}
/// Fixpoint of (S1), (S2), (S3) over the generators.
inline Relation close_specialization(const JoinSemilattice& base, const Relation& generators) {
  return detail::close_relation(base, generators);
}

// ---------------------------------------------------------------------------
// Constructors

namespace detail {

template <class Base>
void check_operator(const Base& base, const std::vector<Elem>& k, bool require_idempotent) {
  const std::size_t n = base.size();
  if (k.size() != n) throw make_error("SizeMismatch", {n, k.size()});
  for (Elem a = 0; a < n; ++a)
    if (k[a] >= n) throw make_error("OutOfRange", {a});
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      if (base.leq(a, b) && !base.leq(k[a], k[b])) throw make_error("NotIsotone", {a, b});
  for (Elem a = 0; a < n; ++a)
    if (!base.leq(a, k[a])) throw make_error("NotExtensive", {a});
  if (require_idempotent)
    for (Elem a = 0; a < n; ++a)
      if (k[k[a]] != k[a]) throw make_error("NotIdempotent", {a});
}

template <class Base>
Relation operator_relation(const Base& base, const std::vector<Elem>& k) {
  Relation r(base.size());
  for (Elem a = 0; a < base.size(); ++a)
    for (Elem b = 0; b < base.size(); ++b) r.set(a, b, base.leq(a, k[b]));
  return r;
}

}  // namespace detail

/// a ⊑ b iff a <= k(b). k must be isotone and extensive, and idempotent
/// unless require_idempotent is false (the Čech case).
inline SpecPoset from_operator(const Poset& base, const std::vector<Elem>& k, bool require_idempotent = true) {
  detail::check_operator(base, k, require_idempotent);
  return SpecPoset(base, detail::operator_relation(base, k));
}
inline SpecSemilattice from_operator(const JoinSemilattice& base, const std::vector<Elem>& k,
                                     bool require_idempotent = true) {
  detail::check_operator(base, k, require_idempotent);
  return SpecSemilattice(base, detail::operator_relation(base, k));
}

/// a ⊑ b iff phi(a) <= phi(b) in t; phi must preserve joins.
inline SpecSemilattice from_hom(const JoinSemilattice& s, const JoinSemilattice& t, const std::vector<Elem>& phi) {
  const std::size_t n = s.size();
  if (phi.size() != n) throw make_error("SizeMismatch", {n, phi.size()});
  for (Elem a = 0; a < n; ++a)
    if (phi[a] >= t.size()) throw make_error("OutOfRange", {a});
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      if (phi[s.join(a, b)] != t.join(phi[a], phi[b])) throw make_error("NotJoinHom", {a, b});
  Relation r(n);
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) r.set(a, b, t.leq(phi[a], phi[b]));
  return SpecSemilattice(s, std::move(r));
}

inline constexpr std::size_t kDefaultPowersetGuard = 5;

/// Tolerance specialization on P(ground): a ⊑ b iff τ(a) ⊆ τ(b), where τ(a)
/// is the set of points tolerant to some point of a.
inline SpecSemilattice from_tolerance(const Carrier& ground, const Relation& tau,
                                      std::size_t guard = kDefaultPowersetGuard) {
  const std::size_t n = ground.size();
  if (tau.size() != n) throw make_error("SizeMismatch", {n, tau.size()});
  check_ground_guard(n, guard);
  for (Elem a = 0; a < n; ++a)
    if (!tau.test(a, a)) throw make_error("NotTolerance", {a}, "not reflexive");
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      if (tau.test(a, b) != tau.test(b, a)) throw make_error("NotTolerance", {a, b}, "not symmetric");
  JoinSemilattice ps = powerset_semilattice(ground);
  std::vector<Subset> hood(ps.size(), 0);
  for (Subset s = 0; s < ps.size(); ++s)
    for (Elem y = 0; y < n; ++y)
      if (contains(s, y))
        for (Elem x = 0; x < n; ++x)
          if (tau.test(y, x)) hood[s] |= Subset{1} << x;
  Relation r(ps.size());
  for (Elem a = 0; a < ps.size(); ++a)
    for (Elem b = 0; b < ps.size(); ++b) r.set(a, b, subset_of(hood[a], hood[b]));
  return SpecSemilattice(std::move(ps), std::move(r));
}

/// Exact rational weight; den > 0.
struct Rational {
  long long num = 0;
  long long den = 1;
  friend bool operator<=(const Rational& x, const Rational& y) { return x.num * y.den <= y.num * x.den; }
  friend bool operator==(const Rational& x, const Rational& y) { return x.num * y.den == y.num * x.den; }
};

enum class WeightAdvisory { None, NotUnionClosed, NotTwoValued, S3Fails };

struct WeightResult {
  SpecPoset poset;
  std::optional<SpecSemilattice> semilattice;
  WeightAdvisory advisory = WeightAdvisory::None;
  /// (a, a1, b) in family indices, when (S3) fails on the union semilattice.
  std::vector<Elem> s3_witness;
};

/// Weight-comparison specialization a ⊑ b iff mu(a) <= mu(b) over a family of
/// subsets ordered by inclusion. The semilattice form is produced only when the
/// family is union-closed, mu takes at most two values and (S3) verifies.
inline WeightResult from_weight(const Carrier& ground, const std::vector<Subset>& family,
                                const std::vector<Rational>& mu) {
  const std::size_t n = family.size();
  if (mu.size() != n) throw make_error("SizeMismatch", {n, mu.size()});
  for (Elem i = 0; i < n; ++i) {
    if (mu[i].den <= 0) throw make_error("BadWeight", {i});
    if (!subset_of(family[i], full_set(ground.size()))) throw make_error("OutOfRange", {i});
    for (Elem j = i + 1; j < n; ++j)
      if (family[i] == family[j]) throw make_error("DuplicateSet", {i, j});
  }
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      if (subset_of(family[a], family[b]) && !(mu[a] <= mu[b])) throw make_error("NotMonotone", {a, b});

  std::vector<std::string> names;
  for (Subset s : family) names.push_back(subset_name(ground, s));
  Carrier carrier(names);
  Relation inc(n), rel(n);
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) {
      inc.set(a, b, subset_of(family[a], family[b]));
      rel.set(a, b, mu[a] <= mu[b]);
    }
  WeightResult out{SpecPoset(validate_poset(carrier, inc), rel), std::nullopt, WeightAdvisory::None, {}};

  std::vector<Elem> table(n * n);
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) {
      const Subset u = family[a] | family[b];
      auto it = std::find(family.begin(), family.end(), u);
      if (it == family.end()) {
        out.advisory = WeightAdvisory::NotUnionClosed;
        return out;
      }
      table[a * n + b] = static_cast<Elem>(it - family.begin());
    }
  SpecSemilattice s(semilattice_from_table(carrier, std::move(table)), rel);
  const LawVerdict s3 = check_law(s, 3);
  std::vector<Rational> values;
  for (const auto& w : mu)
    if (std::find(values.begin(), values.end(), w) == values.end()) values.push_back(w);
  if (!s3.holds) {
    out.advisory = WeightAdvisory::S3Fails;
    out.s3_witness = s3.witness;
  } else if (values.size() > 2) {
    out.advisory = WeightAdvisory::NotTwoValued;
  } else {
    out.semilattice = std::move(s);
  }
  return out;
}

// ---------------------------------------------------------------------------
// The lattice of specializations over a fixed base.

/// Universal relation.
template <class Base>
Relation finest_specialization(const Base& base) {
  return Relation::universal(base.size());
}

/// ⊑ = <=.
template <class Base>
Relation coarsest_specialization(const Base& base) {
  Relation r(base.size());
  for (Elem a = 0; a < base.size(); ++a)
    for (Elem b = 0; b < base.size(); ++b) r.set(a, b, base.leq(a, b));
  return r;
}

namespace detail {

template <class Structure>
void check_same_base(std::span<const Structure> specs) {
  if (specs.empty()) throw make_error("EmptyInput", {});
  for (Elem i = 0; i < specs.size(); ++i) {
    if (!(specs[i].base() == specs[0].base())) throw make_error("BaseMismatch", {0, i});
    if (!check_axioms(specs[i]).axioms_hold()) throw make_error("InvalidInput", {i});
  }
}

}  // namespace detail

/// Pointwise intersection; re-verified against the axioms.
template <class Structure>
Structure meet_specializations(std::span<const Structure> specs) {
  detail::check_same_base(specs);
  Relation r = specs[0].specialization();
  for (const auto& s : specs) r = r & s.specialization();
  Structure out(specs[0].base(), std::move(r));
  if (!check_axioms(out).axioms_hold()) throw make_error("MeetNotSpecialization", {});
  return out;
}

/// Least specialization containing the union.
template <class Structure>
Structure join_specializations(std::span<const Structure> specs) {
  detail::check_same_base(specs);
  Relation r = specs[0].specialization();
  for (const auto& s : specs) r = r | s.specialization();
  return Structure(specs[0].base(), close_specialization(specs[0].base(), r));
}

}  // namespace spectopo
