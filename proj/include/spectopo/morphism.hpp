#pragma once

// Maps between specialization structures and their verification certificates.

#include <optional>
#include <string>
#include <vector>

#include "spectopo/spec.hpp"

namespace spectopo {

/// A verified or refuted property of a map; a failure carries the least
/// offending pair (a,b) of source elements.
struct Flag {
  bool holds = true;
  std::vector<Elem> witness;
};

enum class MapKind { Auto, Poset, Semilattice };

/// Evidence about a map f : S -> T, every flag computed by exhaustive scan.
struct Certificate {
  bool semilattice_mode = false;
  /// Order-preserving (poset mode) or join-preserving (semilattice mode).
  Flag structure_hom;
  /// f(a) <= f(b) implies a <= b.
  Flag order_embedding;
  /// a ⊑ b implies f(a) ⊑ f(b).
  Flag m;
  Flag injective;
  /// f(a) ⊑ f(b) implies a ⊑ b.
  Flag e;
  /// f(a ∧ b) = f(a) ∧ f(b) whenever a ∧ b exists in S.
  Flag meets;

  bool is_hom() const { return structure_hom.holds && m.holds; }
  /// Poset mode asks for an order-embedding; semilattice mode for an injective
  /// join-homomorphism. Both require (M) and (E).
  bool is_embedding() const {
    return is_hom() && injective.holds && e.holds && (semilattice_mode || order_embedding.holds);
  }
};

namespace detail {

template <class M>
concept HasMeet = requires(const M& m, Elem a, Elem b) {
  { m.meet(a, b) } -> std::convertible_to<std::optional<Elem>>;
};

template <class M>
std::optional<Elem> meet_of(const M& m, Elem a, Elem b) {
  if constexpr (HasMeet<M>) {
    return m.meet(a, b);
  } else {
    std::optional<Elem> best;
    for (Elem c = 0; c < m.size(); ++c)
      if (m.leq(c, a) && m.leq(c, b) && (!best || m.leq(*best, c))) best = c;
    if (!best) return std::nullopt;
    for (Elem c = 0; c < m.size(); ++c)
      if (m.leq(c, a) && m.leq(c, b) && !m.leq(c, *best)) return std::nullopt;
    return best;
  }
}

template <class Pred>
Flag scan_pairs(std::size_t n, Pred bad) {
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      if (bad(a, b)) return {false, {a, b}};
  return {};
}

}  // namespace detail

template <SpecModel S, SpecModel T>
Certificate verify_map(const S& src, const T& tgt, const std::vector<Elem>& send, MapKind kind = MapKind::Auto) {
  const std::size_t n = src.size();
  if (send.size() != n) throw make_error("SizeMismatch", {n, send.size()});
  for (Elem a = 0; a < n; ++a)
    if (send[a] >= tgt.size()) throw make_error("OutOfRange", {a});

  Certificate c;
  constexpr bool joins = SpecJoinModel<S> && SpecJoinModel<T>;
  if (kind == MapKind::Semilattice && !joins) throw make_error("KindMismatch", {});
  c.semilattice_mode = joins && kind != MapKind::Poset;

  if constexpr (joins) {
    if (c.semilattice_mode)
      c.structure_hom = detail::scan_pairs(
          n, [&](Elem a, Elem b) { return send[src.join(a, b)] != tgt.join(send[a], send[b]); });
  }
  if (!c.semilattice_mode)
    c.structure_hom = detail::scan_pairs(n, [&](Elem a, Elem b) { return src.leq(a, b) && !tgt.leq(send[a], send[b]); });
  c.order_embedding = detail::scan_pairs(n, [&](Elem a, Elem b) { return tgt.leq(send[a], send[b]) && !src.leq(a, b); });
  c.m = detail::scan_pairs(n, [&](Elem a, Elem b) { return src.sqle(a, b) && !tgt.sqle(send[a], send[b]); });
  c.injective = detail::scan_pairs(n, [&](Elem a, Elem b) { return a < b && send[a] == send[b]; });
  c.e = detail::scan_pairs(n, [&](Elem a, Elem b) { return tgt.sqle(send[a], send[b]) && !src.sqle(a, b); });
  c.meets = detail::scan_pairs(n, [&](Elem a, Elem b) {
    const auto m = detail::meet_of(src, a, b);
    if (!m) return false;
    const auto tm = detail::meet_of(tgt, send[a], send[b]);
    return !tm || *tm != send[*m];
  });
  return c;
}

/// g ∘ f as index maps.
inline std::vector<Elem> compose(const std::vector<Elem>& f, const std::vector<Elem>& g) {
  std::vector<Elem> out(f.size());
  for (Elem a = 0; a < f.size(); ++a) out[a] = g.at(f[a]);
  return out;
}

/// Human-readable list of failed flags, empty when everything holds.
inline std::string certificate_failures(const Certificate& c) {
  std::string out;
  auto add = [&](const char* label, const Flag& f) {
    if (f.holds) return;
    if (!out.empty()) out += ", ";
    out += label + witness_text(f.witness);
  };
  add(c.semilattice_mode ? "join-hom" : "order-hom", c.structure_hom);
  if (!c.semilattice_mode) add("order-embedding", c.order_embedding);
  add("(M)", c.m);
  add("injective", c.injective);
  add("(E)", c.e);
  return out;
}

}  // namespace spectopo
