#pragma once

// Exhaustive generation of small structures up to isomorphism, and labeled
// Moore families and topologies. Results are sorted by canonical code.

#include <algorithm>
#include <bit>
#include <map>
#include <vector>

#include "spectopo/canonical.hpp"
#include "spectopo/closure.hpp"
#include "spectopo/spec.hpp"

namespace spectopo {

inline constexpr std::size_t kMaxPosetEnum = 6;
inline constexpr std::size_t kMaxSemilatticeEnum = 5;
inline constexpr std::size_t kMaxSpecBase = 4;
inline constexpr std::size_t kMaxMooreGround = 4;

namespace detail {

inline void size_guard(std::size_t n, std::size_t limit) {
  if (n > limit) throw make_error("SizeGuard", {n, limit});
}

template <class T>
std::vector<T> sorted_values(std::map<CanonCode, T>& by_code) {
  std::vector<T> out;
  out.reserve(by_code.size());
  for (auto& [code, t] : by_code) out.push_back(std::move(t));
  return out;
}

}  // namespace detail

/// Every poset of size n has a maximal element whose removal leaves a poset
/// of size n-1, so extending each (n-1)-poset by a new maximal element above
/// each of its downsets reaches every n-poset.
inline std::vector<Poset> enum_posets(std::size_t n) {
  detail::size_guard(n, kMaxPosetEnum);
  std::vector<Poset> level{validate_poset(Carrier::numbered(0), Relation(0))};
  for (std::size_t k = 1; k <= n; ++k) {
    std::map<CanonCode, Poset> found;
    for (const Poset& p : level) {
      const std::size_t m = p.size();
      for (Subset d = 0; d < (Subset{1} << m); ++d) {
        bool down = true;
        for (Elem a = 0; a < m && down; ++a)
          if (contains(d, a))
            for (Elem b = 0; b < m; ++b)
              if (p.leq(b, a) && !contains(d, b)) {
                down = false;
                break;
              }
        if (!down) continue;
        Relation r(k);
        for (Elem a = 0; a < m; ++a)
          for (Elem b = 0; b < m; ++b) r.set(a, b, p.leq(a, b));
        for (Elem a = 0; a < m; ++a) r.set(a, m, contains(d, a));
        r.set(m, m);
        const Poset q = validate_poset(Carrier::numbered(k), r);
        const Canonical c = canonical(q);
        if (!found.count(c.code)) found.emplace(c.code, permute(q, c.perm));
      }
    }
    level = detail::sorted_values(found);
  }
  return level;
}

/// Posets of size n with all binary joins. The empty poset is not counted.
inline std::vector<JoinSemilattice> enum_join_semilattices(std::size_t n) {
  detail::size_guard(n, kMaxSemilatticeEnum);
  std::vector<JoinSemilattice> out;
  if (n == 0) return out;
  for (const Poset& p : enum_posets(n)) {
    try {
      out.push_back(joins_from_order(p));
    } catch (const MissingJoin&) {
    }
  }
  return out;
}

namespace detail {

template <class Base>
std::vector<Relation> specializations_over(const Base& base) {
  const std::size_t n = base.size();
  size_guard(n, kMaxSpecBase);
  std::vector<std::pair<Elem, Elem>> free;
  Relation order(n);
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) {
      if (base.leq(a, b))
        order.set(a, b);
      else
        free.emplace_back(a, b);
    }
  std::vector<Relation> out;
  for (Subset mask = 0; mask < (Subset{1} << free.size()); ++mask) {
    Relation r = order;
    for (std::size_t i = 0; i < free.size(); ++i)
      if (contains(mask, i)) r.set(free[i].first, free[i].second);
    bool ok = true;
    for (Elem a = 0; a < n && ok; ++a)
      for (Elem b = 0; b < n && ok; ++b) {
        if (!r.test(a, b)) continue;
        for (Elem c = 0; c < n && ok; ++c) {
          if (r.test(b, c) && !r.test(a, c)) ok = false;
          if constexpr (requires { base.join(a, b); }) {
            if (r.test(c, b) && !r.test(base.join(a, c), b)) ok = false;
          }
        }
      }
    if (ok) out.push_back(std::move(r));
  }
  return out;
}

}  // namespace detail

/// All relations making the base a specialization poset, by increasing mask
/// over the pairs not already in <=.
inline std::vector<Relation> enum_specializations(const Poset& base) { return detail::specializations_over(base); }

/// All relations making the base a specialization semilattice.
inline std::vector<Relation> enum_specializations(const JoinSemilattice& base) {
  return detail::specializations_over(base);
}

inline std::vector<SpecPoset> enum_spec_posets(std::size_t n) {
  detail::size_guard(n, kMaxSpecBase);
  std::map<CanonCode, SpecPoset> found;
  for (const Poset& p : enum_posets(n))
    for (Relation& r : enum_specializations(p)) {
      const SpecPoset s(p, std::move(r));
      const Canonical c = canonical(s);
      if (!found.count(c.code)) found.emplace(c.code, permute(s, c.perm));
    }
  return detail::sorted_values(found);
}

/// Every finite specialization semilattice is principal: S_b is nonempty and
/// closed under joins by (S3), so its join is its maximum. The scan below
/// asserts it on everything produced.
inline std::vector<SpecSemilattice> enum_spec_semilattices(std::size_t n) {
  detail::size_guard(n, kMaxSpecBase);
  std::map<CanonCode, SpecSemilattice> found;
  for (const JoinSemilattice& j : enum_join_semilattices(n))
    for (Relation& r : enum_specializations(j)) {
      const SpecSemilattice s(j, std::move(r));
      const Canonical c = canonical(s);
      if (!found.count(c.code)) found.emplace(c.code, permute(s, c.perm));
    }
  auto out = detail::sorted_values(found);
  for (Elem i = 0; i < out.size(); ++i)
    if (!compute_kmap(out[i]).total()) throw make_error("NotPrincipal", {n, i}, "enumerated semilattice");
  return out;
}

/// Labeled Moore families on {0..m-1}. Subsets are decided by decreasing
/// size; a subset that is the intersection of two chosen larger ones is
/// forced in, every other one branches.
inline std::vector<ClosureSpace> enum_moore_families(std::size_t m) {
  detail::size_guard(m, kMaxMooreGround);
  const Subset full = full_set(m);
  std::vector<Subset> order;
  for (Subset s = 0; s <= full; ++s)
    if (s != full) order.push_back(s);
  std::stable_sort(order.begin(), order.end(),
                   [](Subset a, Subset b) { return std::popcount(a) > std::popcount(b); });

  std::vector<std::vector<Subset>> families;
  std::vector<Subset> chosen{full};
  auto forced = [&](Subset s) {
    for (std::size_t i = 0; i < chosen.size(); ++i)
      for (std::size_t j = i + 1; j < chosen.size(); ++j)
        if ((chosen[i] & chosen[j]) == s) return true;
    return false;
  };
  auto dfs = [&](auto&& self, std::size_t k) -> void {
    if (k == order.size()) {
      families.push_back(chosen);
      return;
    }
    const Subset s = order[k];
    const bool must = forced(s);
    if (!must) self(self, k + 1);
    chosen.push_back(s);
    self(self, k + 1);
    chosen.pop_back();
  };
  dfs(dfs, 0);

  std::vector<ClosureSpace> out;
  out.reserve(families.size());
  const Carrier ground = Carrier::numbered(m);
  for (auto& f : families) out.push_back(ClosureSpace::from_family(ground, std::move(f)));
  std::sort(out.begin(), out.end(), [](const ClosureSpace& a, const ClosureSpace& b) { return a.closed() < b.closed(); });
  return out;
}

/// Labeled topologies: Moore families that are union-closed with the empty
/// set closed.
inline std::vector<ClosureSpace> enum_topologies(std::size_t m) {
  std::vector<ClosureSpace> out;
  for (ClosureSpace& x : enum_moore_families(m))
    if (topology_tag(x).is_topology) out.push_back(std::move(x));
  return out;
}

/// Keeps one family per isomorphism class, in order of first appearance.
inline std::vector<ClosureSpace> dedup_spaces(const std::vector<ClosureSpace>& spaces) {
  std::map<std::vector<Subset>, bool> seen;
  std::vector<ClosureSpace> out;
  for (const auto& x : spaces)
    if (seen.emplace(canonical_family(x), true).second) out.push_back(x);
  return out;
}

/// Picks count items at indices floor(i*N/count), or all of them when N <= count.
template <class T>
std::vector<T> stride_sample(const std::vector<T>& all, std::size_t count) {
  if (all.size() <= count) return all;
  std::vector<T> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(all[i * all.size() / count]);
  return out;
}

}  // namespace spectopo
