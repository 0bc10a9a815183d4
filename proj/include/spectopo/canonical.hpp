#pragma once

// Canonical forms of finite relational structures under relabeling.
//
// Elements are first coloured by iterated degree refinement; only permutations
// that list the colour classes in rank order are tried, and the search is
// pruned on the lexicographic prefix of the code.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <tuple>
#include <vector>

#include "spectopo/closure.hpp"
#include "spectopo/finorder.hpp"
#include "spectopo/spec.hpp"

namespace spectopo {

using CanonCode = std::vector<std::uint8_t>;

namespace detail {

inline std::vector<std::size_t> refine_colours(std::size_t n, const std::vector<const Relation*>& rels) {
  std::vector<std::size_t> colour(n, 0);
  std::size_t classes = 0;
  for (int round = 0; round <= static_cast<int>(n); ++round) {
    std::vector<std::vector<std::size_t>> sig(n);
    for (Elem a = 0; a < n; ++a) {
      sig[a].push_back(colour[a]);
      for (const Relation* r : rels) sig[a].push_back(r->test(a, a));
      std::vector<std::size_t> nb;
      for (Elem b = 0; b < n; ++b) {
        if (b == a) continue;
        std::size_t code = colour[b];
        for (const Relation* r : rels) code = code * 4 + (r->test(a, b) ? 2u : 0u) + (r->test(b, a) ? 1u : 0u);
        nb.push_back(code);
      }
      std::sort(nb.begin(), nb.end());
      sig[a].insert(sig[a].end(), nb.begin(), nb.end());
    }
    std::vector<std::vector<std::size_t>> uniq = sig;
    std::sort(uniq.begin(), uniq.end());
    uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
    for (Elem a = 0; a < n; ++a)
      colour[a] = static_cast<std::size_t>(std::lower_bound(uniq.begin(), uniq.end(), sig[a]) - uniq.begin());
    if (uniq.size() == classes) break;
    classes = uniq.size();
  }
  return colour;
}

class CanonSearch {
 public:
  CanonSearch(std::size_t n, std::vector<const Relation*> rels) : n_(n), rels_(std::move(rels)) {
    colour_ = refine_colours(n, rels_);
    slot_colour_ = colour_;
    std::sort(slot_colour_.begin(), slot_colour_.end());
    used_.assign(n, false);
    perm_.assign(n, 0);
  }

  void run() {
    code_.clear();
    dfs(0, false);
  }

  const CanonCode& best() const { return best_; }
  const std::vector<Elem>& best_perm() const { return best_perm_; }

 private:
  // Code bits contributed by placing perm_[k] at position k.
  void append_slot(std::size_t k) {
    for (const Relation* r : rels_) {
      for (std::size_t i = 0; i <= k; ++i) code_.push_back(r->test(perm_[i], perm_[k]));
      for (std::size_t i = 0; i < k; ++i) code_.push_back(r->test(perm_[k], perm_[i]));
    }
  }

  void dfs(std::size_t k, bool strictly_better) {
    if (k == n_) {
      if (best_perm_.empty() || strictly_better || code_ < best_) {
        best_ = code_;
        best_perm_ = perm_;
      }
      return;
    }
    for (Elem a = 0; a < n_; ++a) {
      if (used_[a] || colour_[a] != slot_colour_[k]) continue;
      const std::size_t mark = code_.size();
      perm_[k] = a;
      append_slot(k);
      bool better = strictly_better;
      bool prune = false;
      if (!best_perm_.empty() && !strictly_better) {
        const auto cmp = std::lexicographical_compare_three_way(code_.begin() + static_cast<long>(mark), code_.end(),
                                                                best_.begin() + static_cast<long>(mark),
                                                                best_.begin() + static_cast<long>(code_.size()));
        if (cmp > 0) prune = true;
        if (cmp < 0) better = true;
      }
      if (!prune) {
        used_[a] = true;
        dfs(k + 1, better);
        used_[a] = false;
      }
      code_.resize(mark);
    }
  }

  std::size_t n_;
  std::vector<const Relation*> rels_;
  std::vector<std::size_t> colour_, slot_colour_;
  std::vector<bool> used_;
  std::vector<Elem> perm_, best_perm_;
  CanonCode code_, best_;
};

}  // namespace detail

struct Canonical {
  CanonCode code;
  /// perm[i] is the original element placed at canonical position i.
  std::vector<Elem> perm;
};

/// Minimum code over colour-respecting relabelings. Two tuples of relations
/// get equal codes iff some bijection carries one onto the other.
inline Canonical canonical_relations(std::size_t n, const std::vector<const Relation*>& rels) {
  Canonical c;
  c.code.push_back(static_cast<std::uint8_t>(n));
  c.code.push_back(static_cast<std::uint8_t>(rels.size()));
  if (n == 0) return c;
  detail::CanonSearch s(n, rels);
  s.run();
  c.code.insert(c.code.end(), s.best().begin(), s.best().end());
  c.perm = s.best_perm();
  return c;
}

inline Canonical canonical(const Poset& p) { return canonical_relations(p.size(), {&p.relation()}); }

inline Canonical canonical(const SpecPoset& s) {
  return canonical_relations(s.size(), {&s.base().relation(), &s.specialization()});
}

/// The join table is determined by the order, so the order and ⊑ suffice.
inline Canonical canonical(const SpecSemilattice& s) {
  const Relation order = order_from_join(s.base()).relation();
  Canonical c = canonical_relations(s.size(), {&order, &s.specialization()});
  c.code.insert(c.code.begin(), 1);
  return c;
}

/// Relabels a relation so that new element i is old element perm[i].
inline Relation permute(const Relation& r, const std::vector<Elem>& perm) {
  Relation out(r.size());
  for (Elem i = 0; i < perm.size(); ++i)
    for (Elem j = 0; j < perm.size(); ++j) out.set(i, j, r.test(perm[i], perm[j]));
  return out;
}

inline Poset permute(const Poset& p, const std::vector<Elem>& perm) {
  return validate_poset(Carrier::numbered(p.size()), permute(p.relation(), perm));
}

inline JoinSemilattice permute(const JoinSemilattice& j, const std::vector<Elem>& perm) {
  std::vector<Elem> inv(perm.size());
  for (Elem i = 0; i < perm.size(); ++i) inv[perm[i]] = i;
  const std::size_t n = j.size();
  std::vector<Elem> table(n * n);
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) table[a * n + b] = inv[j.join(perm[a], perm[b])];
  return semilattice_from_table(Carrier::numbered(n), std::move(table));
}

inline SpecPoset permute(const SpecPoset& s, const std::vector<Elem>& perm) {
  return SpecPoset(permute(s.base(), perm), permute(s.specialization(), perm));
}

inline SpecSemilattice permute(const SpecSemilattice& s, const std::vector<Elem>& perm) {
  return SpecSemilattice(permute(s.base(), perm), permute(s.specialization(), perm));
}

/// Least sorted family of point-permuted closed sets; brute force over all
/// point permutations.
inline std::vector<Subset> canonical_family(const ClosureSpace& x) {
  std::vector<Elem> perm(x.points());
  std::iota(perm.begin(), perm.end(), Elem{0});
  std::vector<Subset> best;
  do {
    std::vector<Subset> fam;
    for (Subset c : x.closed()) {
      Subset m = 0;
      for (Elem p = 0; p < perm.size(); ++p)
        if (contains(c, p)) m |= Subset{1} << perm[p];
      fam.push_back(m);
    }
    std::sort(fam.begin(), fam.end());
    if (best.empty() || fam < best) best = fam;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace spectopo
