#pragma once

// Finite carriers, boolean relation matrices, posets and join-semilattices.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spectopo/error.hpp"

namespace spectopo {

/// A finite set of index-addressed elements with printable names.
class Carrier {
 public:
  Carrier() = default;
  explicit Carrier(std::vector<std::string> names) : names_(std::move(names)) {
    for (std::size_t i = 0; i < names_.size(); ++i)
      for (std::size_t j = i + 1; j < names_.size(); ++j)
        if (names_[i] == names_[j]) throw make_error("DuplicateName", {i, j}, names_[i]);
  }

  /// Elements named "0", "1", ... "n-1".
  static Carrier numbered(std::size_t n) {
    std::vector<std::string> names;
    names.reserve(n);
    for (std::size_t i = 0; i < n; ++i) names.push_back(std::to_string(i));
    return Carrier(std::move(names));
  }

  std::size_t size() const noexcept { return names_.size(); }
  const std::string& name(Elem i) const { return names_.at(i); }
  const std::vector<std::string>& names() const noexcept { return names_; }

  std::optional<Elem> index_of(const std::string& name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) return std::nullopt;
    return static_cast<Elem>(it - names_.begin());
  }

  bool operator==(const Carrier&) const = default;

 private:
  std::vector<std::string> names_;
};

/// Square boolean matrix; test(i, j) reads "i is related to j".
class Relation {
 public:
  Relation() = default;
  explicit Relation(std::size_t n) : n_(n), bits_(n * n, 0) {}

  static Relation identity(std::size_t n) {
    Relation r(n);
    for (Elem i = 0; i < n; ++i) r.set(i, i);
    return r;
  }
  static Relation universal(std::size_t n) {
    Relation r(n);
    std::fill(r.bits_.begin(), r.bits_.end(), std::uint8_t{1});
    return r;
  }
  static Relation from_pairs(std::size_t n, const std::vector<std::pair<Elem, Elem>>& pairs) {
    Relation r(n);
    for (auto [a, b] : pairs) r.set(a, b);
    return r;
  }

  std::size_t size() const noexcept { return n_; }
  bool test(Elem i, Elem j) const { return bits_[i * n_ + j] != 0; }
  void set(Elem i, Elem j, bool v = true) { bits_[i * n_ + j] = v ? 1 : 0; }

  std::size_t count() const { return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1)); }

  /// True when every pair of *this is also in other.
  bool subset_of(const Relation& other) const {
    for (std::size_t k = 0; k < bits_.size(); ++k)
      if (bits_[k] && !other.bits_[k]) return false;
    return true;
  }

  Relation operator&(const Relation& o) const {
    Relation r(n_);
    for (std::size_t k = 0; k < bits_.size(); ++k) r.bits_[k] = bits_[k] & o.bits_[k];
    return r;
  }
  Relation operator|(const Relation& o) const {
    Relation r(n_);
    for (std::size_t k = 0; k < bits_.size(); ++k) r.bits_[k] = bits_[k] | o.bits_[k];
    return r;
  }

  std::vector<std::pair<Elem, Elem>> pairs() const {
    std::vector<std::pair<Elem, Elem>> out;
    for (Elem i = 0; i < n_; ++i)
      for (Elem j = 0; j < n_; ++j)
        if (test(i, j)) out.emplace_back(i, j);
    return out;
  }

  const std::vector<std::uint8_t>& raw() const noexcept { return bits_; }

  bool operator==(const Relation&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint8_t> bits_;
};

/// Least reflexive transitive relation containing rel (Warshall).
inline Relation refl_trans_close(Relation rel) {
  const std::size_t n = rel.size();
  for (Elem i = 0; i < n; ++i) rel.set(i, i);
  for (Elem k = 0; k < n; ++k)
    for (Elem i = 0; i < n; ++i)
      if (rel.test(i, k))
        for (Elem j = 0; j < n; ++j)
          if (rel.test(k, j)) rel.set(i, j);
  return rel;
}

class Poset;
Poset validate_poset(Carrier carrier, Relation rel);

/// A finite partial order. Only validate_poset builds one, so the order laws hold.
class Poset {
 public:
  Poset() = default;

  const Carrier& carrier() const noexcept { return carrier_; }
  const Relation& relation() const noexcept { return leq_; }
  std::size_t size() const noexcept { return leq_.size(); }
  bool leq(Elem a, Elem b) const { return leq_.test(a, b); }
  const std::string& name(Elem a) const { return carrier_.name(a); }

  /// Greatest lower bound of a and b, if it exists.
  std::optional<Elem> meet(Elem a, Elem b) const {
    std::optional<Elem> best;
    for (Elem c = 0; c < size(); ++c)
      if (leq(c, a) && leq(c, b) && (!best || leq(*best, c))) best = c;
    if (!best) return std::nullopt;
    for (Elem c = 0; c < size(); ++c)
      if (leq(c, a) && leq(c, b) && !leq(c, *best)) return std::nullopt;
    return best;
  }

  /// Covering pairs (a < b with nothing strictly between), lexicographic.
  std::vector<std::pair<Elem, Elem>> covers() const {
    std::vector<std::pair<Elem, Elem>> out;
    for (Elem a = 0; a < size(); ++a)
      for (Elem b = 0; b < size(); ++b) {
        if (a == b || !leq(a, b)) continue;
        bool between = false;
        for (Elem c = 0; c < size() && !between; ++c)
          between = c != a && c != b && leq(a, c) && leq(c, b);
        if (!between) out.emplace_back(a, b);
      }
    return out;
  }

  bool operator==(const Poset&) const = default;

 private:
  friend Poset validate_poset(Carrier, Relation);
  Carrier carrier_;
  Relation leq_;
};

/// Checks reflexivity, antisymmetry and transitivity; the first violated law
/// is thrown with its least witness (NotReflexive(a), NotAntisymmetric(a,b),
/// NotTransitive(a,b,c)).
inline Poset validate_poset(Carrier carrier, Relation rel) {
  const std::size_t n = rel.size();
  if (carrier.size() != n) throw make_error("SizeMismatch", {carrier.size(), n});
  for (Elem a = 0; a < n; ++a)
    if (!rel.test(a, a)) throw make_error("NotReflexive", {a});
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      if (a != b && rel.test(a, b) && rel.test(b, a)) throw make_error("NotAntisymmetric", {a, b});
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      for (Elem c = 0; c < n; ++c)
        if (rel.test(a, b) && rel.test(b, c) && !rel.test(a, c))
          throw make_error("NotTransitive", {a, b, c});
  Poset p;
  p.carrier_ = std::move(carrier);
  p.leq_ = std::move(rel);
  return p;
}

/// Closes the given pairs reflexively and transitively, then validates.
inline Poset poset_from_pairs(Carrier carrier, const std::vector<std::pair<Elem, Elem>>& pairs) {
  const std::size_t n = carrier.size();
  return validate_poset(std::move(carrier), refl_trans_close(Relation::from_pairs(n, pairs)));
}

class JoinSemilattice;
JoinSemilattice semilattice_from_table(Carrier carrier, std::vector<Elem> table);

/// A finite join-semilattice stored as its join table.
class JoinSemilattice {
 public:
  JoinSemilattice() = default;

  const Carrier& carrier() const noexcept { return carrier_; }
  std::size_t size() const noexcept { return carrier_.size(); }
  Elem join(Elem a, Elem b) const { return table_[a * size() + b]; }
  bool leq(Elem a, Elem b) const { return join(a, b) == b; }
  const std::string& name(Elem a) const { return carrier_.name(a); }
  const std::vector<Elem>& table() const noexcept { return table_; }

  std::optional<Elem> meet(Elem a, Elem b) const {
    std::optional<Elem> best;
    for (Elem c = 0; c < size(); ++c)
      if (leq(c, a) && leq(c, b) && (!best || leq(*best, c))) best = c;
    if (!best) return std::nullopt;
    for (Elem c = 0; c < size(); ++c)
      if (leq(c, a) && leq(c, b) && !leq(c, *best)) return std::nullopt;
    return best;
  }

  bool operator==(const JoinSemilattice&) const = default;

 private:
  friend JoinSemilattice semilattice_from_table(Carrier, std::vector<Elem>);
  Carrier carrier_;
  std::vector<Elem> table_;
};

/// Validates a row-major join table: in range, idempotent, commutative, associative.
inline JoinSemilattice semilattice_from_table(Carrier carrier, std::vector<Elem> table) {
  const std::size_t n = carrier.size();
  if (table.size() != n * n) throw make_error("SizeMismatch", {table.size(), n * n});
  auto j = [&](Elem a, Elem b) { return table[a * n + b]; };
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      if (j(a, b) >= n) throw make_error("JoinOutOfRange", {a, b});
  for (Elem a = 0; a < n; ++a)
    if (j(a, a) != a) throw make_error("NotIdempotent", {a});
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      if (j(a, b) != j(b, a)) throw make_error("NotCommutative", {a, b});
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      for (Elem c = 0; c < n; ++c)
        if (j(j(a, b), c) != j(a, j(b, c))) throw make_error("NotAssociative", {a, b, c});
  JoinSemilattice s;
  s.carrier_ = std::move(carrier);
  s.table_ = std::move(table);
  return s;
}

/// Thrown by joins_from_order when some pair has no least upper bound.
class MissingJoin : public Error {
 public:
  MissingJoin(Elem a, Elem b, bool has_upper_bound)
      : Error("MissingJoin",
              "MissingJoin" + witness_text({a, b}) +
                  (has_upper_bound ? ": no least upper bound" : ": no upper bound"),
              {a, b}),
        has_upper_bound_(has_upper_bound) {}

  /// False when a and b have no common upper bound at all.
  bool has_upper_bound() const noexcept { return has_upper_bound_; }

 private:
  bool has_upper_bound_;
};

inline JoinSemilattice joins_from_order(const Poset& p) {
  const std::size_t n = p.size();
  std::vector<Elem> table(n * n);
  for (Elem a = 0; a < n; ++a)
    for (Elem b = a; b < n; ++b) {
      std::optional<Elem> least;
      bool any = false;
      for (Elem c = 0; c < n; ++c) {
        if (!p.leq(a, c) || !p.leq(b, c)) continue;
        any = true;
        bool below_all = true;
        for (Elem d = 0; d < n && below_all; ++d)
          if (p.leq(a, d) && p.leq(b, d)) below_all = p.leq(c, d);
        if (below_all) least = c;
      }
      if (!least) throw MissingJoin(a, b, any);
      table[a * n + b] = table[b * n + a] = *least;
    }
  return semilattice_from_table(p.carrier(), std::move(table));
}

inline Poset order_from_join(const JoinSemilattice& j) {
  const std::size_t n = j.size();
  Relation r(n);
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) r.set(a, b, j.leq(a, b));
  return validate_poset(j.carrier(), std::move(r));
}

/// Element names may not collide with the tokens of the structure file format.
inline bool is_valid_name(const std::string& s) {
  if (s.empty()) return false;
  static const std::string extra = "_.{}()'^~+*@!?/:$%";
  for (char c : s) {
    const auto u = static_cast<unsigned char>(c);
    if (!(std::isalnum(u) || extra.find(c) != std::string::npos)) return false;
  }
  return true;
}

}  // namespace spectopo
