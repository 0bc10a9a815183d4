#pragma once

// Subsets of a small ground set as bitmasks, and the powerset semilattice.

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "spectopo/finorder.hpp"

namespace spectopo {

using Subset = std::uint64_t;

inline constexpr std::size_t kMaxGround = 63;

inline constexpr Subset full_set(std::size_t n) { return n >= 64 ? ~Subset{0} : (Subset{1} << n) - 1; }
inline constexpr bool subset_of(Subset a, Subset b) { return (a & ~b) == 0; }
inline constexpr bool contains(Subset a, std::size_t p) { return (a >> p) & 1u; }
inline int cardinality(Subset a) { return std::popcount(a); }

/// "{p.q}" with the point names in index order; "{}" for the empty set.
inline std::string subset_name(const Carrier& ground, Subset s) {
  std::string out = "{";
  bool first = true;
  for (std::size_t p = 0; p < ground.size(); ++p)
    if (contains(s, p)) {
      if (!first) out += ".";
      out += ground.name(p);
      first = false;
    }
  return out + "}";
}

/// The full powerset of ground as a carrier; element index == bitmask.
inline Carrier powerset_carrier(const Carrier& ground) {
  std::vector<std::string> names;
  const Subset top = full_set(ground.size());
  names.reserve(static_cast<std::size_t>(top) + 1);
  for (Subset s = 0; s <= top; ++s) names.push_back(subset_name(ground, s));
  return Carrier(std::move(names));
}

/// (P(ground), union); element index == bitmask.
inline JoinSemilattice powerset_semilattice(const Carrier& ground) {
  const std::size_t n = std::size_t{1} << ground.size();
  std::vector<Elem> table(n * n);
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) table[a * n + b] = a | b;
  return semilattice_from_table(powerset_carrier(ground), std::move(table));
}

inline void check_ground_guard(std::size_t ground_size, std::size_t guard) {
  if (ground_size > guard) throw make_error("GroundTooLarge", {ground_size, guard});
}

}  // namespace spectopo
