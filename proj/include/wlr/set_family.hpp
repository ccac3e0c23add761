#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "wlr/coloring.hpp"

namespace wlr {

/// An ordered collection of sorted subsets of U = {0, ..., universe-1}.
struct SetFamily {
  std::uint32_t universe = 0;
  std::vector<std::vector<std::uint32_t>> members;

  std::size_t size() const { return members.size(); }
  /// Every member has exactly k distinct elements of U.
  bool is_uniform(std::size_t k) const;
  /// Largest |E1 ∩ E2| over distinct members (0 if fewer than two).
  std::size_t max_pairwise_intersection() const;
  /// The first t members.
  SetFamily prefix(std::size_t t) const;
};

/// Sets S_p = {(i, p(i)) : 0 <= i < k} for all polynomials p over F_q of degree <= k-2,
/// with (i, y) encoded as i*q + y. The family has q^(k-1) members.
/// A universe larger than k*q may be requested; the extra points stay unused.
SetFamily polynomial_set_family(std::uint32_t q, std::uint32_t k,
                                std::optional<std::uint32_t> universe = std::nullopt);

/// k-subsets of [0, n) in lexicographic order, each kept if it meets every kept set in at
/// most k-2 points.
SetFamily greedy_set_family(std::uint32_t n, std::uint32_t k);

bool is_prime(std::uint32_t q);

/// Coloring of (U x {0,1})^k, with (u, a) encoded as 2u + a: two tuples share a color iff
/// they have the same base points, the same equality pattern, and (when the base points
/// form a member of the family) the same bit parity.
TupleColoring family_coloring(const SetFamily& family, int k);

/// family_coloring of the prefixes F_0, F_1, ..., F_|F|.
std::vector<TupleColoring> stable_chain(const SetFamily& family, int k);

}  // namespace wlr
