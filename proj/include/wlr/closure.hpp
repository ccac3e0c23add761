#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <optional>

#include "wlr/xor_system.hpp"

namespace wlr {

/// S together with every C1 ⊕ C2 (C1, C2 in S) of support size at most k.
XorSystem attractor(const XorSystem& s, std::size_t k);

struct ClosureResult {
  XorSystem system;
  /// Least r with cl^(r+1) = cl^(r).
  std::size_t steps = 0;
};

/// Iterates the attractor to its fixpoint. Throws BudgetExceeded if the closure grows past
/// max_constraints.
ClosureResult closure(const XorSystem& s, std::size_t k,
                      std::size_t max_constraints = 10'000'000);
/// r applications of the attractor.
XorSystem closure_bounded(const XorSystem& s, std::size_t k, std::size_t r,
                          std::size_t max_constraints = 10'000'000);

/// All (⊕D, 0) for D ⊆ C_G with |D| <= floor(k / alpha) and |⊕D| <= k.
/// Requires all parities 0 and alpha > 0. Throws BudgetExceeded when the number of
/// candidate subsets exceeds max_subsets.
XorSystem star_closure(const XorSystem& graph_constraints, std::size_t k,
                       boost::rational<std::int64_t> alpha, std::uint64_t max_subsets = 10'000'000);

/// A satisfying total assignment by Gaussian elimination over GF(2), or nothing.
std::optional<std::vector<std::uint8_t>> gauss_satisfiable(const XorSystem& s);

}  // namespace wlr
