#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "wlr/coloring.hpp"
#include "wlr/structure.hpp"
#include "wlr/tensor.hpp"

namespace wlr {

struct AlgebraDimension {
  std::size_t dimension = 0;
  /// False when the product budget ran out before the span closed under multiplication.
  bool saturated = true;
};

/// Dimension of the algebra generated by the class indicator tensors of a partition of V^k.
AlgebraDimension algebra_dim(const TupleColoring& partition,
                             std::size_t max_products = 2'000'000);

struct AlgebraChainRow {
  std::size_t round = 0;
  std::size_t classes = 0;
  std::size_t dimension = 0;
  bool strict = false;  // dimension grew compared with the previous round
  bool saturated = true;
};

struct AlgebraChain {
  std::vector<AlgebraChainRow> rows;
  std::size_t r_infinity = 0;
  std::size_t strict_increases = 0;
  bool weakly_increasing = true;
  /// strict_increases <= 2 n^(k-1)
  bool within_bound = true;
  /// Window length ceil(k log2 n) + 1 and whether every full window saw a strict increase.
  std::size_t window = 0;
  bool windows_ok = true;
  bool saturated = true;
};

/// Runs k-WL to stability and computes the algebra dimension of every round's partition.
AlgebraChain wl_algebra_chain(const RelationalStructure& structure, int k,
                              std::size_t max_products = 2'000'000);

/// Shortest product c_{i_1} ... c_{i_s} (s <= s_max) of class indicators whose values at the
/// tuples with indices v and w differ; indices refer to the densely renumbered classes.
/// Throws BudgetExceeded after max_nodes distinct products.
std::optional<std::vector<std::size_t>> distinguishing_monomial(
    const TupleColoring& partition, std::size_t v, std::size_t w, std::size_t s_max,
    std::size_t max_nodes = 200'000);

}  // namespace wlr
