#pragma once

#include <utility>

#include "wlr/structure.hpp"
#include "wlr/xor_system.hpp"

namespace wlr {

/// Universe element for the pair (x, b).
inline Element literal_element(Var x, int b) { return 2 * x + static_cast<Element>(b); }

/// The structure pair for an XOR system over the universe V x {0,1} (element 2x+b).
///
/// Unary X<i> = {(x_i,0),(x_i,1)}; for the j-th constraint (canonical order) a relation R<j>
/// whose tuples follow the sorted support. The first structure holds the tuples with even
/// bit sum, the second those whose bit sum equals the parity. Empty supports are rejected.
std::pair<RelationalStructure, RelationalStructure> to_structures(const XorSystem& s);

/// Applies the map (x, b) -> (x, b xor shift(x)) to a structure over V x {0,1}.
RelationalStructure flip_literals(const RelationalStructure& a,
                                  const std::vector<std::uint8_t>& shift);

}  // namespace wlr
