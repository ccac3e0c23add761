#pragma once

#include <string>
#include <utility>
#include <vector>

#include "wlr/coloring.hpp"
#include "wlr/structure.hpp"

namespace wlr {

/// Binary structure on V^ell: the pair (x, y) of ell-tuples lies in relation t<key>, where
/// key encodes the atomic type of the concatenated 2ell-tuple. ell-tuples are numbered in
/// row-major order (TupleSpace(ell, n)).
struct BinStructure {
  RelationalStructure structure;
  int ell = 0;
  std::uint32_t base_n = 0;
};

/// Relation name for a 2ell-tuple type key.
std::string bin_relation_name(const std::string& type_key);

/// Requires ell >= 1 and arity(A) <= 2 ell. The vocabulary holds the realized types only.
BinStructure bin_structure(const RelationalStructure& a, int ell);
/// Both structures over the union of their realized types (absent relations are empty).
std::pair<BinStructure, BinStructure> bin_structures(const RelationalStructure& a,
                                                     const RelationalStructure& b, int ell);

/// chi(v_1..v_k) = chi2((v_1..v_ell), (v_{ell+1}..v_k, v_k)) for k = 2 ell - 1, where chi2 is
/// the stable 2-WL coloring of the binary structure. Throws InputError unless k is odd, k >= 3.
TupleColoring derived_coloring(const RelationalStructure& a, int k);

}  // namespace wlr
