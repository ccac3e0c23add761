#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "wlr/structure.hpp"

namespace wlr {

/// Isomorphism type of the ordered substructure induced by a k-tuple.
///
/// A position map is a function f: [j] -> [k], indexed by reading (f(0), ..., f(j-1)) as a
/// base-k number. membership[r] lists (sorted) every position map f of arity(r) for which
/// (v_f(0), ..., v_f(j-1)) lies in relation r.
struct AtomicType {
  /// equality_pattern[i] is the least position j with v_j == v_i.
  std::vector<std::uint8_t> equality_pattern;
  std::vector<std::vector<std::uint32_t>> membership;

  auto operator<=>(const AtomicType&) const = default;
  bool operator==(const AtomicType&) const = default;

  /// Deterministic token (no whitespace), equal for equal types over the same vocabulary.
  std::string encode() const;
};

/// Throws InputError if an entry is out of range or k is below the vocabulary arity.
AtomicType atomic_type(const RelationalStructure& structure, std::span<const Element> tuple);

/// Fast canonical encoder for atomic types of k-tuples of one structure.
///
/// Codes produced by encoders of structures with equal vocabularies are directly comparable.
/// No arity check is performed: k-tuples with k below the arity still have a well-defined type.
class TypeEncoder {
 public:
  TypeEncoder(const RelationalStructure& structure, int k);

  int k() const { return k_; }
  /// Appends the code of `tuple` to `out`.
  void encode(std::span<const Element> tuple, std::vector<std::uint32_t>& out) const;
  AtomicType decode_membership(std::span<const Element> tuple) const;

 private:
  struct ArityGroup {
    int arity;
    std::vector<std::vector<std::uint8_t>> maps;
    std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> relations_at;
  };

  const RelationalStructure* structure_;
  int k_;
  std::vector<ArityGroup> groups_;
};

std::vector<std::uint8_t> equality_pattern(std::span<const Element> tuple);

}  // namespace wlr
