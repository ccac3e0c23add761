#include "wlr/atomic_type.hpp"

#include <algorithm>
#include <map>

#include "wlr/error.hpp"

namespace wlr {

std::vector<std::uint8_t> equality_pattern(std::span<const Element> tuple) {
  std::vector<std::uint8_t> p(tuple.size());
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    std::size_t j = 0;
    while (tuple[j] != tuple[i]) ++j;
    p[i] = static_cast<std::uint8_t>(j);
  }
  return p;
}

std::string AtomicType::encode() const {
  std::string s = "p";
  for (std::size_t i = 0; i < equality_pattern.size(); ++i)
    s += (i ? "." : "") + std::to_string(equality_pattern[i]);
  for (std::size_t r = 0; r < membership.size(); ++r) {
    if (membership[r].empty()) continue;
    s += "_r" + std::to_string(r) + "m";
    for (std::size_t i = 0; i < membership[r].size(); ++i)
      s += (i ? "." : "") + std::to_string(membership[r][i]);
  }
  return s;
}

TypeEncoder::TypeEncoder(const RelationalStructure& structure, int k)
    : structure_(&structure), k_(k) {
  if (k < 1 || k > 16) throw InputError("tuple length must be in [1, 16]");
  const auto& vocab = structure.vocabulary();
  std::map<int, std::size_t> group_of;
  for (std::size_t r = 0; r < vocab.size(); ++r) {
    int j = vocab[r].arity;
    if (!group_of.count(j)) {
      group_of[j] = 0;
    }
  }
  for (auto& [arity, idx] : group_of) {
    idx = groups_.size();
    ArityGroup g;
    g.arity = arity;
    std::size_t count = 1;
    for (int i = 0; i < arity; ++i) count *= static_cast<std::size_t>(k);
    if (count > (1u << 20)) throw InputError("too many position maps for atomic types");
    g.maps.reserve(count);
    std::vector<std::uint8_t> f(arity, 0);
    for (std::size_t c = 0; c < count; ++c) {
      g.maps.push_back(f);
      for (int i = arity - 1; i >= 0; --i) {
        if (++f[i] < k) break;
        f[i] = 0;
      }
    }
    groups_.push_back(std::move(g));
  }
  const std::uint64_t n = structure.universe_size();
  for (std::size_t r = 0; r < vocab.size(); ++r) {
    auto& g = groups_[group_of[vocab[r].arity]];
    for (const auto& t : structure.tuples(r)) {
      std::uint64_t code = 0;
      for (Element e : t) code = code * n + e;
      g.relations_at[code].push_back(static_cast<std::uint32_t>(r));
    }
  }
}

void TypeEncoder::encode(std::span<const Element> tuple, std::vector<std::uint32_t>& out) const {
  const std::uint64_t n = structure_->universe_size();
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    std::size_t j = 0;
    while (tuple[j] != tuple[i]) ++j;
    out.push_back(static_cast<std::uint32_t>(j));
  }
  for (const auto& g : groups_) {
    for (const auto& f : g.maps) {
      std::uint64_t code = 0;
      for (auto pos : f) code = code * n + tuple[pos];
      auto it = g.relations_at.find(code);
      if (it == g.relations_at.end()) {
        out.push_back(0);
      } else {
        out.push_back(static_cast<std::uint32_t>(it->second.size()));
        out.insert(out.end(), it->second.begin(), it->second.end());
      }
    }
  }
}

AtomicType TypeEncoder::decode_membership(std::span<const Element> tuple) const {
  AtomicType t;
  t.equality_pattern = equality_pattern(tuple);
  t.membership.assign(structure_->vocabulary().size(), {});
  const std::uint64_t n = structure_->universe_size();
  for (const auto& g : groups_) {
    for (std::size_t m = 0; m < g.maps.size(); ++m) {
      std::uint64_t code = 0;
      for (auto pos : g.maps[m]) code = code * n + tuple[pos];
      auto it = g.relations_at.find(code);
      if (it == g.relations_at.end()) continue;
      for (auto r : it->second) t.membership[r].push_back(static_cast<std::uint32_t>(m));
    }
  }
  return t;
}

AtomicType atomic_type(const RelationalStructure& structure, std::span<const Element> tuple) {
  const int k = static_cast<int>(tuple.size());
  if (k < structure.vocabulary().max_arity())
    throw InputError("tuple length " + std::to_string(k) + " is below the vocabulary arity " +
                     std::to_string(structure.vocabulary().max_arity()));
  for (Element e : tuple)
    if (e >= structure.universe_size()) throw InputError("tuple entry out of range");
  return TypeEncoder(structure, k).decode_membership(tuple);
}

}  // namespace wlr
