#include "wlr/translate.hpp"

#include "wlr/error.hpp"

namespace wlr {

std::pair<RelationalStructure, RelationalStructure> to_structures(const XorSystem& s) {
  Vocabulary vocab;
  for (std::size_t i = 0; i < s.num_vars(); ++i) vocab.add("X" + std::to_string(i), 1);
  const auto list = s.constraint_list();
  for (std::size_t j = 0; j < list.size(); ++j) {
    if (list[j].support.empty())
      throw InputError("constraints with empty support cannot be translated");
    vocab.add("R" + std::to_string(j), static_cast<int>(list[j].support.size()));
  }
  const auto n = static_cast<std::uint32_t>(2 * s.num_vars());
  RelationalStructure a(vocab, n, "A"), b(vocab, n, "B");
  for (Var x = 0; x < s.num_vars(); ++x)
    for (int bit = 0; bit < 2; ++bit) {
      a.add_tuple(x, {literal_element(x, bit)});
      b.add_tuple(x, {literal_element(x, bit)});
    }
  for (std::size_t j = 0; j < list.size(); ++j) {
    const auto& sup = list[j].support;
    const std::size_t rel = s.num_vars() + j;
    if (sup.size() >= 63) throw InputError("constraint support too large to enumerate");
    Tuple t(sup.size());
    for (std::uint64_t bits = 0; bits < (1ull << sup.size()); ++bits) {
      unsigned sum = 0;
      for (std::size_t i = 0; i < sup.size(); ++i) {
        int bit = (bits >> (sup.size() - 1 - i)) & 1;
        sum ^= bit;
        t[i] = literal_element(sup[i], bit);
      }
      if (sum == 0) a.add_tuple(rel, t);
      if (sum == list[j].parity) b.add_tuple(rel, t);
    }
  }
  return {std::move(a), std::move(b)};
}

RelationalStructure flip_literals(const RelationalStructure& a,
                                  const std::vector<std::uint8_t>& shift) {
  if (a.universe_size() != 2 * shift.size())
    throw InputError("shift length does not match the universe");
  std::vector<Element> perm(a.universe_size());
  for (Element e = 0; e < perm.size(); ++e) perm[e] = e ^ (shift[e / 2] & 1u);
  return a.permuted(perm);
}

}  // namespace wlr
