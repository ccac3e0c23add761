#include "wlr/binarize.hpp"

#include <map>

#include "wlr/atomic_type.hpp"
#include "wlr/error.hpp"
#include "wlr/refinement.hpp"

namespace wlr {

namespace {

// Type key of every ordered pair of ell-tuples, indexed x * N + y.
std::vector<std::string> pair_keys(const RelationalStructure& a, int ell) {
  if (ell < 1) throw InputError("ell must be at least 1");
  if (a.vocabulary().max_arity() > 2 * ell)
    throw InputError("structure arity exceeds 2 ell");
  TupleSpace half(ell, a.universe_size());
  TypeEncoder enc(a, 2 * ell);
  std::map<std::vector<std::uint32_t>, std::string> names;
  std::vector<std::string> keys;
  keys.reserve(half.size() * half.size());
  Tuple t(2 * ell);
  std::vector<std::uint32_t> code;
  for (std::size_t x = 0; x < half.size(); ++x)
    for (std::size_t y = 0; y < half.size(); ++y) {
      half.decode(x, std::span(t).first(ell));
      half.decode(y, std::span(t).subspan(ell));
      code.clear();
      enc.encode(t, code);
      auto it = names.find(code);
      if (it == names.end())
        it = names.emplace(code, enc.decode_membership(t).encode()).first;
      keys.push_back(it->second);
    }
  return keys;
}

BinStructure assemble(const RelationalStructure& a, int ell, const std::vector<std::string>& keys,
                      const std::map<std::string, std::size_t>& vocab_index,
                      const Vocabulary& vocab) {
  TupleSpace half(ell, a.universe_size());
  const auto big = static_cast<std::uint32_t>(half.size());
  RelationalStructure s(vocab, big, "Bin(" + a.name() + ")");
  for (std::uint32_t x = 0; x < big; ++x)
    for (std::uint32_t y = 0; y < big; ++y)
      s.add_tuple(vocab_index.at(keys[std::size_t(x) * big + y]), {x, y});
  return {std::move(s), ell, a.universe_size()};
}

std::pair<Vocabulary, std::map<std::string, std::size_t>> vocabulary_for(
    const std::vector<const std::vector<std::string>*>& key_lists) {
  std::map<std::string, std::size_t> index;
  for (const auto* keys : key_lists)
    for (const auto& k : *keys) index.emplace(k, 0);
  Vocabulary v;
  for (auto& [key, id] : index) id = v.add(bin_relation_name(key), 2);
  return {v, index};
}

}  // namespace

std::string bin_relation_name(const std::string& type_key) { return "t" + type_key; }

BinStructure bin_structure(const RelationalStructure& a, int ell) {
  auto keys = pair_keys(a, ell);
  auto [vocab, index] = vocabulary_for({&keys});
  return assemble(a, ell, keys, index, vocab);
}

std::pair<BinStructure, BinStructure> bin_structures(const RelationalStructure& a,
                                                     const RelationalStructure& b, int ell) {
  if (!(a.vocabulary() == b.vocabulary())) throw InputError("structures must share a vocabulary");
  auto ka = pair_keys(a, ell);
  auto kb = pair_keys(b, ell);
  auto [vocab, index] = vocabulary_for({&ka, &kb});
  return {assemble(a, ell, ka, index, vocab), assemble(b, ell, kb, index, vocab)};
}

TupleColoring derived_coloring(const RelationalStructure& a, int k) {
  if (k < 3 || k % 2 == 0) throw InputError("derived coloring needs odd k >= 3");
  const int ell = (k + 1) / 2;
  if (a.vocabulary().max_arity() > k) throw InputError("structure arity exceeds k");
  BinStructure bin = bin_structure(a, ell);
  RefinementTrace trace = stabilize(bin.structure, 2, {std::nullopt, false});
  const TupleColoring& chi2 = trace.final_coloring();
  TupleSpace full(k, a.universe_size());
  TupleSpace half(ell, a.universe_size());
  const std::size_t big = half.size();
  std::vector<std::uint64_t> raw(full.size());
  Tuple v(k), second(ell);
  for (std::size_t i = 0; i < full.size(); ++i) {
    full.decode(i, v);
    for (int j = 0; j < ell - 1; ++j) second[j] = v[ell + j];
    second[ell - 1] = v[k - 1];
    std::size_t x = half.index(std::span(v).first(ell));
    std::size_t y = half.index(second);
    raw[i] = chi2[x * big + y];
  }
  return TupleColoring::from_raw(k, a.universe_size(), raw);
}

}  // namespace wlr
