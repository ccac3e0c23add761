#include "wlr/partition_algebra.hpp"

#include <deque>
#include <set>
#include <string>

#include "wlr/error.hpp"
#include "wlr/refinement.hpp"
#include "wlr/span_basis.hpp"

namespace wlr {

AlgebraDimension algebra_dim(const TupleColoring& partition, std::size_t max_products) {
  const auto gens = partition_vectors(partition);
  const std::size_t dim = TupleSpace(partition.k, partition.n).size();
  SpanBasis basis(dim);
  std::deque<KTensor> queue;
  for (const auto& g : gens)
    if (basis.insert(g.entries)) queue.push_back(g);
  std::size_t products = 0;
  // Right multiplication by generators reaches every monomial.
  while (!queue.empty() && basis.rank() < dim) {
    KTensor b = std::move(queue.front());
    queue.pop_front();
    for (const auto& g : gens) {
      if (products++ >= max_products) return {basis.rank(), false};
      KTensor p = tensor_mul(b, g);
      if (p.is_zero()) continue;
      if (basis.insert(p.entries)) queue.push_back(std::move(p));
    }
  }
  return {basis.rank(), true};
}

AlgebraChain wl_algebra_chain(const RelationalStructure& structure, int k,
                              std::size_t max_products) {
  if (k < 2) throw InputError("the tensor algebra needs k >= 2");
  RefinementTrace trace = stabilize(structure, k);
  AlgebraChain chain;
  chain.r_infinity = *trace.r_infinity;
  for (std::size_t r = 0; r < trace.rounds.size(); ++r) {
    auto d = algebra_dim(trace.rounds[r], max_products);
    AlgebraChainRow row{r, trace.class_counts[r], d.dimension, false, d.saturated};
    if (r > 0) {
      const auto prev = chain.rows.back().dimension;
      row.strict = d.dimension > prev;
      if (d.dimension < prev) chain.weakly_increasing = false;
    }
    chain.strict_increases += row.strict;
    chain.saturated = chain.saturated && d.saturated;
    chain.rows.push_back(row);
  }
  const std::uint64_t n = structure.universe_size();
  std::uint64_t nk1 = 1;
  for (int i = 0; i < k - 1; ++i) nk1 *= n;
  chain.within_bound = chain.strict_increases <= 2 * nk1;
  chain.window = ceil_k_log2_n(n, k) + 1;
  for (std::size_t t = 0; t + chain.window <= chain.r_infinity; ++t)
    if (chain.rows[t + chain.window].dimension <= chain.rows[t].dimension)
      chain.windows_ok = false;
  return chain;
}

namespace {

std::string key_of(const KTensor& t) {
  std::string s;
  for (const auto& e : t.entries) {
    s += e.get_str();
    s += ',';
  }
  return s;
}

}  // namespace

std::optional<std::vector<std::size_t>> distinguishing_monomial(const TupleColoring& partition,
                                                                std::size_t v, std::size_t w,
                                                                std::size_t s_max,
                                                                std::size_t max_nodes) {
  const auto gens = partition_vectors(partition);
  if (v >= partition.colors.size() || w >= partition.colors.size())
    throw InputError("tuple index out of range");
  struct Node {
    KTensor t;
    std::vector<std::size_t> word;
  };
  std::set<std::string> seen;
  std::vector<Node> level;
  for (std::size_t i = 0; i < gens.size() && s_max >= 1; ++i) {
    if (gens[i][v] != gens[i][w]) return std::vector<std::size_t>{i};
    if (seen.insert(key_of(gens[i])).second) level.push_back({gens[i], {i}});
  }
  for (std::size_t s = 2; s <= s_max && !level.empty(); ++s) {
    std::vector<Node> next;
    for (const auto& node : level)
      for (std::size_t i = 0; i < gens.size(); ++i) {
        KTensor p = tensor_mul(node.t, gens[i]);
        auto word = node.word;
        word.push_back(i);
        if (p[v] != p[w]) return word;
        if (p.is_zero() || !seen.insert(key_of(p)).second) continue;
        if (seen.size() > max_nodes)
          throw BudgetExceeded("monomial search exceeded " + std::to_string(max_nodes) +
                               " products");
        next.push_back({std::move(p), std::move(word)});
      }
    level = std::move(next);
  }
  return std::nullopt;
}

}  // namespace wlr
