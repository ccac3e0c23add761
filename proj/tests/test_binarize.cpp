#include <doctest.h>

#include "oracles.hpp"
#include "wlr/binarize.hpp"
#include "wlr/error.hpp"
#include "wlr/refinement.hpp"

using namespace wlr;

namespace {

Tuple concat(const Tuple& a, const Tuple& b) {
  Tuple out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

// Index of the relation containing the pair (x, y), or -1; fails if there are several.
int relation_of(const RelationalStructure& s, Element x, Element y) {
  int found = -1;
  const std::vector<Element> pair{x, y};
  for (std::size_t r = 0; r < s.vocabulary().size(); ++r)
    if (s.contains(r, pair)) {
      if (found >= 0) return -2;
      found = static_cast<int>(r);
    }
  return found;
}

// Induced permutation on ell-tuples in row-major numbering.
std::vector<Element> lift_permutation(const std::vector<Element>& perm, int ell) {
  const auto n = static_cast<std::uint32_t>(perm.size());
  TupleSpace sp(ell, n);
  std::vector<Element> out(sp.size());
  for (std::size_t i = 0; i < sp.size(); ++i) {
    Tuple t = sp.tuple(i);
    for (auto& e : t) e = perm[e];
    out[i] = static_cast<Element>(sp.index(t));
  }
  return out;
}

}  // namespace

TEST_CASE("binary structure shape") {
  for (std::uint32_t n = 1; n <= 4; ++n)
    for (int ell = 1; ell <= 2; ++ell) {
      auto b = bin_structure(path_graph(n), ell);
      std::uint32_t size = 1;
      for (int i = 0; i < ell; ++i) size *= n;
      CHECK(b.structure.universe_size() == size);
      CHECK(b.ell == ell);
      CHECK(b.base_n == n);
      CHECK(b.structure.vocabulary().max_arity() == 2);
      std::size_t total = 0;
      for (std::size_t r = 0; r < b.structure.vocabulary().size(); ++r) {
        CHECK_FALSE(b.structure.tuples(r).empty());
        total += b.structure.tuples(r).size();
      }
      CHECK(total == static_cast<std::size_t>(size) * size);
    }
  CHECK_THROWS_AS(bin_structure(path_graph(3), 0), InputError);
  RelationalStructure ternary(Vocabulary({{"T", 3}}), 3);
  ternary.add_tuple(0, {0, 1, 2});
  CHECK_THROWS_AS(bin_structure(ternary, 1), InputError);
  CHECK_NOTHROW(bin_structure(ternary, 2));
}

TEST_CASE("edge colors are the atomic types of concatenated tuples") {
  Rng rng(72);
  for (int it = 0; it < 10; ++it) {
    const auto n = static_cast<std::uint32_t>(2 + rng.below(2));
    auto a = oracle::random_structure(rng, n, 3);
    auto b = bin_structure(a, 2);
    TupleSpace sp(2, n);
    const auto m = b.structure.universe_size();
    for (Element x = 0; x < m; ++x)
      for (Element y = 0; y < m; ++y) {
        const int rxy = relation_of(b.structure, x, y);
        REQUIRE(rxy >= 0);
        const Tuple txy = concat(sp.tuple(x), sp.tuple(y));
        for (Element x2 = 0; x2 < m; x2 += 3)
          for (Element y2 = 0; y2 < m; y2 += 2) {
            const bool same = relation_of(b.structure, x2, y2) == rxy;
            CHECK(same == oracle::same_atomic_type(a, txy, a, concat(sp.tuple(x2), sp.tuple(y2))));
          }
      }
  }
}

TEST_CASE("isomorphic structures have isomorphic binary structures") {
  Rng rng(73);
  for (int it = 0; it < 20; ++it) {
    const auto n = static_cast<std::uint32_t>(2 + rng.below(3));
    auto a = oracle::random_structure(rng, n, 3);
    auto perm = oracle::random_permutation(rng, n);
    auto pa = a.permuted(perm);
    auto ba = bin_structure(a, 2);
    auto bpa = bin_structure(pa, 2);
    CHECK(bpa.structure == ba.structure.permuted(lift_permutation(perm, 2)));
  }
}

TEST_CASE("shared vocabulary for pairs") {
  auto [x, y] = bin_structures(path_graph(4), complete_graph(4), 1);
  CHECK(x.structure.vocabulary() == y.structure.vocabulary());
  auto alone = bin_structure(path_graph(4), 1);
  CHECK(alone.structure.vocabulary().size() <= x.structure.vocabulary().size());
  for (std::size_t r = 0; r < alone.structure.vocabulary().size(); ++r) {
    auto idx = x.structure.vocabulary().index_of(alone.structure.vocabulary()[r].name);
    REQUIRE(idx);
    CHECK(x.structure.tuples(*idx) == alone.structure.tuples(r));
  }
}

TEST_CASE("derived coloring is stable and refines atomic types") {
  Rng rng(74);
  for (int it = 0; it < 20; ++it) {
    const auto n = static_cast<std::uint32_t>(2 + rng.below(3));
    auto a = oracle::random_structure(rng, n, 3);
    auto chi = derived_coloring(a, 3);
    CHECK(chi.k == 3);
    CHECK(chi.n == n);
    CHECK(is_k_stable(chi));
    CHECK(coloring_refines(chi, initial_coloring(a, 3)));
    // one literal refinement round keeps the class count
    oracle::Partition p(chi.colors.begin(), chi.colors.end());
    auto next = oracle::naive_refine({p}, {n}, 3);
    CHECK(oracle::num_classes(next[0]) == oracle::num_classes(p));
    // and the stable 3-WL coloring refines it
    auto trace = stabilize(a, 3);
    CHECK(coloring_refines(trace.final_coloring(), initial_coloring(a, 3)));
    CHECK(coloring_refines(chi, trace.final_coloring()));
  }
  CHECK_THROWS_AS(derived_coloring(path_graph(3), 2), InputError);
  CHECK_THROWS_AS(derived_coloring(path_graph(3), 1), InputError);
  auto c5 = derived_coloring(path_graph(3), 5);
  CHECK(is_k_stable(c5));
}

TEST_CASE("2-WL on binary structures separates what 3-WL separates") {
  Rng rng(75);
  int separated = 0, equal = 0;
  for (int it = 0; it < 30; ++it) {
    const auto n = static_cast<std::uint32_t>(3 + rng.below(2));
    RelationalStructure a, b;
    switch (it % 3) {
      case 0:
        a = oracle::random_graph(rng, n);
        b = oracle::random_graph(rng, n);
        break;
      case 1:
        a = oracle::random_structure(rng, n, 3);
        b = a.permuted(oracle::random_permutation(rng, n));
        break;
      default: {
        a = oracle::random_structure(rng, n, 3);
        b = a.permuted(oracle::random_permutation(rng, n));
        Tuple t(static_cast<std::size_t>(b.vocabulary()[0].arity));
        for (auto& e : t) e = static_cast<Element>(rng.below(n));
        b.add_tuple(0, t);
      }
    }
    auto k3 = joint_distinguish(a, b, 3);
    REQUIRE(k3.complete);
    auto [ba, bb] = bin_structures(a, b, 2);
    auto k2 = joint_distinguish(ba.structure, bb.structure, 2);
    REQUIRE(k2.complete);
    if (k3.round) CHECK(k2.round.has_value());
    if (!k2.round) CHECK_FALSE(k3.round.has_value());
    if (k2.round) CHECK(*k2.round <= upper_round_bound(ba.structure.universe_size(), 2));
    if (k2.trace_a.r_infinity)
      CHECK(*k2.trace_a.r_infinity <= upper_round_bound(ba.structure.universe_size(), 2));
    k3.round ? ++separated : ++equal;
  }
  CHECK(separated > 0);
  CHECK(equal > 0);
}
