#include <doctest.h>

#include "oracles.hpp"
#include "wlr/error.hpp"
#include "wlr/partition_algebra.hpp"
#include "wlr/refinement.hpp"
#include "wlr/span_basis.hpp"
#include "wlr/tensor.hpp"

using namespace wlr;

namespace {

KTensor random_tensor(Rng& rng, std::uint32_t n, int k, bool binary = false) {
  KTensor t(k, n);
  for (auto& e : t.entries) {
    if (binary) {
      e = static_cast<int>(rng.coin());
    } else {
      e = mpq_class(static_cast<long>(rng.below(7)) - 3, 1 + static_cast<long>(rng.below(3)));
      e.canonicalize();
    }
  }
  return t;
}

Matrix matrix_add(const Matrix& a, const Matrix& b) {
  Matrix c(a.dim);
  for (std::size_t i = 0; i < a.entries.size(); ++i) c.entries[i] = a.entries[i] + b.entries[i];
  return c;
}

// Rank of a list of rational vectors by plain Gaussian elimination.
std::size_t rank_of(std::vector<std::vector<mpq_class>> rows) {
  std::size_t rank = 0;
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t p = rank;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[rank]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][c] == 0) continue;
      const mpq_class f = rows[r][c] / rows[rank][c];
      for (std::size_t j = c; j < cols; ++j) rows[r][j] -= f * rows[rank][j];
    }
    ++rank;
  }
  return rank;
}

// Dimension of the matrix algebra generated by the embedded class indicators: keep
// multiplying every pair of current span members until the rank stops growing.
std::size_t matrix_closure_dim(const TupleColoring& chi) {
  std::vector<Matrix> gens;
  for (const auto& v : partition_vectors(chi)) gens.push_back(matrix_embed(v));
  std::vector<Matrix> members = gens;
  std::vector<std::vector<mpq_class>> rows;
  for (const auto& m : members) rows.push_back(m.entries);
  std::size_t rank = rank_of(rows);
  while (true) {
    std::vector<Matrix> next = members;
    std::vector<std::vector<mpq_class>> next_rows = rows;
    for (const auto& a : members)
      for (const auto& g : gens) {
        auto p = matrix_mul(a, g);
        auto trial = next_rows;
        trial.push_back(p.entries);
        if (rank_of(trial) > rank_of(next_rows)) {
          next.push_back(p);
          next_rows = std::move(trial);
        }
      }
    const std::size_t r = rank_of(next_rows);
    if (r == rank) return rank;
    rank = r;
    members = std::move(next);
    rows = std::move(next_rows);
  }
}

mpq_class at(const KTensor& t, std::initializer_list<Element> tuple) {
  std::vector<Element> v(tuple);
  return t[TupleSpace(t.k, t.n).index(v)];
}

}  // namespace

TEST_CASE("k = 2 product is matrix multiplication") {
  Rng rng(61);
  for (int it = 0; it < 20; ++it) {
    const auto n = static_cast<std::uint32_t>(1 + rng.below(4));
    auto a = random_tensor(rng, n, 2), b = random_tensor(rng, n, 2);
    Matrix ma(n), mb(n);
    ma.entries = a.entries;
    mb.entries = b.entries;
    CHECK(tensor_mul(a, b).entries == matrix_mul(ma, mb).entries);
    CHECK(matrix_embed(a) == ma);
  }
  CHECK_THROWS_AS(KTensor(1, 3), InputError);
  CHECK_THROWS_AS(tensor_mul(KTensor(2, 3), KTensor(3, 3)), InputError);
  CHECK_THROWS_AS(tensor_add(KTensor(2, 3), KTensor(2, 2)), InputError);
}

TEST_CASE("product on a hand example") {
  KTensor a(3, 2), b(3, 2);
  a[TupleSpace(3, 2).index(std::vector<Element>{0, 1, 1})] = 2;
  b[TupleSpace(3, 2).index(std::vector<Element>{0, 1, 0})] = 3;
  auto c = tensor_mul(a, b);
  // (ab)(0,1,0) = sum_u a(0,1,u) b(0,u,0) = a(0,1,1) b(0,1,0)
  CHECK(at(c, {0, 1, 0}) == 6);
  CHECK(at(c, {0, 0, 0}) == 0);
  CHECK(at(c, {1, 1, 0}) == 0);
}

TEST_CASE("unit and star") {
  for (int k = 2; k <= 4; ++k)
    for (std::uint32_t n = 1; n <= 3; ++n) {
      auto one = unit_tensor(n, k);
      CHECK(star(one) == one);
      auto m = matrix_embed(one);
      CHECK(m == identity_matrix(m.dim));
      Rng rng(62 + k * 10 + n);
      auto a = random_tensor(rng, n, k);
      CHECK(tensor_mul(one, a) == a);
      CHECK(tensor_mul(a, one) == a);
      CHECK(star(star(a)) == a);
    }
}

TEST_CASE("ring, star and embedding laws on random tensors") {
  Rng rng(63);
  for (int it = 0; it < 100; ++it) {
    const auto n = static_cast<std::uint32_t>(1 + rng.below(4));
    const int k = 3;
    auto a = random_tensor(rng, n, k), b = random_tensor(rng, n, k), c = random_tensor(rng, n, k);
    mpq_class s(static_cast<long>(rng.below(5)) - 2, 1 + static_cast<long>(rng.below(2)));
    s.canonicalize();
    CHECK(tensor_mul(tensor_mul(a, b), c) == tensor_mul(a, tensor_mul(b, c)));
    CHECK(tensor_mul(tensor_add(a, b), c) == tensor_add(tensor_mul(a, c), tensor_mul(b, c)));
    CHECK(tensor_mul(a, tensor_add(b, c)) == tensor_add(tensor_mul(a, b), tensor_mul(a, c)));
    CHECK(tensor_mul(tensor_scale(a, s), b) == tensor_scale(tensor_mul(a, b), s));
    CHECK(star(tensor_add(a, b)) == tensor_add(star(a), star(b)));
    CHECK(star(tensor_mul(a, b)) == tensor_mul(star(b), star(a)));
    CHECK(matrix_embed(tensor_mul(a, b)) == matrix_mul(matrix_embed(a), matrix_embed(b)));
    CHECK(matrix_embed(tensor_add(a, b)) == matrix_add(matrix_embed(a), matrix_embed(b)));
    CHECK(matrix_embed(star(a)) == transpose(matrix_embed(a)));
    if (!a.is_zero()) CHECK_FALSE(matrix_embed(a) == Matrix(matrix_embed(a).dim));
  }
  Rng bin(64);
  for (int it = 0; it < 50; ++it) {
    const auto n = static_cast<std::uint32_t>(1 + bin.below(4));
    auto a = random_tensor(bin, n, 3, true), b = random_tensor(bin, n, 3, true),
         c = random_tensor(bin, n, 3, true);
    CHECK(tensor_mul(tensor_mul(a, b), c) == tensor_mul(a, tensor_mul(b, c)));
  }
}

TEST_CASE("embedding is injective on a basis") {
  for (std::uint32_t n = 1; n <= 3; ++n) {
    std::vector<std::vector<mpq_class>> rows;
    KTensor probe(3, n);
    for (std::size_t i = 0; i < probe.size(); ++i) {
      KTensor e(3, n);
      e[i] = 1;
      rows.push_back(matrix_embed(e).entries);
    }
    CHECK(rank_of(rows) == probe.size());
  }
}

TEST_CASE("span basis") {
  SpanBasis b(3);
  CHECK(b.insert({1, 2, 3}));
  CHECK_FALSE(b.insert({2, 4, 6}));
  CHECK(b.insert({0, 1, 0}));
  CHECK(b.contains({1, 0, 3}));
  CHECK_FALSE(b.contains({0, 0, 1}));
  CHECK(b.rank() == 2);
  CHECK_FALSE(b.insert({0, 0, 0}));

  Rng rng(65);
  for (int it = 0; it < 40; ++it) {
    const std::size_t dim = 1 + rng.below(6);
    SpanBasis sb(dim);
    std::vector<std::vector<mpq_class>> rows;
    for (std::size_t j = 0; j < 1 + rng.below(8); ++j) {
      std::vector<mpq_class> v(dim);
      for (auto& x : v) x = static_cast<long>(rng.below(3)) - 1;
      rows.push_back(v);
      sb.insert(v);
    }
    CHECK(sb.rank() == rank_of(rows));
  }
}

TEST_CASE("partition vectors") {
  auto chi = initial_coloring(cycle_graph(4), 3);
  auto vs = partition_vectors(chi);
  CHECK(vs.size() == chi.num_colors);
  KTensor sum(3, 4);
  for (const auto& v : vs) sum = tensor_add(sum, v);
  for (const auto& e : sum.entries) CHECK(e == 1);
  std::vector<std::vector<mpq_class>> rows;
  for (const auto& v : vs) rows.push_back(v.entries);
  CHECK(rank_of(rows) == vs.size());

  // star of a class indicator is again a class indicator (last two coordinates swapped)
  for (const auto& v : vs) {
    auto s = star(v);
    CHECK(std::find(vs.begin(), vs.end(), s) != vs.end());
  }
  // the classes inside {v_{k-1} = v_k} add up to the unit
  REQUIRE(is_equality_compatible(chi));
  auto sp = chi.space();
  KTensor unit_part(3, 4);
  for (const auto& v : vs) {
    std::size_t first = 0;
    while (v[first] == 0) ++first;
    if (sp.entry(first, 1) == sp.entry(first, 2)) unit_part = tensor_add(unit_part, v);
  }
  CHECK(unit_part == unit_tensor(4, 3));
}

TEST_CASE("algebra dimension examples") {
  for (std::uint32_t n = 2; n <= 4; ++n) {
    auto kn = initial_coloring(complete_graph(n), 2);
    CHECK(kn.num_colors == 2);
    CHECK(algebra_dim(kn).dimension == 2);
    CHECK(matrix_closure_dim(kn) == 2);

    std::vector<std::uint64_t> raw(n * n);
    for (std::size_t i = 0; i < raw.size(); ++i) raw[i] = i;
    auto discrete = TupleColoring::from_raw(2, n, raw);
    CHECK(algebra_dim(discrete).dimension == n * n);
    CHECK(matrix_closure_dim(discrete) == n * n);
  }
  // P3 at k = 2: diagonal, edges, non-edges generate more than their span
  auto p3 = initial_coloring(path_graph(3), 2);
  auto d = algebra_dim(p3);
  CHECK(d.saturated);
  CHECK(d.dimension > p3.num_colors);
  CHECK(d.dimension == matrix_closure_dim(p3));

  auto budget = algebra_dim(initial_coloring(path_graph(4), 3), 5);
  CHECK_FALSE(budget.saturated);
}

TEST_CASE("algebra dimension matches the matrix-side closure") {
  Rng rng(66);
  for (int it = 0; it < 25; ++it) {
    const auto n = static_cast<std::uint32_t>(2 + rng.below(2));
    const int k = 2 + static_cast<int>(rng.below(2));
    auto a = oracle::random_structure(rng, n, k);
    auto chi = initial_coloring(a, k);
    auto d = algebra_dim(chi);
    REQUIRE(d.saturated);
    CHECK(d.dimension >= chi.num_colors);
    CHECK(d.dimension == matrix_closure_dim(chi));
  }
}

TEST_CASE("algebra chain along refinement rounds") {
  std::vector<std::pair<RelationalStructure, int>> cases{
      {path_graph(5), 2},  {path_graph(6), 2},    {cycle_graph(5), 2},
      {complete_graph(4), 2}, {path_graph(4), 3}, {disjoint_cycles(2, 3), 2}};
  Rng rng(67);
  for (int i = 0; i < 8; ++i) cases.emplace_back(oracle::random_structure(rng, 4, 2), 2);
  for (const auto& [a, k] : cases) {
    auto chain = wl_algebra_chain(a, k);
    REQUIRE(chain.saturated);
    auto trace = stabilize(a, k);
    CHECK(chain.r_infinity == *trace.r_infinity);
    REQUIRE(chain.rows.size() == trace.class_counts.size());
    std::size_t strict = 0;
    for (std::size_t t = 0; t < chain.rows.size(); ++t) {
      CHECK(chain.rows[t].classes == trace.class_counts[t]);
      CHECK(chain.rows[t].dimension >= chain.rows[t].classes);
      if (t > 0) {
        CHECK(chain.rows[t].dimension >= chain.rows[t - 1].dimension);
        CHECK(chain.rows[t].strict == (chain.rows[t].dimension > chain.rows[t - 1].dimension));
        strict += chain.rows[t].strict;
      }
    }
    CHECK(chain.weakly_increasing);
    CHECK(chain.strict_increases == strict);
    std::uint64_t bound = 2;
    for (int i = 0; i < k - 1; ++i) bound *= a.universe_size();
    CHECK(strict <= bound);
    CHECK(chain.within_bound);
    CHECK(chain.window == ceil_k_log2_n(a.universe_size(), k) + 1);
    CHECK(chain.windows_ok);
    // the stable round repeats the previous partition
    CHECK(algebra_dim(refine_step(trace.final_coloring())).dimension ==
          chain.rows.back().dimension);
  }
  // K_n is stable at once: a single row
  auto kn = wl_algebra_chain(complete_graph(5), 2);
  CHECK(kn.rows.size() == 1);
  CHECK(kn.rows[0].dimension == 2);
}

TEST_CASE("distinguishing monomials") {
  auto p4 = initial_coloring(path_graph(4), 2);
  auto sp = p4.space();
  const auto edge = sp.index(std::vector<Element>{0, 1});
  const auto diag = sp.index(std::vector<Element>{0, 0});
  auto one = distinguishing_monomial(p4, edge, diag, 3);
  REQUIRE(one);
  CHECK(one->size() == 1);

  // endpoint versus inner vertex: same initial color, degree 1 vs 2
  const auto v = sp.index(std::vector<Element>{0, 0});
  const auto w = sp.index(std::vector<Element>{1, 1});
  auto m = distinguishing_monomial(p4, v, w, 3);
  REQUIRE(m);
  CHECK(m->size() == 2);
  // a product of that length is matched by refinement within ceil(log2 s) + 1 rounds
  auto trace = stabilize(path_graph(4), 2);
  const auto& within = trace.rounds.at(std::min<std::size_t>(2, trace.rounds.size() - 1));
  CHECK(within[v] != within[w]);

  // symmetric vertices of a cycle are never separated
  auto c5 = initial_coloring(cycle_graph(5), 2);
  auto cs = c5.space();
  CHECK_FALSE(distinguishing_monomial(c5, cs.index(std::vector<Element>{0, 0}),
                                      cs.index(std::vector<Element>{2, 2}), 4)
                  .has_value());
  CHECK_THROWS_AS(distinguishing_monomial(c5, cs.index(std::vector<Element>{0, 0}),
                                          cs.index(std::vector<Element>{2, 2}), 30, 10),
                  BudgetExceeded);
}
