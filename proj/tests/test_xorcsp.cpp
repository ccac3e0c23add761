#include <doctest.h>

#include "oracles.hpp"
#include "wlr/closure.hpp"
#include "wlr/error.hpp"
#include "wlr/layered.hpp"
#include "wlr/refinement.hpp"
#include "wlr/translate.hpp"

using namespace wlr;

namespace {

XorConstraint c(std::vector<Var> vars, int parity) { return XorConstraint(std::move(vars), parity); }

// One attractor step by enumerating all ordered pairs.
XorSystem naive_attractor(const XorSystem& s, std::size_t k) {
  XorSystem out = s;
  for (const auto& a : s.constraints())
    for (const auto& b : s.constraints()) {
      std::set<Var> sd;
      for (Var x : a.support) sd.insert(x);
      for (Var x : b.support)
        if (!sd.erase(x)) sd.insert(x);
      if (sd.size() <= k) out.add(std::vector<Var>(sd.begin(), sd.end()), (a.parity + b.parity) % 2);
    }
  return out;
}

}  // namespace

TEST_CASE("constraint construction") {
  CHECK(c({3, 1, 2}, 1).support == std::vector<Var>{1, 2, 3});
  CHECK_THROWS_AS(c({1, 1}, 0), InputError);
  CHECK_THROWS_AS(c({1}, 2), InputError);
  CHECK(combine(c({0, 1}, 0), c({1, 2}, 1)) == c({0, 2}, 1));
  XorSystem s(2);
  CHECK(s.add({0, 1}, 1));
  CHECK_FALSE(s.add({1, 0}, 1));
  CHECK_THROWS_AS(s.add({0, 5}, 1), InputError);
  CHECK(s.arity() == 2);
  CHECK(s.name(1) == "x2");
}

TEST_CASE("violates") {
  CHECK(violates({}, c({}, 1)));
  CHECK_FALSE(violates({}, c({}, 0)));
  CHECK_FALSE(violates({}, c({0}, 1)));
  CHECK(violates({{0, 1}, {1, 0}}, c({0, 1}, 0)));
  CHECK_FALSE(violates({{0, 1}, {1, 1}}, c({0, 1}, 0)));
}

TEST_CASE("xor text format") {
  const std::string text =
      "# a chain\n"
      "vars a b c\n"
      "constraint 0 a b\n"
      "constraint 1 b c\n";
  auto s = parse_xor_system_string(text);
  CHECK(s.num_vars() == 3);
  CHECK(s.size() == 2);
  CHECK(s.contains(c({1, 2}, 1)));
  CHECK(parse_xor_system_string(xor_system_to_string(s)) == s);
  CHECK_THROWS_AS(parse_xor_system_string("vars a\nconstraint 0 b\n"), InputError);
  CHECK_THROWS_AS(parse_xor_system_string("vars a\nconstraint 3 a\n"), InputError);
  CHECK_THROWS_AS(parse_xor_system_string("vars a a\n"), InputError);
  CHECK_THROWS_AS(parse_xor_system_string("bogus\n"), InputError);
}

TEST_CASE("to_structures on a single parity constraint") {
  XorSystem s(2);
  s.add({0, 1}, 1);
  auto [a, b] = to_structures(s);
  CHECK(a.universe_size() == 4);
  auto r = a.vocabulary().index_of("R0");
  REQUIRE(r);
  const Element x0 = literal_element(0, 0), x1 = literal_element(0, 1);
  const Element y0 = literal_element(1, 0), y1 = literal_element(1, 1);
  CHECK(a.tuples(*r) == std::set<Tuple>{{x0, y0}, {x1, y1}});
  CHECK(b.tuples(*r) == std::set<Tuple>{{x0, y1}, {x1, y0}});
  auto xi = a.vocabulary().index_of("X0");
  REQUIRE(xi);
  CHECK(a.tuples(*xi) == std::set<Tuple>{{x0}, {x1}});

  XorSystem z(2);
  z.add({0, 1}, 0);
  auto [za, zb] = to_structures(z);
  CHECK(za == zb);

  XorSystem e(1);
  e.add({}, 1);
  CHECK_THROWS_AS(to_structures(e), InputError);
}

TEST_CASE("satisfying assignments give isomorphisms") {
  Rng rng(21);
  int tested = 0;
  while (tested < 50) {
    const std::size_t n = 1 + rng.below(6);
    auto s = oracle::random_system(rng, n, 1 + rng.below(5), 3);
    auto sol = gauss_satisfiable(s);
    if (!sol) continue;
    ++tested;
    auto [a, b] = to_structures(s);
    CHECK(flip_literals(a, *sol) == b);
    if (tested <= 10) {
      for (int k = 1; k <= 3; ++k) {
        if (k < static_cast<int>(s.arity()) && k != 1) continue;
        if (k == 1 && s.arity() > 2) continue;
        auto r = joint_distinguish(a, b, k);
        CHECK_FALSE(r.round.has_value());
      }
    }
  }
}

TEST_CASE("attractor examples") {
  XorSystem s(3);
  s.add({0, 1}, 0);
  s.add({1, 2}, 1);
  auto a = attractor(s, 2);
  CHECK(a.contains(c({0, 2}, 1)));
  CHECK(a.contains(c({}, 0)));
  CHECK(a.size() == 4);

  XorSystem t(1);
  t.add({0}, 0);
  t.add({0}, 1);
  auto ta = attractor(t, 1);
  CHECK(ta.contains(c({}, 1)));
  CHECK(ta.contains(c({}, 0)));

  XorSystem one(4);
  one.add({0, 1, 2}, 1);
  for (std::size_t k = 0; k <= 4; ++k) {
    auto o = attractor(one, k);
    CHECK(o.size() == 2);
    CHECK(o.contains(c({}, 0)));
  }
}

TEST_CASE("attractor matches pair enumeration") {
  Rng rng(22);
  for (int it = 0; it < 100; ++it) {
    const std::size_t n = 1 + rng.below(6);
    auto s = oracle::random_system(rng, n, 1 + rng.below(6), 3);
    const std::size_t k = 1 + rng.below(4);
    CHECK(attractor(s, k) == naive_attractor(s, k));
  }
}

TEST_CASE("closure examples") {
  XorSystem t(1);
  t.add({0}, 0);
  t.add({0}, 1);
  CHECK(closure(t, 1).system.contains(c({}, 1)));

  XorSystem chain(4);
  chain.add({0, 1}, 0);
  chain.add({1, 2}, 0);
  chain.add({2, 3}, 0);
  CHECK_FALSE(closure_bounded(chain, 2, 1).contains(c({0, 3}, 0)));
  CHECK(closure_bounded(chain, 2, 2).contains(c({0, 3}, 0)));
  auto cl = closure(chain, 2);
  CHECK(cl.system.contains(c({0, 3}, 0)));
  CHECK(closure(cl.system, 2).steps == 0);
  CHECK(closure(cl.system, 2).system == cl.system);
}

TEST_CASE("closure is extensive, idempotent and sound") {
  Rng rng(23);
  for (int it = 0; it < 60; ++it) {
    const std::size_t n = 1 + rng.below(6);
    auto s = oracle::random_system(rng, n, 1 + rng.below(5), 3);
    const std::size_t k = 1 + rng.below(4);
    auto cl = closure(s, k);
    for (const auto& x : s.constraints()) CHECK(cl.system.contains(x));
    XorSystem iter = s;
    for (std::size_t r = 0; r < cl.steps; ++r) iter = naive_attractor(iter, k);
    CHECK(iter == cl.system);
    CHECK(naive_attractor(iter, k) == iter);
    if (auto sol = gauss_satisfiable(s)) {
      PartialAssignment beta;
      for (Var x = 0; x < n; ++x) beta.set(x, (*sol)[x]);
      CHECK_FALSE(first_violated(beta, cl.system).has_value());
    }
  }
}

TEST_CASE("closure budget") {
  XorSystem s(12);
  for (Var i = 0; i + 1 < 12; ++i) s.add({i, i + 1}, 0);
  CHECK_THROWS_AS(closure(s, 12, 20), BudgetExceeded);
}

TEST_CASE("star closure") {
  XorSystem empty(3);
  auto e = star_closure(empty, 3, Rational(3, 2));
  CHECK(e.size() == 1);
  CHECK(e.contains(c({}, 0)));

  XorSystem g(4);
  g.add({0, 1}, 0);
  g.add({1, 2}, 0);
  g.add({2, 3}, 0);
  auto st = star_closure(g, 2, Rational(2, 3));
  for (const auto& x : g.constraints()) CHECK(st.contains(x));
  CHECK(st.contains(c({0, 2}, 0)));
  CHECK(st.contains(c({0, 3}, 0)));
  // cap floor(2 / 2) = 1 keeps only single constraints
  auto capped = star_closure(g, 2, Rational(2));
  CHECK(capped.size() == 4);

  XorSystem bad(2);
  bad.add({0}, 1);
  CHECK_THROWS_AS(star_closure(bad, 2, Rational(1)), InputError);
}

TEST_CASE("star closure of a layered expander is closed under the attractor") {
  // Right degrees in the layered graph are d + 1 = 3 <= k = 3 <= gamma m / 2.
  // Random graphs this small rarely pass the single-neighbor check, so the property is
  // asserted on the seeds that do and the count is reported.
  const Rational alpha(101, 100), gamma(1, 2);
  int checked = 0;
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    auto l = build_layered(random_right_regular(12, 2, seed), 2);
    ExpansionOptions eo;
    eo.reference_size = 12;
    auto v = check_expansion(l.graph, alpha, gamma, eo);
    CHECK_FALSE(v.vacuous);
    if (!v.single) {
      auto [n, ns] = neighbor_sets(l.graph, v.single_witness);
      CHECK(Rational(static_cast<std::int64_t>(ns.size())) <
            alpha * static_cast<std::int64_t>(v.single_witness.size()));
      continue;
    }
    ++checked;
    auto st = star_closure(constraints_from_layered(l), 3, alpha);
    CHECK(attractor(st, 3) == st);
    for (const auto& x : st.constraints()) CHECK(x.support.size() != 1);
  }
  MESSAGE("layered graphs passing the expansion check: " << checked << " of 30");
}

TEST_CASE("star closure of a small single-neighbor expander is closed under the attractor") {
  // Degree 3 <= k = 4 <= gamma |W| / 2. The closure argument only uses the expansion of
  // sets with at most gamma |W| members, so a plain bipartite graph exercises it.
  const Rational alpha(101, 100), gamma(2, 3);
  int checked = 0, grew = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    Rng rng(seed);
    BipartiteGraph g(36, 12);
    for (std::uint32_t w = 0; w < 12; ++w)
      for (auto v : rng.sample(36, 3)) g.add_edge(v, w);
    auto v = check_expansion(g, alpha, gamma);
    if (!v.single) continue;
    ++checked;
    auto cg = constraints_from_graph(g);
    auto st = star_closure(cg, 4, alpha);
    grew += st.size() > cg.size() + 1;
    CHECK(attractor(st, 4) == st);
    for (const auto& x : st.constraints()) CHECK(x.support.size() != 1);
  }
  CHECK(checked == 3);
  CHECK(grew == 3);
}

TEST_CASE("gauss_satisfiable") {
  XorSystem t(1);
  t.add({0}, 0);
  t.add({0}, 1);
  CHECK_FALSE(gauss_satisfiable(t).has_value());

  XorSystem s(2);
  s.add({0, 1}, 1);
  auto sol = gauss_satisfiable(s);
  REQUIRE(sol);
  CHECK(satisfies(*sol, s));

  XorSystem e(1);
  e.add({}, 1);
  CHECK_FALSE(gauss_satisfiable(e).has_value());

  Rng rng(24);
  for (int it = 0; it < 100; ++it) {
    const std::size_t n = 1 + rng.below(10);
    auto r = oracle::random_system(rng, n, 1 + rng.below(2 * n), 4);
    auto g = gauss_satisfiable(r);
    CHECK(g.has_value() == oracle::brute_force_sat(r));
    if (g) CHECK(satisfies(*g, r));
  }
}
