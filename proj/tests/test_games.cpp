#include <doctest.h>

#include <json.hpp>

#include "oracles.hpp"
#include "wlr/closure.hpp"
#include "wlr/error.hpp"
#include "wlr/layered_play.hpp"
#include "wlr/pebble_game.hpp"

using namespace wlr;

namespace {

XorSystem contradiction() {
  XorSystem s(1);
  s.add({0}, 0);
  s.add({0}, 1);
  return s;
}

XorSystem chain_system() {
  XorSystem s(3);
  s.add({0, 1}, 0);
  s.add({1, 2}, 0);
  s.add({0}, 0);
  s.add({2}, 1);
  return s;
}

// Every partial assignment over n variables with at most k of them assigned.
std::vector<PartialAssignment> all_positions(std::size_t n, int k) {
  std::vector<PartialAssignment> out;
  for (std::uint64_t code = 0; code < std::uint64_t(1) << (2 * n); ++code) {
    PartialAssignment p;
    bool ok = true;
    for (std::size_t x = 0; x < n && ok; ++x) {
      const auto c = (code >> (2 * x)) & 3;
      if (c == 3) ok = false;
      else if (c) p.set(static_cast<Var>(x), static_cast<int>(c - 1));
    }
    if (ok && p.size() <= static_cast<std::size_t>(k)) out.push_back(p);
  }
  return out;
}

LayeredGraph matching_layers(std::uint32_t m, std::uint32_t ell) {
  BipartiteGraph gp(m, m);
  for (std::uint32_t j = 0; j < m; ++j) gp.add_edge(j, j);
  return build_layered(gp, ell);
}

}  // namespace

TEST_CASE("position count") {
  CHECK(PebbleGame::count_positions(3, 2) == 1 + 3 * 2 + 3 * 4);
  CHECK(PebbleGame::count_positions(4, 0) == 1);
  CHECK(PebbleGame(chain_system(), 2).num_positions() == PebbleGame::count_positions(3, 2));
  CHECK_THROWS_AS(PebbleGame(XorSystem(30), 8, 1000), BudgetExceeded);
  CHECK_THROWS_AS(PebbleGame(XorSystem(65), 1), InputError);
  CHECK_THROWS_AS(PebbleGame(XorSystem(3), 0), InputError);
}

TEST_CASE("contradictory singleton system") {
  auto s = contradiction();
  CHECK(falsifier_wins(s, {}, 1, 1));
  CHECK_FALSE(falsifier_wins(s, {}, 1, 0));
  CHECK(min_falsifier_rounds(s, {}, 1, 5) == std::optional<std::size_t>(1));
}

TEST_CASE("chain system agrees with the game tree search") {
  auto s = chain_system();
  auto r = min_falsifier_rounds(s, {}, 2, 10);
  REQUIRE(r.has_value());
  oracle::NaiveGame naive(s, 2);
  CHECK(naive.min_rounds({}, 10) == r);
  CHECK(*r == 2);
}

TEST_CASE("violating start is won in zero rounds") {
  auto s = chain_system();
  CHECK(min_falsifier_rounds(s, {{2, 0}}, 2, 4) == std::optional<std::size_t>(0));
}

TEST_CASE("solver agrees with minimax on every position") {
  Rng rng(31);
  for (int it = 0; it < 60; ++it) {
    const std::size_t n = 1 + rng.below(5);
    const int k = 1 + static_cast<int>(rng.below(3));
    auto s = oracle::random_system(rng, n, 1 + rng.below(5), 3);
    PebbleGame game(s, k);
    game.solve();
    CHECK(game.at_fixpoint());
    oracle::NaiveGame naive(s, k);
    for (const auto& p : all_positions(n, k)) {
      auto exact = game.win_round(p);
      auto brute = naive.min_rounds(p, game.rounds_computed() + 1);
      CHECK(exact == brute);
    }
  }
}

TEST_CASE("satisfiable systems are never lost by Verifier") {
  Rng rng(32);
  int tested = 0;
  while (tested < 40) {
    const std::size_t n = 1 + rng.below(6);
    auto s = oracle::random_system(rng, n, 1 + rng.below(5), 3);
    if (!gauss_satisfiable(s)) continue;
    ++tested;
    const int k = 1 + static_cast<int>(rng.below(4));
    CHECK_FALSE(min_falsifier_rounds(s, {}, k, 64).has_value());
  }
}

TEST_CASE("monotonicity in rounds and pebbles") {
  Rng rng(33);
  for (int it = 0; it < 30; ++it) {
    const std::size_t n = 2 + rng.below(4);
    auto s = oracle::random_system(rng, n, 2 + rng.below(4), 3);
    for (int k = 1; k <= 3; ++k) {
      PebbleGame small(s, k), big(s, k + 1);
      small.solve();
      big.solve();
      for (const auto& p : all_positions(n, k)) {
        auto a = small.win_round(p);
        auto b = big.win_round(p);
        if (a) {
          REQUIRE(b.has_value());
          CHECK(*b <= *a);
        }
        for (std::size_t r = 0; r < 6; ++r)
          if (falsifier_wins(s, p, k, r)) CHECK(falsifier_wins(s, p, k, r + 1));
      }
    }
  }
}

TEST_CASE("stop_at halts early") {
  auto s = chain_system();
  PebbleGame game(s, 2);
  PartialAssignment empty;
  game.solve(PebbleGame::kNever - 1, &empty);
  CHECK(game.win_round(empty) == std::optional<std::size_t>(2));
  CHECK(game.rounds_computed() == 2);
}

TEST_CASE("closure certificate") {
  auto s = chain_system();
  CHECK_FALSE(verifier_survival_certificate(s, {{2, 0}}, 2, 0));

  Rng rng(34);
  int tested = 0;
  while (tested < 20) {
    const std::size_t n = 1 + rng.below(6);
    auto sat = oracle::random_system(rng, n, 1 + rng.below(5), 3);
    auto sol = gauss_satisfiable(sat);
    if (!sol) continue;
    ++tested;
    const int k = 3;
    PartialAssignment beta;
    for (Var x = 0; x < std::min<std::size_t>(n, k); ++x) beta.set(x, (*sol)[x]);
    for (std::size_t r = 0; r < 4; ++r) CHECK(verifier_survival_certificate(sat, beta, k, r));
  }

  for (int it = 0; it < 100; ++it) {
    const std::size_t n = 1 + rng.below(5);
    auto s2 = oracle::random_system(rng, n, 1 + rng.below(6), 3);
    const int k = 1 + static_cast<int>(rng.below(3));
    if (static_cast<int>(s2.arity()) > k) continue;
    PebbleGame game(s2, k);
    game.solve();
    for (const auto& p : all_positions(n, k))
      for (std::size_t r = 0; r < 4; ++r)
        if (verifier_survival_certificate(s2, p, k, r)) {
          auto w = game.win_round(p);
          CHECK((!w || *w > r));
        }
  }
}

TEST_CASE("fixing a pebbled variable by a constraint keeps Verifier alive") {
  Rng rng(35);
  for (int it = 0; it < 60; ++it) {
    const std::size_t n = 2 + rng.below(4);
    auto s = oracle::random_system(rng, n, 1 + rng.below(5), 3);
    const int k = 2 + static_cast<int>(rng.below(2));
    const Var x0 = static_cast<Var>(rng.below(n));
    auto with = s;
    with.add({x0}, 1);
    for (std::size_t r = 0; r < 6; ++r) {
      if (!falsifier_wins(s, {{x0, 1}}, k, r)) CHECK_FALSE(falsifier_wins(with, {}, k - 1, r));
    }
  }
}

TEST_CASE("descent on a single matching layer") {
  auto l = matching_layers(2, 1);
  const Var x_ell = l.v(1, 0);
  auto system = layered_base_system(l);
  system.add({x_ell}, 1);
  PebbleGame game(system, 2);
  game.solve();
  auto t = layered_falsifier_play(l, x_ell, 2, delaying_verifier(game), true);
  CHECK(t.falsifier_won());
  CHECK(t.moves.size() <= 2);
  CHECK_FALSE(check_transcript(t).has_value());
}

TEST_CASE("singleton top constraint wins immediately") {
  BipartiteGraph gp(3, 3);
  gp.add_edge(1, 1);
  gp.add_edge(2, 2);
  auto l = build_layered(gp, 1);
  // w_{1,0} is adjacent to x_ell only, so ({x_ell},0) is a constraint
  auto t = layered_falsifier_play(l, l.v(1, 0), 2, constant_verifier(0));
  REQUIRE(t.falsifier_won());
  CHECK(t.moves.empty());
  CHECK_FALSE(check_transcript(t).has_value());
}

TEST_CASE("descent on three random layers") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    auto l = build_layered(random_right_regular(6, 2, seed), 3);
    REQUIRE_FALSE(check_layered(l).has_value());
    const Var x_ell = l.v(3, 0);
    const int k = 3;
    auto system = layered_base_system(l);
    system.add({x_ell}, 1);
    PebbleGame game(system, k, 20'000'000);
    game.solve();
    std::vector<VerifierStrategy> verifiers{delaying_verifier(game), constant_verifier(0),
                                            constant_verifier(1), random_verifier(seed)};
    for (const auto& v : verifiers) {
      auto t = layered_falsifier_play(l, x_ell, k, v, true);
      CHECK(t.falsifier_won());
      CHECK_FALSE(check_transcript(t).has_value());
      CHECK(t.moves.size() <= 1 + 3 * 2);
    }
    auto w = game.win_round({});
    REQUIRE(w.has_value());
    auto t = layered_falsifier_play(l, x_ell, k, delaying_verifier(game), true);
    CHECK(t.moves.size() >= *w);
  }
}

TEST_CASE("descent rejects too few pebbles") {
  auto l = build_layered(random_right_regular(6, 2, 1), 2);
  CHECK_THROWS_AS(layered_falsifier_play(l, l.v(2, 0), 2, constant_verifier(0)), InputError);
  CHECK_THROWS_AS(layered_falsifier_play(l, l.v(1, 0), 3, constant_verifier(0)), InputError);
}

TEST_CASE("transcript checker catches tampering") {
  auto l = build_layered(random_right_regular(6, 2, 2), 2);
  auto t = layered_falsifier_play(l, l.v(2, 0), 3, constant_verifier(0));
  REQUIRE_FALSE(check_transcript(t).has_value());
  auto bad = t;
  bad.moves.front().after.set(bad.moves.front().x, 1 - bad.moves.front().reply);
  CHECK(check_transcript(bad).has_value());
  auto lie = t;
  lie.violated.reset();
  CHECK(check_transcript(lie).has_value());
  auto j = nlohmann::json::parse(transcript_to_json(t));
  CHECK(j["falsifier_won"] == true);
  CHECK(j["moves"].size() == t.moves.size());
}
