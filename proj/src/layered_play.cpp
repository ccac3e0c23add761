#include "wlr/layered_play.hpp"

#include <algorithm>
#include <json.hpp>
#include <memory>

#include "wlr/error.hpp"
#include "wlr/rng.hpp"

namespace wlr {

VerifierStrategy constant_verifier(int bit) {
  return [bit](const PartialAssignment&, Var) { return bit; };
}

VerifierStrategy random_verifier(std::uint64_t seed) {
  auto rng = std::make_shared<Rng>(seed);
  return [rng](const PartialAssignment&, Var) { return rng->coin() ? 1 : 0; };
}

VerifierStrategy delaying_verifier(const PebbleGame& solved) {
  return [&solved](const PartialAssignment& kept, Var x) {
    int best = 0;
    std::size_t best_value = 0;
    for (int b = 0; b < 2; ++b) {
      PartialAssignment next = kept;
      next.set(x, b);
      auto r = solved.win_round(next);
      std::size_t value = r ? *r : SIZE_MAX;
      if (b == 0 || value > best_value) {
        best = b;
        best_value = value;
      }
    }
    return best;
  };
}

PlayTranscript layered_falsifier_play(const LayeredGraph& l, Var x_ell, int k,
                                      const VerifierStrategy& verifier, bool from_empty) {
  if (l.v_layer(x_ell) != l.ell) throw InputError("x_ell must lie in the top layer");
  if (l.graph.max_right_degree() > static_cast<std::size_t>(k))
    throw InputError("some right vertex has degree above the pebble count");
  PlayTranscript t;
  t.system = layered_base_system(l);
  if (from_empty) t.system.add({x_ell}, 1);
  t.pebbles = k;
  const auto list = t.system.constraint_list();

  PartialAssignment pos;
  auto finish = [&]() {
    for (std::size_t i = 0; i < list.size(); ++i)
      if (violates(pos, list[i])) {
        t.violated = i;
        return true;
      }
    return false;
  };
  auto move = [&](std::vector<Var> kept, Var x) {
    PartialAssignment base;
    for (Var y : kept) base.set(y, *pos.get(y));
    int b = verifier(base, x);
    if (b != 0 && b != 1) throw InputError("verifier replied with a non-bit");
    base.set(x, b);
    pos = base;
    t.moves.push_back({x, std::move(kept), static_cast<std::uint8_t>(b), pos});
    return b;
  };

  if (from_empty) {
    move({}, x_ell);
  } else {
    pos.set(x_ell, 1);
    t.initial = pos;
  }
  if (finish()) return t;

  Var xi = x_ell;
  while (true) {
    const std::uint32_t layer = l.v_layer(xi);
    const std::uint32_t wi = l.w(layer, xi - l.v(layer, 0));
    std::vector<Var> held{xi};
    std::optional<Var> next;
    for (auto y : l.graph.neighbors(wi)) {
      if (l.v_layer(y) + 1 != layer) continue;
      int b = move(held, y);
      if (finish()) return t;
      if (b == 1) {
        next = y;
        break;
      }
      held.push_back(y);
      std::sort(held.begin(), held.end());
    }
    // Without a 1 below, (N(w_i),0) or ({x_i},0) would already be violated.
    if (!next) throw std::logic_error("descent stalled on a non-violating position");
    xi = *next;
  }
}

std::optional<std::string> check_transcript(const PlayTranscript& t) {
  const auto list = t.system.constraint_list();
  auto violated = [&](const PartialAssignment& p) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < list.size(); ++i)
      if (violates(p, list[i])) return i;
    return std::nullopt;
  };
  if (t.initial.size() > static_cast<std::size_t>(t.pebbles)) return "initial position too large";
  PartialAssignment pos = t.initial;
  if (violated(pos) && !t.moves.empty()) return "play continued after a violation";
  for (std::size_t i = 0; i < t.moves.size(); ++i) {
    const auto& mv = t.moves[i];
    if (pos.contains(mv.x)) return "move " + std::to_string(i) + " pebbles an assigned variable";
    if (mv.x >= t.system.num_vars()) return "move " + std::to_string(i) + " uses an unknown variable";
    PartialAssignment next;
    for (Var y : mv.kept) {
      auto b = pos.get(y);
      if (!b) return "move " + std::to_string(i) + " keeps an unassigned variable";
      next.set(y, *b);
    }
    next.set(mv.x, mv.reply);
    if (next.size() > static_cast<std::size_t>(t.pebbles))
      return "move " + std::to_string(i) + " exceeds the pebble bound";
    if (!(mv.after == next)) return "move " + std::to_string(i) + " records a wrong position";
    pos = next;
    if (violated(pos) && i + 1 != t.moves.size())
      return "play continued after a violation at move " + std::to_string(i);
  }
  auto v = violated(pos);
  if (v.has_value() != t.violated.has_value()) return "claimed outcome does not match";
  if (v && (*t.violated >= list.size() || !violates(pos, list[*t.violated])))
    return "claimed constraint is not violated";
  return std::nullopt;
}

std::string transcript_to_json(const PlayTranscript& t) {
  using nlohmann::json;
  auto assignment = [&](const PartialAssignment& p) {
    json o = json::object();
    for (const auto& [x, b] : p.values()) o[t.system.name(x)] = b;
    return o;
  };
  json j;
  j["pebbles"] = t.pebbles;
  j["initial"] = assignment(t.initial);
  j["moves"] = json::array();
  for (const auto& mv : t.moves) {
    json kept = json::array();
    for (Var y : mv.kept) kept.push_back(t.system.name(y));
    j["moves"].push_back({{"pebble", t.system.name(mv.x)},
                          {"keep", kept},
                          {"reply", mv.reply},
                          {"position", assignment(mv.after)}});
  }
  j["falsifier_won"] = t.falsifier_won();
  if (t.violated) {
    const auto c = t.system.constraint_list()[*t.violated];
    json sup = json::array();
    for (Var x : c.support) sup.push_back(t.system.name(x));
    j["violated"] = {{"index", *t.violated}, {"support", sup}, {"parity", c.parity}};
  } else {
    j["violated"] = nullptr;
  }
  return j.dump(2);
}

}  // namespace wlr
