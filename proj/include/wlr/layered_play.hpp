#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "wlr/layered.hpp"
#include "wlr/pebble_game.hpp"
#include "wlr/xor_system.hpp"

namespace wlr {

struct PlayMove {
  Var x = 0;               // newly pebbled variable
  std::vector<Var> kept;   // X', the retained part of the previous domain
  std::uint8_t reply = 0;  // Verifier's bit for x
  PartialAssignment after;
};

struct PlayTranscript {
  XorSystem system;
  int pebbles = 0;
  PartialAssignment initial;
  std::vector<PlayMove> moves;
  /// Index (canonical order) of a constraint violated by the final position.
  std::optional<std::size_t> violated;
  bool falsifier_won() const { return violated.has_value(); }
};

/// Verifier's reply given the retained position and the newly pebbled variable.
using VerifierStrategy = std::function<int(const PartialAssignment& kept, Var x)>;

VerifierStrategy constant_verifier(int bit);
VerifierStrategy random_verifier(std::uint64_t seed);
/// Picks the reply whose resulting position Falsifier needs the most rounds to win
/// (never-won positions count as infinitely far). The game must outlive the strategy.
VerifierStrategy delaying_verifier(const PebbleGame& solved);

/// Descent strategy on C_G ∪ {({x},0) : x in V_0} from {x_ell -> 1}.
///
/// From a 1-assigned x_i in V_i, pebbles the lower neighbors of the unique w_i ∈ W_i
/// adjacent to x_i one at a time while keeping x_i, descending as soon as one of them is
/// answered 1. Uses at most deg(w_i) pebbles. With from_empty, plays on the hard instance
/// (which also contains ({x_ell},1)) starting from the empty position by pebbling x_ell.
/// Throws InputError if some right degree exceeds k.
PlayTranscript layered_falsifier_play(const LayeredGraph& l, Var x_ell, int k,
                                      const VerifierStrategy& verifier, bool from_empty = false);

/// Legality of every move (x new, X' ⊆ X, |X' ∪ {x}| <= k, positions consistent), no
/// violation before the last move, and the claimed violation. Returns an error message.
std::optional<std::string> check_transcript(const PlayTranscript& t);

/// JSON dump: moves, replies, positions and the violated constraint.
std::string transcript_to_json(const PlayTranscript& t);

}  // namespace wlr
