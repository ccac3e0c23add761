#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "wlr/xor_system.hpp"

namespace wlr {

/// Exact solver for the r-round k-pebble game on an XOR system (at most 64 variables).
///
/// Positions are all partial assignments with at most k variables. win_round(beta) is the
/// least r such that Falsifier wins the r-round game from beta.
class PebbleGame {
 public:
  static constexpr std::uint16_t kNever = 0xffff;

  /// Throws BudgetExceeded if the position space exceeds max_positions, InputError if the
  /// system has more than 64 variables or k < 1.
  PebbleGame(const XorSystem& system, int k, std::uint64_t max_positions = 10'000'000);

  /// Number of positions sum_{s<=k} C(n,s) 2^s, saturating at UINT64_MAX.
  static std::uint64_t count_positions(std::size_t n, int k);

  /// Extends the fixpoint iteration up to round r_max (or until it stabilizes).
  /// With stop_at set, also stops as soon as that position is won.
  void solve(std::size_t r_max = kNever - 1, const PartialAssignment* stop_at = nullptr);

  /// Least winning round of beta among the rounds computed so far.
  std::optional<std::size_t> win_round(const PartialAssignment& beta) const;
  /// True once another round would change nothing; win_round is then final.
  bool at_fixpoint() const { return fixpoint_; }
  std::size_t rounds_computed() const { return rounds_; }
  std::uint64_t num_positions() const { return total_; }
  int pebbles() const { return k_; }
  std::size_t num_vars() const { return n_; }

 private:
  std::uint64_t index_of(std::uint64_t mask, std::uint64_t values) const;
  std::uint64_t rank(std::uint64_t mask) const;
  void initial_round();
  bool next_round();

  template <class F>
  void for_each_mask(int size, F&& f) const;

  int k_;
  std::size_t n_;
  std::uint64_t total_ = 0;
  std::vector<std::vector<std::uint64_t>> binom_;
  std::vector<std::uint64_t> base_;
  std::vector<std::pair<std::uint64_t, std::uint8_t>> exact_;  // support mask -> parity bits
  std::vector<std::uint16_t> win_;
  std::size_t rounds_ = 0;
  bool fixpoint_ = false;
};

bool falsifier_wins(const XorSystem& s, const PartialAssignment& beta0, int k, std::size_t r,
                    std::uint64_t max_positions = 10'000'000);
std::optional<std::size_t> min_falsifier_rounds(const XorSystem& s,
                                                const PartialAssignment& beta0, int k,
                                                std::size_t r_max,
                                                std::uint64_t max_positions = 10'000'000);

/// True when beta violates nothing in the r-step k-closure: a sufficient condition for
/// Verifier to survive r rounds of the k-pebble game from beta. False is inconclusive.
bool verifier_survival_certificate(const XorSystem& s, const PartialAssignment& beta, int k,
                                   std::size_t r);

}  // namespace wlr
