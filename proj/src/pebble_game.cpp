#include "wlr/pebble_game.hpp"

#include <algorithm>
#include <bit>

#include "wlr/closure.hpp"
#include "wlr/error.hpp"

namespace wlr {

namespace {

// Drops bit i of x, shifting the higher bits down.
inline std::uint64_t remove_bit(std::uint64_t x, int i) {
  std::uint64_t low = x & ((std::uint64_t{1} << i) - 1);
  return ((x >> (i + 1)) << i) | low;
}

// Gathers the bits of `values` at the positions set in `mask`.
inline std::uint64_t extract(std::uint64_t values, std::uint64_t mask) {
  std::uint64_t out = 0;
  int j = 0;
  for (std::uint64_t m = mask; m; m &= m - 1, ++j)
    out |= ((values >> std::countr_zero(m)) & 1) << j;
  return out;
}

}  // namespace

std::uint64_t PebbleGame::count_positions(std::size_t n, int k) {
  unsigned __int128 total = 0, c = 1;
  for (std::size_t s = 0; s <= std::min<std::size_t>(k, n); ++s) {
    if (s > 0) c = c * (n - s + 1) / s;
    total += c << s;
    if (total > UINT64_MAX) return UINT64_MAX;
  }
  return static_cast<std::uint64_t>(total);
}

PebbleGame::PebbleGame(const XorSystem& system, int k, std::uint64_t max_positions)
    : k_(k), n_(system.num_vars()) {
  if (k < 1) throw InputError("the game needs at least one pebble");
  if (n_ > 64) throw InputError("the exact game solver supports at most 64 variables");
  total_ = count_positions(n_, k);
  if (total_ > max_positions)
    throw BudgetExceeded("game has " + std::to_string(total_) + " positions, budget is " +
                         std::to_string(max_positions));
  const int smax = static_cast<int>(std::min<std::size_t>(k, n_));
  binom_.assign(65, std::vector<std::uint64_t>(smax + 2, 0));
  for (std::size_t a = 0; a <= 64; ++a) {
    binom_[a][0] = 1;
    for (int b = 1; b <= smax + 1; ++b)
      binom_[a][b] = a == 0 ? 0 : binom_[a - 1][b - 1] + binom_[a - 1][b];
  }
  base_.assign(smax + 2, 0);
  for (int s = 0; s <= smax; ++s) base_[s + 1] = base_[s] + (binom_[n_][s] << s);

  for (const auto& c : system.constraints()) {
    if (c.support.size() > static_cast<std::size_t>(k)) continue;  // never fully pebbled
    std::uint64_t m = 0;
    for (Var x : c.support) m |= std::uint64_t{1} << x;
    exact_.emplace_back(m, std::uint8_t(1u << c.parity));
  }
  std::sort(exact_.begin(), exact_.end());
  std::vector<std::pair<std::uint64_t, std::uint8_t>> merged;
  for (const auto& e : exact_) {
    if (!merged.empty() && merged.back().first == e.first)
      merged.back().second |= e.second;
    else
      merged.push_back(e);
  }
  exact_ = std::move(merged);

  win_.assign(total_, kNever);
  initial_round();
}

std::uint64_t PebbleGame::rank(std::uint64_t mask) const {
  std::uint64_t r = 0;
  int i = 0;
  for (std::uint64_t m = mask; m; m &= m - 1, ++i) r += binom_[std::countr_zero(m)][i + 1];
  return r;
}

std::uint64_t PebbleGame::index_of(std::uint64_t mask, std::uint64_t values) const {
  int s = std::popcount(mask);
  return base_[s] + (rank(mask) << s) + extract(values, mask);
}

template <class F>
void PebbleGame::for_each_mask(int size, F&& f) const {
  if (size == 0) {
    f(std::uint64_t{0}, std::uint64_t{0});
    return;
  }
  if (static_cast<std::size_t>(size) > n_) return;
  const std::uint64_t count = binom_[n_][size];
  std::uint64_t mask = size == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << size) - 1;
  for (std::uint64_t r = 0;; ++r) {
    f(mask, r);
    if (r + 1 == count) break;
    std::uint64_t c = mask & (~mask + 1);
    std::uint64_t rr = mask + c;
    mask = (((rr ^ mask) >> 2) / c) | rr;
  }
}

void PebbleGame::initial_round() {
  const int smax = static_cast<int>(std::min<std::size_t>(k_, n_));
  std::uint64_t sub[64];
  for (int s = 0; s <= smax; ++s) {
    for_each_mask(s, [&](std::uint64_t mask, std::uint64_t r) {
      int i = 0;
      for (std::uint64_t m = mask; m; m &= m - 1, ++i)
        sub[i] = rank(mask ^ (std::uint64_t{1} << std::countr_zero(m)));
      auto it = std::lower_bound(exact_.begin(), exact_.end(),
                                 std::make_pair(mask, std::uint8_t{0}));
      std::uint8_t bad = (it != exact_.end() && it->first == mask) ? it->second : 0;
      const std::uint64_t block = base_[s] + (r << s);
      for (std::uint64_t cv = 0; cv < (std::uint64_t{1} << s); ++cv) {
        bool v = (bad >> (1 ^ (std::popcount(cv) & 1))) & 1;
        for (int j = 0; j < s && !v; ++j)
          v = win_[base_[s - 1] + (sub[j] << (s - 1)) + remove_bit(cv, j)] == 0;
        if (v) win_[block + cv] = 0;
      }
    });
  }
}

bool PebbleGame::next_round() {
  const std::uint16_t t = static_cast<std::uint16_t>(rounds_ + 1);
  const int smax = static_cast<int>(std::min<std::size_t>(k_, n_));
  const int qmax = std::min(k_ - 1, smax);  // largest retained sub-position
  std::vector<std::uint64_t> d(base_[qmax + 1], 0);
  std::uint64_t sub[64];
  int pos[64];

  auto sub_ranks = [&](std::uint64_t mask) {
    int i = 0;
    for (std::uint64_t m = mask; m; m &= m - 1, ++i) {
      pos[i] = std::countr_zero(m);
      sub[i] = rank(mask ^ (std::uint64_t{1} << pos[i]));
    }
  };

  // G(q): variables x outside q such that both extensions of q by x are already won.
  for (int s = 1; s <= std::min(qmax + 1, smax); ++s) {
    for_each_mask(s, [&](std::uint64_t mask, std::uint64_t r) {
      sub_ranks(mask);
      const std::uint64_t block = base_[s] + (r << s);
      for (std::uint64_t cv = 0; cv < (std::uint64_t{1} << s); ++cv) {
        if (win_[block + cv] >= t) continue;
        for (int i = 0; i < s; ++i) {
          if (cv >> i & 1) continue;  // visit each pair once, from its 0 end
          if (win_[block + (cv | std::uint64_t{1} << i)] >= t) continue;
          d[base_[s - 1] + (sub[i] << (s - 1)) + remove_bit(cv, i)] |= std::uint64_t{1} << pos[i];
        }
      }
    });
  }
  // D(q): union of G over all restrictions of q.
  for (int s = 1; s <= qmax; ++s) {
    for_each_mask(s, [&](std::uint64_t mask, std::uint64_t r) {
      sub_ranks(mask);
      const std::uint64_t block = base_[s] + (r << s);
      for (std::uint64_t cv = 0; cv < (std::uint64_t{1} << s); ++cv)
        for (int i = 0; i < s; ++i)
          d[block + cv] |= d[base_[s - 1] + (sub[i] << (s - 1)) + remove_bit(cv, i)];
    });
  }
  bool changed = false;
  for (int s = 0; s <= smax; ++s) {
    for_each_mask(s, [&](std::uint64_t mask, std::uint64_t r) {
      sub_ranks(mask);
      const std::uint64_t block = base_[s] + (r << s);
      for (std::uint64_t cv = 0; cv < (std::uint64_t{1} << s); ++cv) {
        if (win_[block + cv] != kNever) continue;
        std::uint64_t cand = 0;
        if (s <= qmax) {
          cand = d[block + cv];
        } else {
          for (int i = 0; i < s; ++i)
            cand |= d[base_[s - 1] + (sub[i] << (s - 1)) + remove_bit(cv, i)];
        }
        if (cand & ~mask) {
          win_[block + cv] = t;
          changed = true;
        }
      }
    });
  }
  rounds_ = t;
  return changed;
}

void PebbleGame::solve(std::size_t r_max, const PartialAssignment* stop_at) {
  if (r_max >= kNever) r_max = kNever - 1;
  while (!fixpoint_ && rounds_ < r_max) {
    if (stop_at && win_round(*stop_at)) return;
    if (!next_round()) fixpoint_ = true;
  }
}

std::optional<std::size_t> PebbleGame::win_round(const PartialAssignment& beta) const {
  if (beta.size() > static_cast<std::size_t>(k_))
    throw InputError("position uses more than k pebbles");
  std::uint64_t mask = 0, values = 0;
  for (const auto& [x, b] : beta.values()) {
    if (x >= n_) throw InputError("position mentions an unknown variable");
    mask |= std::uint64_t{1} << x;
    values |= std::uint64_t{b} << x;
  }
  std::uint16_t w = win_[index_of(mask, values)];
  if (w == kNever || w > rounds_) return std::nullopt;
  return w;
}

bool falsifier_wins(const XorSystem& s, const PartialAssignment& beta0, int k, std::size_t r,
                    std::uint64_t max_positions) {
  PebbleGame g(s, k, max_positions);
  g.solve(r, &beta0);
  auto w = g.win_round(beta0);
  return w && *w <= r;
}

std::optional<std::size_t> min_falsifier_rounds(const XorSystem& s,
                                                const PartialAssignment& beta0, int k,
                                                std::size_t r_max,
                                                std::uint64_t max_positions) {
  PebbleGame g(s, k, max_positions);
  g.solve(r_max, &beta0);
  auto w = g.win_round(beta0);
  if (w && *w <= r_max) return w;
  return std::nullopt;
}

bool verifier_survival_certificate(const XorSystem& s, const PartialAssignment& beta, int k,
                                   std::size_t r) {
  if (beta.size() > static_cast<std::size_t>(k))
    throw InputError("position uses more than k pebbles");
  XorSystem cl = closure_bounded(s, static_cast<std::size_t>(k), r);
  return !first_violated(beta, cl).has_value();
}

}  // namespace wlr
