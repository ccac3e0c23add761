#include "wlr/closure.hpp"

#include <vector>

#include "wlr/error.hpp"

namespace wlr {

namespace {

XorSystem with_vars(const XorSystem& s) { return XorSystem(s.names()); }

// One attractor step where only pairs touching `fresh` can yield anything new.
std::vector<XorConstraint> expand(const std::vector<XorConstraint>& all,
                                  const std::vector<XorConstraint>& fresh, XorSystem& into,
                                  std::size_t k, std::size_t max_constraints) {
  std::vector<XorConstraint> added;
  auto consider = [&](const XorConstraint& a, const XorConstraint& b) {
    XorConstraint c = combine(a, b);
    if (c.support.size() <= k && into.add(c)) {
      added.push_back(std::move(c));
      if (into.size() > max_constraints)
        throw BudgetExceeded("closure exceeds " + std::to_string(max_constraints) +
                             " constraints");
    }
  };
  for (const auto& f : fresh)
    for (const auto& a : all) consider(f, a);
  return added;
}

}  // namespace

XorSystem attractor(const XorSystem& s, std::size_t k) {
  XorSystem out = s;
  auto list = s.constraint_list();
  for (std::size_t i = 0; i < list.size(); ++i)
    for (std::size_t j = i; j < list.size(); ++j) {
      XorConstraint c = combine(list[i], list[j]);
      if (c.support.size() <= k) out.add(std::move(c));
    }
  return out;
}

namespace {

ClosureResult iterate(const XorSystem& s, std::size_t k, std::optional<std::size_t> rounds,
                      std::size_t max_constraints) {
  ClosureResult res{s, 0};
  std::vector<XorConstraint> all = s.constraint_list();
  std::vector<XorConstraint> fresh = all;
  while (!fresh.empty()) {
    if (rounds && res.steps == *rounds) return res;
    // Pairs among old constraints were combined in an earlier step.
    auto added = expand(all, fresh, res.system, k, max_constraints);
    if (added.empty()) break;
    all.insert(all.end(), added.begin(), added.end());
    fresh = std::move(added);
    ++res.steps;
  }
  return res;
}

}  // namespace

ClosureResult closure(const XorSystem& s, std::size_t k, std::size_t max_constraints) {
  return iterate(s, k, std::nullopt, max_constraints);
}

XorSystem closure_bounded(const XorSystem& s, std::size_t k, std::size_t r,
                          std::size_t max_constraints) {
  return iterate(s, k, r, max_constraints).system;
}

XorSystem star_closure(const XorSystem& g, std::size_t k, boost::rational<std::int64_t> alpha,
                       std::uint64_t max_subsets) {
  if (alpha <= 0) throw InputError("alpha must be positive");
  for (const auto& c : g.constraints())
    if (c.parity != 0) throw InputError("star closure expects parity-0 constraints");
  const std::uint64_t cap =
      static_cast<std::uint64_t>(boost::rational_cast<std::int64_t>(
          boost::rational<std::int64_t>(static_cast<std::int64_t>(k)) / alpha));
  const auto list = g.constraint_list();
  const std::uint64_t m = list.size();

  // Sum of C(m, i) for i <= cap, with early exit on the budget.
  std::uint64_t total = 0;
  long double binom = 1;
  for (std::uint64_t i = 0; i <= std::min(cap, m); ++i) {
    if (i > 0) binom = binom * (m - i + 1) / i;
    total += static_cast<std::uint64_t>(binom + 0.5L);
    if (binom > max_subsets || total > max_subsets)
      throw BudgetExceeded("star closure would enumerate more than " +
                           std::to_string(max_subsets) + " subsets");
  }

  XorSystem out = with_vars(g);
  std::vector<std::uint8_t> acc(g.num_vars(), 0);
  std::size_t acc_size = 0;
  auto flip = [&](const XorConstraint& c) {
    for (Var x : c.support) {
      acc[x] ^= 1;
      acc_size += acc[x] ? 1 : -1;
    }
  };
  auto emit = [&]() {
    if (acc_size > k) return;
    std::vector<Var> sup;
    for (Var x = 0; x < acc.size(); ++x)
      if (acc[x]) sup.push_back(x);
    out.add(XorConstraint(std::move(sup), 0));
  };
  auto dfs = [&](auto&& self, std::size_t start, std::uint64_t depth) -> void {
    emit();
    if (depth == cap) return;
    for (std::size_t i = start; i < list.size(); ++i) {
      flip(list[i]);
      self(self, i + 1, depth + 1);
      flip(list[i]);
    }
  };
  dfs(dfs, 0, 0);
  return out;
}

std::optional<std::vector<std::uint8_t>> gauss_satisfiable(const XorSystem& s) {
  const std::size_t n = s.num_vars();
  const std::size_t words = n / 64 + 1;  // last bit column holds the parity
  std::vector<std::vector<std::uint64_t>> rows;
  for (const auto& c : s.constraints()) {
    std::vector<std::uint64_t> r(words, 0);
    for (Var x : c.support) r[x / 64] ^= 1ull << (x % 64);
    if (c.parity) r[n / 64] ^= 1ull << (n % 64);
    rows.push_back(std::move(r));
  }
  auto bit = [](const std::vector<std::uint64_t>& r, std::size_t i) {
    return (r[i / 64] >> (i % 64)) & 1u;
  };
  std::vector<std::size_t> pivot_col;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < n && rank < rows.size(); ++col) {
    std::size_t p = rank;
    while (p < rows.size() && !bit(rows[p], col)) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[rank]);
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (i != rank && bit(rows[i], col))
        for (std::size_t w = 0; w < words; ++w) rows[i][w] ^= rows[rank][w];
    pivot_col.push_back(col);
    ++rank;
  }
  for (std::size_t i = rank; i < rows.size(); ++i)
    if (bit(rows[i], n)) return std::nullopt;
  // Free variables are 0; each pivot variable equals its row's parity.
  std::vector<std::uint8_t> sol(n, 0);
  for (std::size_t i = 0; i < rank; ++i) sol[pivot_col[i]] = static_cast<std::uint8_t>(bit(rows[i], n));
  return sol;
}

}  // namespace wlr
