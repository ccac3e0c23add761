#include "wlr/set_family.hpp"

#include <algorithm>
#include <set>

#include "wlr/atomic_type.hpp"
#include "wlr/error.hpp"

namespace wlr {

bool SetFamily::is_uniform(std::size_t k) const {
  for (const auto& e : members) {
    if (e.size() != k) return false;
    if (std::adjacent_find(e.begin(), e.end(), std::greater_equal<>()) != e.end()) return false;
    if (!e.empty() && e.back() >= universe) return false;
  }
  return true;
}

std::size_t SetFamily::max_pairwise_intersection() const {
  std::size_t best = 0;
  std::vector<std::uint32_t> tmp;
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      tmp.clear();
      std::set_intersection(members[i].begin(), members[i].end(), members[j].begin(),
                            members[j].end(), std::back_inserter(tmp));
      best = std::max(best, tmp.size());
    }
  return best;
}

SetFamily SetFamily::prefix(std::size_t t) const {
  if (t > members.size()) throw InputError("prefix longer than the family");
  return {universe, {members.begin(), members.begin() + t}};
}

bool is_prime(std::uint32_t q) {
  if (q < 2) return false;
  for (std::uint32_t d = 2; std::uint64_t{d} * d <= q; ++d)
    if (q % d == 0) return false;
  return true;
}

SetFamily polynomial_set_family(std::uint32_t q, std::uint32_t k,
                                std::optional<std::uint32_t> universe) {
  if (!is_prime(q)) throw InputError("q must be prime");
  if (k < 2) throw InputError("k must be at least 2");
  if (q < k) throw InputError("q must be at least k");
  const std::uint32_t n = universe.value_or(k * q);
  if (n < k * q) throw InputError("universe too small for the family");
  SetFamily f;
  f.universe = n;
  // Coefficient vectors c_0..c_{k-2}, enumerated lexicographically.
  std::vector<std::uint32_t> coeff(k - 1, 0);
  while (true) {
    std::vector<std::uint32_t> set;
    for (std::uint32_t i = 0; i < k; ++i) {
      std::uint64_t y = 0;
      for (std::uint32_t d = k - 1; d-- > 0;) y = (y * i + coeff[d]) % q;
      set.push_back(i * q + static_cast<std::uint32_t>(y));
    }
    f.members.push_back(std::move(set));
    std::size_t pos = coeff.size();
    while (pos > 0 && ++coeff[pos - 1] == q) coeff[--pos] = 0;
    if (pos == 0) break;
  }
  return f;
}

SetFamily greedy_set_family(std::uint32_t n, std::uint32_t k) {
  if (k < 2 || k > n) throw InputError("need 2 <= k <= n");
  SetFamily f;
  f.universe = n;
  std::vector<std::uint32_t> cur(k);
  for (std::uint32_t i = 0; i < k; ++i) cur[i] = i;
  std::vector<std::uint32_t> tmp;
  while (true) {
    bool ok = true;
    for (const auto& e : f.members) {
      tmp.clear();
      std::set_intersection(e.begin(), e.end(), cur.begin(), cur.end(), std::back_inserter(tmp));
      if (tmp.size() + 2 > k) {
        ok = false;
        break;
      }
    }
    if (ok) f.members.push_back(cur);
    int i = static_cast<int>(k) - 1;
    while (i >= 0 && cur[i] == n - k + i) --i;
    if (i < 0) break;
    ++cur[i];
    for (std::uint32_t j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return f;
}

TupleColoring family_coloring(const SetFamily& family, int k) {
  if (k < 1) throw InputError("k must be positive");
  for (const auto& e : family.members)
    if (e.size() != static_cast<std::size_t>(k))
      throw InputError("family members must have exactly k elements");
  const std::set<std::vector<std::uint32_t>> members(family.members.begin(),
                                                     family.members.end());
  const std::uint32_t nv = 2 * family.universe;
  TupleSpace sp(k, nv);
  std::uint64_t pattern_count = 1;
  for (int i = 0; i < k; ++i) pattern_count *= k;
  std::vector<std::uint64_t> raw(sp.size());
  Tuple t(k);
  std::vector<std::uint32_t> base(k);
  for (std::size_t idx = 0; idx < sp.size(); ++idx) {
    sp.decode(idx, t);
    std::uint64_t base_code = 0, pattern = 0;
    unsigned parity = 0;
    for (int i = 0; i < k; ++i) {
      base[i] = t[i] / 2;
      base_code = base_code * family.universe + base[i];
      parity ^= t[i] & 1u;
    }
    for (auto p : equality_pattern(t)) pattern = pattern * k + p;
    std::sort(base.begin(), base.end());
    unsigned par = 2;
    if (std::adjacent_find(base.begin(), base.end()) == base.end() && members.count(base))
      par = parity;
    raw[idx] = (base_code * pattern_count + pattern) * 3 + par;
  }
  return TupleColoring::from_raw(k, nv, raw);
}

std::vector<TupleColoring> stable_chain(const SetFamily& family, int k) {
  std::vector<TupleColoring> out;
  for (std::size_t t = 0; t <= family.size(); ++t)
    out.push_back(family_coloring(family.prefix(t), k));
  return out;
}

}  // namespace wlr
