#include "wlr/rng.hpp"

#include <algorithm>

#include "wlr/error.hpp"

namespace wlr {

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw InputError("empty range");
  // Rejection sampling on the largest multiple of bound.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x;
  do x = next();
  while (x >= limit);
  return x % bound;
}

std::vector<std::uint32_t> Rng::sample(std::uint32_t n, std::uint32_t r) {
  if (r > n) throw InputError("cannot sample more elements than available");
  // Floyd's algorithm.
  std::vector<std::uint32_t> out;
  for (std::uint32_t j = n - r; j < n; ++j) {
    auto t = static_cast<std::uint32_t>(below(std::uint64_t{j} + 1));
    if (std::find(out.begin(), out.end(), t) == out.end())
      out.push_back(t);
    else
      out.push_back(j);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace wlr
