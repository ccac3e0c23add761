#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace wlr {

/// Seeded generator with a platform-independent output sequence.
///
/// std::mt19937_64 is fully specified by the standard; the distributions below avoid the
/// implementation-defined std:: distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound);
  bool coin() { return next() >> 63; }
  /// Sorted r-subset of [0, n), uniform.
  std::vector<std::uint32_t> sample(std::uint32_t n, std::uint32_t r);
  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace wlr
