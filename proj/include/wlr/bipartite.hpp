#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace wlr {

using Rational = boost::rational<std::int64_t>;

/// Bipartite graph (V, W, E) stored as sorted neighbor lists of the right vertices.
class BipartiteGraph {
 public:
  BipartiteGraph() = default;
  BipartiteGraph(std::uint32_t left, std::uint32_t right);

  std::uint32_t left_size() const { return left_; }
  std::uint32_t right_size() const { return static_cast<std::uint32_t>(adj_.size()); }
  void add_edge(std::uint32_t v, std::uint32_t w);
  bool has_edge(std::uint32_t v, std::uint32_t w) const;
  const std::vector<std::uint32_t>& neighbors(std::uint32_t w) const { return adj_[w]; }
  std::size_t right_degree(std::uint32_t w) const { return adj_[w].size(); }
  std::size_t max_right_degree() const;
  std::vector<std::size_t> left_degrees() const;
  std::size_t num_edges() const;

  bool operator==(const BipartiteGraph&) const = default;

 private:
  std::uint32_t left_ = 0;
  std::vector<std::vector<std::uint32_t>> adj_;
};

/// |V| = |W| = n, every right vertex gets r distinct uniformly random neighbors.
BipartiteGraph random_right_regular(std::uint32_t n, std::uint32_t r, std::uint64_t seed);

/// N(Y) and N*(Y) (left vertices with exactly one neighbor in Y), both sorted.
std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>> neighbor_sets(
    const BipartiteGraph& g, const std::vector<std::uint32_t>& y);

enum class ExpansionMode { exhaustive, sampled };

struct ExpansionOptions {
  ExpansionMode mode = ExpansionMode::exhaustive;
  /// Sets Y of size up to floor(gamma * reference); defaults to |W|.
  std::optional<std::uint64_t> reference_size;
  std::uint64_t max_subsets = 10'000'000;
  std::uint64_t samples = 100'000;
  std::uint64_t seed = 1;
};

struct ExpansionVerdict {
  bool plain = true;   // |N(Y)| >= alpha |Y|
  bool single = true;  // |N*(Y)| >= alpha |Y|
  bool vacuous = false;
  bool exhaustive = true;
  std::uint64_t max_set_size = 0;
  std::uint64_t sets_checked = 0;
  std::vector<std::uint32_t> plain_witness;   // a failing Y, if any
  std::vector<std::uint32_t> single_witness;  // a failing Y, if any
};

/// Checks both expansion properties over all nonempty Y ⊆ W with |Y| <= gamma * reference.
/// Throws BudgetExceeded in exhaustive mode when there are too many sets.
ExpansionVerdict check_expansion(const BipartiteGraph& g, Rational alpha, Rational gamma,
                                 const ExpansionOptions& options = {});

}  // namespace wlr
