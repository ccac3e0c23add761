#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "wlr/bipartite.hpp"
#include "wlr/xor_system.hpp"

namespace wlr {

/// (ell x m)-layered graph. Left vertex j of layer V_i (0 <= i <= ell) is i*m + j; right
/// vertex j of layer W_i (1 <= i <= ell) is (i-1)*m + j.
struct LayeredGraph {
  std::uint32_t ell = 0;
  std::uint32_t m = 0;
  BipartiteGraph graph;

  std::uint32_t v(std::uint32_t layer, std::uint32_t j) const { return layer * m + j; }
  std::uint32_t w(std::uint32_t layer, std::uint32_t j) const { return (layer - 1) * m + j; }
  std::uint32_t v_layer(std::uint32_t v) const { return v / m; }
  std::uint32_t w_layer(std::uint32_t w) const { return w / m + 1; }
};

/// Stacks ell copies of a square bipartite graph: v_{i-1,j} w_{i,k} for every edge
/// v'_j w'_k, plus the matching v_{i,j} w_{i,j}.
LayeredGraph build_layered(const BipartiteGraph& gp, std::uint32_t ell);

/// Description of the first violated layered-graph condition, or nothing if all hold.
std::optional<std::string> check_layered(const LayeredGraph& l);

/// One constraint (N(w), 0) per right vertex, over variables x1..x|V|.
XorSystem constraints_from_graph(const BipartiteGraph& g);
/// Same for a layered graph, with variables named v<layer>_<j>.
XorSystem constraints_from_layered(const LayeredGraph& l);

/// C_G together with ({x}, 0) for every x in V_0.
XorSystem layered_base_system(const LayeredGraph& l);

struct HardInstanceOptions {
  Rational alpha{3, 2};
  Rational gamma{1, 6};
  std::uint32_t max_attempts = 100;
  ExpansionOptions expansion;
};

struct HardInstance {
  XorSystem system;
  Var x_ell = 0;
  LayeredGraph layered;
  ExpansionVerdict verdict;
  bool verified = false;  // single-neighbor expansion check passed
  std::uint32_t attempts = 0;
  std::uint64_t graph_seed = 0;
};

/// C_G ∪ {({x},0) : x in V_0} ∪ {({x_ell},1)} for a layered graph built from a random
/// right-d-regular square graph, retried until the layered graph passes the
/// (alpha, gamma)-single-neighbor check relative to the layer width m.
HardInstance hard_instance(std::uint32_t d, std::uint32_t ell, std::uint32_t m,
                           std::uint64_t seed, const HardInstanceOptions& options = {});

/// Adds fresh unconstrained variables until the system has target_n of them.
XorSystem dummy_pad(const XorSystem& s, std::size_t target_n);

}  // namespace wlr
