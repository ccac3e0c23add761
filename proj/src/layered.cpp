#include "wlr/layered.hpp"

#include <algorithm>
#include <set>

#include "wlr/error.hpp"

namespace wlr {

LayeredGraph build_layered(const BipartiteGraph& gp, std::uint32_t ell) {
  if (gp.left_size() != gp.right_size()) throw InputError("layer graph must be square");
  if (ell < 1) throw InputError("need at least one layer");
  LayeredGraph l;
  l.ell = ell;
  l.m = gp.left_size();
  l.graph = BipartiteGraph((ell + 1) * l.m, ell * l.m);
  for (std::uint32_t i = 1; i <= ell; ++i)
    for (std::uint32_t k = 0; k < l.m; ++k) {
      for (auto j : gp.neighbors(k)) l.graph.add_edge(l.v(i - 1, j), l.w(i, k));
      l.graph.add_edge(l.v(i, k), l.w(i, k));
    }
  return l;
}

std::optional<std::string> check_layered(const LayeredGraph& l) {
  const auto& g = l.graph;
  if (g.left_size() != (l.ell + 1) * l.m) return "left side is not (ell+1) layers of size m";
  if (g.right_size() != l.ell * l.m) return "right side is not ell layers of size m";
  std::vector<std::uint32_t> matched(g.left_size(), 0);
  for (std::uint32_t w = 0; w < g.right_size(); ++w) {
    const std::uint32_t i = l.w_layer(w);
    std::uint32_t same = 0;
    for (auto v : g.neighbors(w)) {
      const std::uint32_t j = l.v_layer(v);
      if (j != i && j + 1 != i)
        return "right vertex " + std::to_string(w) + " has a neighbor outside V_{i-1} ∪ V_i";
      if (j == i) {
        ++same;
        ++matched[v];
      }
    }
    if (same != 1) return "right vertex " + std::to_string(w) + " is not matched into V_i";
  }
  for (std::uint32_t v = l.m; v < g.left_size(); ++v)
    if (matched[v] != 1) return "left vertex " + std::to_string(v) + " is not matched into W_i";
  return std::nullopt;
}

namespace {

XorSystem graph_system(const BipartiteGraph& g, XorSystem s) {
  for (std::uint32_t w = 0; w < g.right_size(); ++w) s.add(g.neighbors(w), 0);
  return s;
}

std::vector<std::string> layered_names(const LayeredGraph& l) {
  std::vector<std::string> names;
  for (std::uint32_t i = 0; i <= l.ell; ++i)
    for (std::uint32_t j = 0; j < l.m; ++j)
      names.push_back("v" + std::to_string(i) + "_" + std::to_string(j));
  return names;
}

}  // namespace

XorSystem constraints_from_graph(const BipartiteGraph& g) {
  return graph_system(g, XorSystem(g.left_size()));
}

XorSystem constraints_from_layered(const LayeredGraph& l) {
  return graph_system(l.graph, XorSystem(layered_names(l)));
}

XorSystem layered_base_system(const LayeredGraph& l) {
  XorSystem s = constraints_from_layered(l);
  for (std::uint32_t j = 0; j < l.m; ++j) s.add({l.v(0, j)}, 0);
  return s;
}

HardInstance hard_instance(std::uint32_t d, std::uint32_t ell, std::uint32_t m,
                           std::uint64_t seed, const HardInstanceOptions& options) {
  if (d < 1) throw InputError("degree must be positive");
  if (m < 4 * d) throw InputError("layer width must be at least 4d");
  if (options.max_attempts < 1) throw InputError("need at least one attempt");
  HardInstance out;
  ExpansionOptions eo = options.expansion;
  eo.reference_size = m;
  for (std::uint32_t a = 0; a < options.max_attempts; ++a) {
    const std::uint64_t s = seed + 0x9e3779b97f4a7c15ull * a;
    LayeredGraph l = build_layered(random_right_regular(m, d, s), ell);
    ExpansionVerdict v = check_expansion(l.graph, options.alpha, options.gamma, eo);
    out.attempts = a + 1;
    out.graph_seed = s;
    out.layered = std::move(l);
    out.verdict = v;
    out.verified = v.single;
    if (out.verified) break;
  }
  out.x_ell = out.layered.v(ell, 0);
  out.system = layered_base_system(out.layered);
  out.system.add({out.x_ell}, 1);
  return out;
}

XorSystem dummy_pad(const XorSystem& s, std::size_t target_n) {
  if (target_n < s.num_vars()) throw InputError("padding cannot remove variables");
  std::vector<std::string> names = s.names();
  std::set<std::string> taken(names.begin(), names.end());
  for (std::size_t i = 0; names.size() < target_n; ++i) {
    std::string n = "pad" + std::to_string(i);
    if (taken.insert(n).second) names.push_back(n);
  }
  XorSystem out(names);
  for (const auto& c : s.constraints()) out.add(c);
  return out;
}

}  // namespace wlr
