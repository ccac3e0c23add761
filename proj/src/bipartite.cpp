#include "wlr/bipartite.hpp"

#include <algorithm>

#include "wlr/error.hpp"
#include "wlr/rng.hpp"

namespace wlr {

BipartiteGraph::BipartiteGraph(std::uint32_t left, std::uint32_t right)
    : left_(left), adj_(right) {}

void BipartiteGraph::add_edge(std::uint32_t v, std::uint32_t w) {
  if (v >= left_ || w >= adj_.size()) throw InputError("edge endpoint out of range");
  auto& a = adj_[w];
  auto it = std::lower_bound(a.begin(), a.end(), v);
  if (it == a.end() || *it != v) a.insert(it, v);
}

bool BipartiteGraph::has_edge(std::uint32_t v, std::uint32_t w) const {
  return std::binary_search(adj_[w].begin(), adj_[w].end(), v);
}

std::size_t BipartiteGraph::max_right_degree() const {
  std::size_t d = 0;
  for (const auto& a : adj_) d = std::max(d, a.size());
  return d;
}

std::vector<std::size_t> BipartiteGraph::left_degrees() const {
  std::vector<std::size_t> deg(left_, 0);
  for (const auto& a : adj_)
    for (auto v : a) ++deg[v];
  return deg;
}

std::size_t BipartiteGraph::num_edges() const {
  std::size_t e = 0;
  for (const auto& a : adj_) e += a.size();
  return e;
}

BipartiteGraph random_right_regular(std::uint32_t n, std::uint32_t r, std::uint64_t seed) {
  if (r > n) throw InputError("right degree exceeds the number of left vertices");
  Rng rng(seed);
  BipartiteGraph g(n, n);
  for (std::uint32_t w = 0; w < n; ++w)
    for (auto v : rng.sample(n, r)) g.add_edge(v, w);
  return g;
}

std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>> neighbor_sets(
    const BipartiteGraph& g, const std::vector<std::uint32_t>& y) {
  std::vector<std::uint32_t> count(g.left_size(), 0);
  std::vector<std::uint32_t> seen = y;
  std::sort(seen.begin(), seen.end());
  seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
  for (auto w : seen) {
    if (w >= g.right_size()) throw InputError("right vertex out of range");
    for (auto v : g.neighbors(w)) ++count[v];
  }
  std::vector<std::uint32_t> n, nstar;
  for (std::uint32_t v = 0; v < g.left_size(); ++v) {
    if (count[v] >= 1) n.push_back(v);
    if (count[v] == 1) nstar.push_back(v);
  }
  return {n, nstar};
}

namespace {

// |set| >= alpha * size, exactly.
bool expands(std::uint64_t set, Rational alpha, std::uint64_t size) {
  return Rational(static_cast<std::int64_t>(set)) >=
         alpha * Rational(static_cast<std::int64_t>(size));
}

}  // namespace

ExpansionVerdict check_expansion(const BipartiteGraph& g, Rational alpha, Rational gamma,
                                 const ExpansionOptions& options) {
  ExpansionVerdict out;
  const std::uint64_t ref = options.reference_size.value_or(g.right_size());
  const Rational bound = gamma * Rational(static_cast<std::int64_t>(ref));
  std::uint64_t smax =
      bound < 0 ? 0 : static_cast<std::uint64_t>(bound.numerator() / bound.denominator());
  smax = std::min<std::uint64_t>(smax, g.right_size());
  out.max_set_size = smax;
  if (smax == 0) {
    out.vacuous = true;
    return out;
  }

  const std::uint32_t nw = g.right_size();
  std::vector<std::uint32_t> count(g.left_size(), 0);
  std::uint64_t n_size = 0, nstar_size = 0;
  std::vector<std::uint32_t> y;
  auto add = [&](std::uint32_t w) {
    for (auto v : g.neighbors(w)) {
      if (count[v] == 0) ++n_size, ++nstar_size;
      else if (count[v] == 1) --nstar_size;
      ++count[v];
    }
    y.push_back(w);
  };
  auto remove = [&](std::uint32_t w) {
    for (auto v : g.neighbors(w)) {
      --count[v];
      if (count[v] == 0) --n_size, --nstar_size;
      else if (count[v] == 1) ++nstar_size;
    }
    y.pop_back();
  };
  auto check = [&]() {
    ++out.sets_checked;
    if (out.plain && !expands(n_size, alpha, y.size())) {
      out.plain = false;
      out.plain_witness = y;
    }
    if (out.single && !expands(nstar_size, alpha, y.size())) {
      out.single = false;
      out.single_witness = y;
    }
  };

  if (options.mode == ExpansionMode::exhaustive) {
    long double total = 0, c = 1;
    for (std::uint64_t s = 1; s <= smax; ++s) {
      c = c * (nw - s + 1) / s;
      total += c;
    }
    if (total > static_cast<long double>(options.max_subsets))
      throw BudgetExceeded("expansion check needs about " +
                           std::to_string(static_cast<unsigned long long>(total)) +
                           " subsets, budget is " + std::to_string(options.max_subsets));
    auto dfs = [&](auto&& self, std::uint32_t start) -> void {
      for (std::uint32_t w = start; w < nw; ++w) {
        add(w);
        check();
        if (y.size() < smax) self(self, w + 1);
        remove(w);
      }
    };
    dfs(dfs, 0);
  } else {
    out.exhaustive = false;
    Rng rng(options.seed);
    for (std::uint64_t i = 0; i < options.samples; ++i) {
      auto size = static_cast<std::uint32_t>(1 + rng.below(smax));
      for (auto w : rng.sample(nw, size)) add(w);
      check();
      while (!y.empty()) remove(y.back());
    }
  }
  return out;
}

}  // namespace wlr
