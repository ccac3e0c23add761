#include "wlr/refinement.hpp"

#include <algorithm>
#include <bit>

#include "wlr/atomic_type.hpp"
#include "wlr/error.hpp"

namespace wlr {

namespace {

std::atomic<std::size_t> g_runs{0};
std::atomic<std::size_t> g_checked_upper{0};
std::atomic<std::size_t> g_violations{0};
std::atomic<std::size_t> g_max_r{0};

using Row = std::span<const std::uint32_t>;

// Dense ids in lexicographic order of the rows; equal rows share an id.
std::uint32_t intern(const std::vector<Row>& rows, std::vector<std::uint32_t>& ids) {
  std::vector<std::uint32_t> order(rows.size());
  for (std::uint32_t i = 0; i < order.size(); ++i) order[i] = i;
  auto less = [&](std::uint32_t a, std::uint32_t b) {
    return std::lexicographical_compare(rows[a].begin(), rows[a].end(), rows[b].begin(),
                                        rows[b].end());
  };
  std::sort(order.begin(), order.end(), less);
  ids.assign(rows.size(), 0);
  std::uint32_t next = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (i > 0 && less(order[i - 1], order[i])) ++next;
    ids[order[i]] = next;
  }
  return rows.empty() ? 0 : next + 1;
}

void check_same_shape(std::span<const TupleColoring* const> colorings) {
  for (const auto* c : colorings)
    if (c->k != colorings[0]->k)
      throw InputError("joint refinement needs colorings of equal dimension");
}

void note_run(std::size_t r_infinity, std::uint64_t n, int k) {
  ++g_runs;
  std::size_t prev = g_max_r.load();
  while (prev < r_infinity && !g_max_r.compare_exchange_weak(prev, r_infinity)) {
  }
  bool bad = n > 0 && r_infinity > trivial_round_bound(n, k);
  if (k >= 2) {
    ++g_checked_upper;
    if (n > 0 && r_infinity > upper_round_bound(n, k)) bad = true;
  }
  if (bad) {
    ++g_violations;
    throw BoundViolation("stabilization after " + std::to_string(r_infinity) +
                         " rounds exceeds the round bound for n=" + std::to_string(n) +
                         ", k=" + std::to_string(k));
  }
}

std::uint64_t checked_pow(std::uint64_t n, int k) {
  std::uint64_t r = 1;
  for (int i = 0; i < k; ++i) {
    if (n != 0 && r > UINT64_MAX / n) throw InputError("n^k overflows 64 bits");
    r *= n;
  }
  return r;
}

}  // namespace

void check_dimension(const RelationalStructure& structure, int k) {
  if (k < 1) throw InputError("k must be at least 1");
  int a = structure.vocabulary().max_arity();
  if (k == 1 ? a > 2 : a > k)
    throw InputError("k=" + std::to_string(k) + " is below the vocabulary arity " +
                     std::to_string(a));
}

std::vector<TupleColoring> joint_initial_coloring(
    std::span<const RelationalStructure* const> structures, int k) {
  for (const auto* s : structures) {
    check_dimension(*s, k);
    if (!(s->vocabulary() == structures[0]->vocabulary()))
      throw InputError("structures must share a vocabulary");
  }
  std::vector<std::vector<std::uint32_t>> codes;
  std::vector<std::size_t> offsets;
  std::vector<TupleSpace> spaces;
  Tuple t(k);
  for (const auto* s : structures) {
    TypeEncoder enc(*s, k);
    TupleSpace sp(k, s->universe_size());
    offsets.push_back(codes.size());
    for (std::size_t i = 0; i < sp.size(); ++i) {
      sp.decode(i, t);
      codes.emplace_back();
      enc.encode(t, codes.back());
    }
    spaces.push_back(sp);
  }
  std::vector<Row> rows(codes.begin(), codes.end());
  std::vector<std::uint32_t> ids;
  std::uint32_t total = intern(rows, ids);
  std::vector<TupleColoring> out;
  for (std::size_t s = 0; s < structures.size(); ++s) {
    TupleColoring c;
    c.k = k;
    c.n = structures[s]->universe_size();
    c.colors.assign(ids.begin() + offsets[s], ids.begin() + offsets[s] + spaces[s].size());
    c.num_colors = total;
    out.push_back(std::move(c));
  }
  // num_colors counts only the ids a structure actually uses.
  for (auto& c : out) {
    std::vector<bool> used(total);
    for (auto x : c.colors) used[x] = true;
    c.num_colors = static_cast<std::uint32_t>(std::count(used.begin(), used.end(), true));
  }
  return out;
}

TupleColoring initial_coloring(const RelationalStructure& structure, int k) {
  const RelationalStructure* p = &structure;
  return std::move(joint_initial_coloring(std::span(&p, 1), k).front());
}

std::vector<RefinementContext> joint_contexts(
    std::span<const RelationalStructure* const> structures, int k) {
  std::vector<RefinementContext> out(structures.size());
  if (k != 1) return out;
  std::vector<std::vector<std::uint32_t>> codes;
  for (const auto* s : structures) {
    TypeEncoder enc(*s, 2);
    std::uint32_t n = s->universe_size();
    for (Element v = 0; v < n; ++v)
      for (Element w = 0; w < n; ++w) {
        codes.emplace_back();
        Element pair[2] = {v, w};
        enc.encode(pair, codes.back());
      }
  }
  std::vector<Row> rows(codes.begin(), codes.end());
  std::vector<std::uint32_t> ids;
  intern(rows, ids);
  std::size_t at = 0;
  for (std::size_t s = 0; s < structures.size(); ++s) {
    std::size_t nn = std::size_t(structures[s]->universe_size()) * structures[s]->universe_size();
    out[s].pair_types.assign(ids.begin() + at, ids.begin() + at + nn);
    at += nn;
  }
  return out;
}

std::vector<TupleColoring> joint_refine_step(std::span<const TupleColoring* const> colorings,
                                             std::span<const RefinementContext* const> contexts) {
  if (colorings.empty()) return {};
  check_same_shape(colorings);
  const int k = colorings[0]->k;
  bool pair_mode = false;
  for (const auto* ctx : contexts)
    if (ctx && !ctx->pair_types.empty()) pair_mode = true;
  if (pair_mode && k != 1) throw InputError("pair-type context is only used for k = 1");
  const std::size_t width = pair_mode ? 2 : static_cast<std::size_t>(k);

  std::vector<std::vector<std::uint32_t>> buffers(colorings.size());
  std::vector<std::size_t> row_len(colorings.size());
  std::vector<Row> rows;
  for (std::size_t s = 0; s < colorings.size(); ++s) {
    const auto& chi = *colorings[s];
    const TupleSpace sp = chi.space();
    const std::uint32_t n = chi.n;
    const std::size_t len = 1 + n * width;
    row_len[s] = len;
    auto& buf = buffers[s];
    buf.assign(sp.size() * len, 0);
    std::vector<std::uint32_t> recs(n * width);
    std::vector<std::uint32_t> order(n);
    const std::uint32_t* pair =
        pair_mode && s < contexts.size() && contexts[s] ? contexts[s]->pair_types.data() : nullptr;
    if (pair_mode && !pair) throw InputError("missing pair-type context");
    for (std::size_t idx = 0; idx < sp.size(); ++idx) {
      for (Element w = 0; w < n; ++w) {
        std::uint32_t* r = &recs[w * width];
        if (pair_mode) {
          r[0] = chi[w];
          r[1] = pair[idx * n + w];
        } else {
          for (int i = 0; i < k; ++i) r[i] = chi[sp.substitute(idx, i, w)];
        }
      }
      for (std::uint32_t w = 0; w < n; ++w) order[w] = w;
      std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        return std::lexicographical_compare(&recs[a * width], &recs[a * width] + width,
                                            &recs[b * width], &recs[b * width] + width);
      });
      std::uint32_t* out = &buf[idx * len];
      out[0] = chi[idx];
      for (std::uint32_t j = 0; j < n; ++j)
        std::copy_n(&recs[order[j] * width], width, out + 1 + j * width);
    }
  }
  for (std::size_t s = 0; s < colorings.size(); ++s)
    for (std::size_t idx = 0; idx < colorings[s]->colors.size(); ++idx)
      rows.emplace_back(buffers[s].data() + idx * row_len[s], row_len[s]);

  std::vector<std::uint32_t> ids;
  intern(rows, ids);
  std::vector<TupleColoring> out;
  std::size_t at = 0;
  for (const auto* c : colorings) {
    TupleColoring next;
    next.k = k;
    next.n = c->n;
    next.colors.assign(ids.begin() + at, ids.begin() + at + c->colors.size());
    at += c->colors.size();
    std::vector<std::uint32_t> sorted(next.colors);
    std::sort(sorted.begin(), sorted.end());
    next.num_colors =
        static_cast<std::uint32_t>(std::unique(sorted.begin(), sorted.end()) - sorted.begin());
    out.push_back(std::move(next));
  }
  return out;
}

TupleColoring refine_step(const TupleColoring& chi) {
  const TupleColoring* p = &chi;
  return std::move(joint_refine_step(std::span(&p, 1), {}).front());
}

TupleColoring refine_step(const TupleColoring& chi, const RefinementContext& context) {
  const TupleColoring* p = &chi;
  const RefinementContext* c = &context;
  return std::move(joint_refine_step(std::span(&p, 1), std::span(&c, 1)).front());
}

bool is_k_stable(const TupleColoring& chi) {
  return refine_step(chi).num_colors == chi.num_colors;
}

namespace {

std::size_t default_cap(std::uint32_t n, int k) {
  std::uint64_t p = checked_pow(n, k);
  return static_cast<std::size_t>(std::max<std::uint64_t>(p, 1));
}

}  // namespace

RefinementTrace stabilize(const RelationalStructure& structure, int k,
                          const StabilizeOptions& options) {
  const RelationalStructure* p = &structure;
  auto contexts = joint_contexts(std::span(&p, 1), k);
  RefinementTrace trace;
  trace.k = k;
  trace.n = structure.universe_size();
  const std::size_t cap = options.max_rounds.value_or(default_cap(trace.n, k));
  TupleColoring chi = initial_coloring(structure, k);
  trace.class_counts.push_back(chi.num_colors);
  trace.rounds.push_back(chi);
  for (std::size_t r = 0;; ++r) {
    TupleColoring next = refine_step(chi, contexts[0]);
    if (next.num_colors == chi.num_colors) {
      trace.r_infinity = r;
      break;
    }
    if (r + 1 > cap) break;  // chi_{r+1} would exceed the cap
    chi = std::move(next);
    trace.class_counts.push_back(chi.num_colors);
    if (options.keep_colorings)
      trace.rounds.push_back(chi);
    else
      trace.rounds.back() = chi;
  }
  if (trace.r_infinity) note_run(*trace.r_infinity, trace.n, k);
  return trace;
}

DistinguishResult joint_distinguish(const RelationalStructure& a, const RelationalStructure& b,
                                    int k, const StabilizeOptions& options) {
  const RelationalStructure* ps[2] = {&a, &b};
  auto init = joint_initial_coloring(ps, k);
  auto contexts = joint_contexts(ps, k);
  const RefinementContext* cps[2] = {&contexts[0], &contexts[1]};
  const std::size_t cap =
      options.max_rounds.value_or(std::max(default_cap(a.universe_size(), k),
                                           default_cap(b.universe_size(), k)));

  DistinguishResult res;
  RefinementTrace* tr[2] = {&res.trace_a, &res.trace_b};
  for (int s = 0; s < 2; ++s) {
    tr[s]->k = k;
    tr[s]->n = ps[s]->universe_size();
    tr[s]->class_counts.push_back(init[s].num_colors);
    tr[s]->rounds.push_back(init[s]);
  }
  std::vector<TupleColoring> cur = std::move(init);
  for (std::size_t r = 0;; ++r) {
    if (color_histogram(cur[0]) != color_histogram(cur[1])) {
      res.round = r;
      res.complete = true;
      break;
    }
    if (r >= cap) break;
    const TupleColoring* cp[2] = {&cur[0], &cur[1]};
    auto next = joint_refine_step(cp, cps);
    for (int s = 0; s < 2; ++s) {
      if (!tr[s]->r_infinity && next[s].num_colors == cur[s].num_colors) tr[s]->r_infinity = r;
      tr[s]->class_counts.push_back(next[s].num_colors);
      if (options.keep_colorings)
        tr[s]->rounds.push_back(next[s]);
      else
        tr[s]->rounds.back() = next[s];
    }
    bool both_stable = tr[0]->r_infinity && tr[1]->r_infinity;
    cur = std::move(next);
    if (both_stable) {
      // Both partitions are stable, so later histograms are determined by this one.
      if (color_histogram(cur[0]) != color_histogram(cur[1])) res.round = r + 1;
      res.complete = true;
      break;
    }
  }
  for (int s = 0; s < 2; ++s)
    if (tr[s]->r_infinity) note_run(*tr[s]->r_infinity, tr[s]->n, k);
  return res;
}

std::uint64_t trivial_round_bound(std::uint64_t n, int k) {
  std::uint64_t p = checked_pow(n, k);
  return p == 0 ? 0 : p - 1;
}

std::uint64_t ceil_k_log2_n(std::uint64_t n, int k) {
  std::uint64_t p = checked_pow(n, k);
  return p <= 1 ? 0 : std::bit_width(p - 1);
}

std::uint64_t upper_round_bound(std::uint64_t n, int k) {
  return 2 * checked_pow(n, k - 1) * (ceil_k_log2_n(n, k) + 1);
}

BoundAudit bound_audit() {
  return {g_runs.load(), g_checked_upper.load(), g_violations.load(), g_max_r.load()};
}

void reset_bound_audit() {
  g_runs = 0;
  g_checked_upper = 0;
  g_violations = 0;
  g_max_r = 0;
}

}  // namespace wlr
