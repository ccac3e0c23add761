#pragma once

#include <atomic>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "wlr/coloring.hpp"
#include "wlr/structure.hpp"

namespace wlr {

/// Extra per-structure data for the refinement step.
///
/// For k = 1 the plain substitution multiset ignores the relations entirely, so the engine
/// runs classic color refinement instead: the multiset ranges over (color of w, atomic type
/// of the pair (v, w)). For k >= 2 the context is empty.
struct RefinementContext {
  std::vector<std::uint32_t> pair_types;  // n * n, row-major, only for k == 1
};

/// Throws InputError unless k >= arity (or k == 1 and arity <= 2, color refinement mode).
void check_dimension(const RelationalStructure& structure, int k);

/// Atomic-type coloring; ids follow the sorted canonical type codes.
TupleColoring initial_coloring(const RelationalStructure& structure, int k);

/// Initial colorings of several structures with one shared color dictionary.
std::vector<TupleColoring> joint_initial_coloring(
    std::span<const RelationalStructure* const> structures, int k);

/// Pair-type contexts for k = 1, numbered jointly across the given structures.
std::vector<RefinementContext> joint_contexts(
    std::span<const RelationalStructure* const> structures, int k);

/// One k-WL round on a bare coloring (literal substitution-multiset definition).
TupleColoring refine_step(const TupleColoring& chi);
TupleColoring refine_step(const TupleColoring& chi, const RefinementContext& context);

/// One k-WL round on several colorings with signatures interned in one sorted dictionary.
std::vector<TupleColoring> joint_refine_step(std::span<const TupleColoring* const> colorings,
                                             std::span<const RefinementContext* const> contexts);

/// refine_step(chi) induces the same partition as chi.
bool is_k_stable(const TupleColoring& chi);

struct RefinementTrace {
  int k = 0;
  std::uint32_t n = 0;
  /// chi_0, chi_1, ..., up to chi_{r_infinity} (or up to the cap). Empty if not kept.
  std::vector<TupleColoring> rounds;
  /// Number of color classes of chi_0, chi_1, ...
  std::vector<std::size_t> class_counts;
  /// Least r with chi_r equivalent to chi_{r+1}; unset when the round cap was hit first.
  std::optional<std::size_t> r_infinity;
  bool stabilized() const { return r_infinity.has_value(); }
  const TupleColoring& final_coloring() const { return rounds.back(); }
};

struct StabilizeOptions {
  /// Defaults to n^k, which always suffices.
  std::optional<std::size_t> max_rounds;
  bool keep_colorings = true;
};

RefinementTrace stabilize(const RelationalStructure& structure, int k,
                          const StabilizeOptions& options = {});

struct DistinguishResult {
  /// Least round after which the color histograms differ.
  std::optional<std::size_t> round;
  /// True when the answer is definitive (distinguished, or both runs stable and equal).
  bool complete = false;
  RefinementTrace trace_a;
  RefinementTrace trace_b;
};

/// Runs k-WL on both structures with a shared color dictionary and compares histograms.
DistinguishResult joint_distinguish(const RelationalStructure& a, const RelationalStructure& b,
                                    int k, const StabilizeOptions& options = {});

/// n^k - 1.
std::uint64_t trivial_round_bound(std::uint64_t n, int k);
/// Least c with 2^c >= n^k, i.e. the ceiling of k * log2(n).
std::uint64_t ceil_k_log2_n(std::uint64_t n, int k);
/// 2 n^(k-1) (ceil(k log2 n) + 1).
std::uint64_t upper_round_bound(std::uint64_t n, int k);

/// Process-wide tally of the round-bound checks performed by every WL run.
struct BoundAudit {
  std::size_t runs = 0;
  std::size_t checked_upper = 0;
  std::size_t violations = 0;
  std::size_t max_r_infinity = 0;
};
BoundAudit bound_audit();
void reset_bound_audit();

}  // namespace wlr
