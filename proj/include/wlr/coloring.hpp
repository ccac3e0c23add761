#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "wlr/structure.hpp"

namespace wlr {

using Color = std::uint32_t;

/// Mixed-radix indexing of V^k, row-major over positions (position 0 is most significant).
class TupleSpace {
 public:
  TupleSpace() = default;
  TupleSpace(int k, std::uint32_t n);

  int k() const { return k_; }
  std::uint32_t n() const { return n_; }
  std::size_t size() const { return size_; }
  /// n^(k-1-i): the index offset of incrementing position i.
  std::size_t stride(int i) const { return strides_[i]; }

  std::size_t index(std::span<const Element> tuple) const;
  void decode(std::size_t index, std::span<Element> out) const;
  Tuple tuple(std::size_t index) const;
  Element entry(std::size_t index, int i) const {
    return static_cast<Element>((index / strides_[i]) % n_);
  }
  /// Index of the tuple obtained by replacing entry i with w.
  std::size_t substitute(std::size_t index, int i, Element w) const {
    return index + (static_cast<std::size_t>(w) - entry(index, i)) * strides_[i];
  }

 private:
  int k_ = 0;
  std::uint32_t n_ = 0;
  std::size_t size_ = 0;
  std::vector<std::size_t> strides_;
};

/// A total map V^k -> color ids. num_colors is the number of distinct ids in use; ids are
/// dense except for colorings from joint runs, which share one dictionary across structures.
struct TupleColoring {
  int k = 0;
  std::uint32_t n = 0;
  std::vector<Color> colors;
  std::uint32_t num_colors = 0;

  TupleSpace space() const { return TupleSpace(k, n); }
  Color operator[](std::size_t index) const { return colors[index]; }

  /// Renumbers arbitrary color values densely in increasing order of the raw values.
  static TupleColoring from_raw(int k, std::uint32_t n, std::span<const std::uint64_t> raw);

  /// Same partition with ids renumbered densely in increasing order.
  TupleColoring normalized() const;

  bool operator==(const TupleColoring&) const = default;
};

/// chi1 refines chi2: equal chi1-colors imply equal chi2-colors. Throws on shape mismatch.
bool coloring_refines(const TupleColoring& chi1, const TupleColoring& chi2);
bool colorings_equivalent(const TupleColoring& chi1, const TupleColoring& chi2);
bool strictly_refines(const TupleColoring& chi1, const TupleColoring& chi2);

/// Color -> number of tuples with that color.
std::map<Color, std::size_t> color_histogram(const TupleColoring& chi);
/// Sorted class sizes (independent of color names).
std::vector<std::size_t> class_size_profile(const TupleColoring& chi);

/// Every pair of equally colored tuples has the same entry-equality pattern.
bool is_equality_compatible(const TupleColoring& chi);
/// Implication (v ~ w) => (v o pi ~ w o pi) for every function pi: [k] -> [k].
bool is_shufflable(const TupleColoring& chi);

}  // namespace wlr
