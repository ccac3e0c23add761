#pragma once

#include <gmpxx.h>

#include <vector>

namespace wlr {

/// Reduced row echelon basis of a subspace of Q^dim.
class SpanBasis {
 public:
  explicit SpanBasis(std::size_t dim) : dim_(dim) {}

  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return rows_.size(); }
  const std::vector<std::vector<mpq_class>>& rows() const { return rows_; }

  /// v minus its projection along the pivots; zero iff v lies in the span.
  std::vector<mpq_class> reduce(std::vector<mpq_class> v) const;
  bool contains(const std::vector<mpq_class>& v) const;
  /// Adds v if it is independent; returns whether the rank grew.
  bool insert(const std::vector<mpq_class>& v);

 private:
  std::size_t dim_;
  std::vector<std::vector<mpq_class>> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace wlr
