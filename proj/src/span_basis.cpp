#include "wlr/span_basis.hpp"

#include "wlr/error.hpp"

namespace wlr {

std::vector<mpq_class> SpanBasis::reduce(std::vector<mpq_class> v) const {
  if (v.size() != dim_) throw InputError("vector has the wrong dimension");
  mpq_class f;
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    if (sgn(v[pivots_[r]]) == 0) continue;
    f = v[pivots_[r]];
    const auto& row = rows_[r];
    for (std::size_t j = 0; j < dim_; ++j)
      if (sgn(row[j]) != 0) v[j] -= f * row[j];
  }
  return v;
}

bool SpanBasis::contains(const std::vector<mpq_class>& v) const {
  for (const auto& x : reduce(v))
    if (sgn(x) != 0) return false;
  return true;
}

bool SpanBasis::insert(const std::vector<mpq_class>& v) {
  auto w = reduce(v);
  std::size_t p = 0;
  while (p < dim_ && sgn(w[p]) == 0) ++p;
  if (p == dim_) return false;
  mpq_class lead = w[p];
  for (std::size_t j = p; j < dim_; ++j) w[j] /= lead;
  // Clear the new pivot column from the existing rows.
  mpq_class f;
  for (auto& row : rows_) {
    if (sgn(row[p]) == 0) continue;
    f = row[p];
    for (std::size_t j = p; j < dim_; ++j)
      if (sgn(w[j]) != 0) row[j] -= f * w[j];
  }
  rows_.push_back(std::move(w));
  pivots_.push_back(p);
  return true;
}

}  // namespace wlr
