#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

#include "wlr/coloring.hpp"

namespace wlr {

/// A map V^k -> Q, stored densely in row-major tuple order (see TupleSpace).
struct KTensor {
  int k = 0;
  std::uint32_t n = 0;
  std::vector<mpq_class> entries;

  KTensor() = default;
  /// Zero tensor. Throws InputError for k < 2.
  KTensor(int k, std::uint32_t n);

  std::size_t size() const { return entries.size(); }
  mpq_class& operator[](std::size_t i) { return entries[i]; }
  const mpq_class& operator[](std::size_t i) const { return entries[i]; }
  bool is_zero() const;

  bool operator==(const KTensor& o) const {
    return k == o.k && n == o.n && entries == o.entries;
  }
};

/// (a b)(v_1..v_k) = sum_u a(v_1..v_{k-1}, u) b(v_1..v_{k-2}, u, v_k).
KTensor tensor_mul(const KTensor& a, const KTensor& b);
KTensor tensor_add(const KTensor& a, const KTensor& b);
KTensor tensor_scale(const KTensor& a, const mpq_class& c);
/// 1 where v_{k-1} = v_k.
KTensor unit_tensor(std::uint32_t n, int k);
/// Swaps the last two coordinates (conjugation is the identity over Q).
KTensor star(const KTensor& a);

/// Dense square matrix over Q.
struct Matrix {
  std::size_t dim = 0;
  std::vector<mpq_class> entries;  // row-major

  explicit Matrix(std::size_t d = 0) : dim(d), entries(d * d) {}
  mpq_class& at(std::size_t r, std::size_t c) { return entries[r * dim + c]; }
  const mpq_class& at(std::size_t r, std::size_t c) const { return entries[r * dim + c]; }
  bool operator==(const Matrix&) const = default;
};

Matrix matrix_mul(const Matrix& a, const Matrix& b);
Matrix transpose(const Matrix& a);
Matrix identity_matrix(std::size_t dim);

/// The n^(k-1) x n^(k-1) matrix with M((v_1..v_{k-1}),(w_1..w_{k-1})) = a(v_1..v_{k-1},w_{k-1})
/// when v_i = w_i for all i <= k-2, and 0 otherwise.
Matrix matrix_embed(const KTensor& a);

/// One 0/1 indicator tensor per color class, in color order.
std::vector<KTensor> partition_vectors(const TupleColoring& chi);

}  // namespace wlr
