#include "wlr/tensor.hpp"

#include "wlr/error.hpp"

namespace wlr {

namespace {

void check_same(const KTensor& a, const KTensor& b) {
  if (a.k != b.k || a.n != b.n) throw InputError("tensor shapes differ");
}

}  // namespace

KTensor::KTensor(int k_, std::uint32_t n_) : k(k_), n(n_) {
  if (k < 2) throw InputError("tensors need k >= 2");
  entries.assign(TupleSpace(k, n).size(), 0);
}

bool KTensor::is_zero() const {
  for (const auto& e : entries)
    if (sgn(e) != 0) return false;
  return true;
}

KTensor tensor_mul(const KTensor& a, const KTensor& b) {
  check_same(a, b);
  KTensor c(a.k, a.n);
  const std::size_t n = a.n, block = n * n;
  const std::size_t blocks = block ? a.size() / block : 0;
  mpq_class t;
  for (std::size_t p = 0; p < blocks; ++p) {
    const std::size_t off = p * block;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t u = 0; u < n; ++u) {
        const mpq_class& x = a[off + i * n + u];
        if (sgn(x) == 0) continue;
        for (std::size_t j = 0; j < n; ++j) {
          const mpq_class& y = b[off + u * n + j];
          if (sgn(y) == 0) continue;
          t = x * y;
          c[off + i * n + j] += t;
        }
      }
  }
  return c;
}

KTensor tensor_add(const KTensor& a, const KTensor& b) {
  check_same(a, b);
  KTensor c = a;
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += b[i];
  return c;
}

KTensor tensor_scale(const KTensor& a, const mpq_class& s) {
  KTensor c = a;
  for (auto& e : c.entries) e *= s;
  return c;
}

KTensor unit_tensor(std::uint32_t n, int k) {
  KTensor u(k, n);
  const std::size_t block = std::size_t(n) * n;
  for (std::size_t off = 0; off < u.size(); off += block)
    for (std::size_t i = 0; i < n; ++i) u[off + i * n + i] = 1;
  return u;
}

KTensor star(const KTensor& a) {
  KTensor c(a.k, a.n);
  const std::size_t n = a.n, block = n * n;
  for (std::size_t off = 0; off < a.size(); off += block)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) c[off + i * n + j] = a[off + j * n + i];
  return c;
}

Matrix matrix_mul(const Matrix& a, const Matrix& b) {
  if (a.dim != b.dim) throw InputError("matrix dimensions differ");
  Matrix c(a.dim);
  for (std::size_t i = 0; i < a.dim; ++i)
    for (std::size_t u = 0; u < a.dim; ++u) {
      if (sgn(a.at(i, u)) == 0) continue;
      for (std::size_t j = 0; j < a.dim; ++j)
        if (sgn(b.at(u, j)) != 0) c.at(i, j) += a.at(i, u) * b.at(u, j);
    }
  return c;
}

Matrix transpose(const Matrix& a) {
  Matrix t(a.dim);
  for (std::size_t i = 0; i < a.dim; ++i)
    for (std::size_t j = 0; j < a.dim; ++j) t.at(j, i) = a.at(i, j);
  return t;
}

Matrix identity_matrix(std::size_t dim) {
  Matrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m.at(i, i) = 1;
  return m;
}

Matrix matrix_embed(const KTensor& a) {
  const std::size_t n = a.n;
  const std::size_t dim = n ? a.size() / n : 0;
  Matrix m(dim);
  // Row (p, i) and column (p, j) share the prefix p = (v_1..v_{k-2}).
  for (std::size_t row = 0; row < dim; ++row) {
    const std::size_t p = row / n;
    for (std::size_t j = 0; j < n; ++j) m.at(row, p * n + j) = a[row * n + j];
  }
  return m;
}

std::vector<KTensor> partition_vectors(const TupleColoring& coloring) {
  const TupleColoring chi = coloring.normalized();
  std::vector<KTensor> out(chi.num_colors, KTensor(chi.k, chi.n));
  for (std::size_t i = 0; i < chi.colors.size(); ++i) out[chi.colors[i]][i] = 1;
  return out;
}

}  // namespace wlr
