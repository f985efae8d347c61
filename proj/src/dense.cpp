#include "tripencil/dense.hpp"

#include <algorithm>
#include <cmath>

namespace tripencil {

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_)
    throw PencilError(ErrorKind::IndexOutOfRange, "dense block out of range");
  DenseMatrix out(nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) out(i, j) = (*this)(r0 + i, c0 + j);
  return out;
}

DenseMatrix DenseMatrix::adjoint() const {
  DenseMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

DenseMatrix operator*(const DenseMatrix& l, const DenseMatrix& r) {
  if (l.cols_ != r.rows_) throw PencilError(ErrorKind::ShapeMismatch, "matrix product shapes");
  DenseMatrix out(l.rows_, r.cols_);
  for (std::size_t i = 0; i < l.rows_; ++i)
    for (std::size_t k = 0; k < l.cols_; ++k) {
      const Complex lik = l(i, k);
      if (lik == Complex(0.0)) continue;
      for (std::size_t j = 0; j < r.cols_; ++j) out(i, j) += lik * r(k, j);
    }
  return out;
}

double max_abs(const DenseMatrix& m) {
  double out = 0.0;
  for (Complex v : m.data()) out = std::max(out, std::abs(v));
  return out;
}

double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw PencilError(ErrorKind::ShapeMismatch, "max_abs_diff shapes");
  double out = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i)
    out = std::max(out, std::abs(a.data()[i] - b.data()[i]));
  return out;
}

std::vector<Complex> operator*(const DenseMatrix& m, const std::vector<Complex>& v) {
  if (m.cols() != v.size()) throw PencilError(ErrorKind::ShapeMismatch, "matrix-vector shapes");
  std::vector<Complex> out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i] += m(i, j) * v[j];
  return out;
}

double norm2(const std::vector<Complex>& v) {
  double s = 0.0;
  for (Complex x : v) s += std::norm(x);
  return std::sqrt(s);
}

DenseMatrix dense_J(const SymmetricTridiagonal& J) {
  DenseMatrix m(J.order(), J.order());
  for (std::size_t i = 0; i < J.order(); ++i) m(i, i) = J.c(i);
  for (std::size_t j = 0; j + 1 < J.order(); ++j) m(j, j + 1) = m(j + 1, j) = J.d(j);
  return m;
}

DenseMatrix dense_H(const HermitianTridiagonal& H) {
  DenseMatrix m(H.order(), H.order());
  for (std::size_t i = 0; i < H.order(); ++i) m(i, i) = H.a(i);
  for (std::size_t j = 0; j + 1 < H.order(); ++j) {
    m(j, j + 1) = H.b(j);
    m(j + 1, j) = std::conj(H.b(j));
  }
  return m;
}

DenseMatrix assemble(const Pencil& pencil, Complex z) {
  const auto& J = pencil.J();
  const auto& H = pencil.H();
  DenseMatrix m(J.order(), J.order());
  for (std::size_t i = 0; i < J.order(); ++i) m(i, i) = z * J.c(i) - H.a(i);
  for (std::size_t j = 0; j + 1 < J.order(); ++j) {
    m(j, j + 1) = z * J.d(j) - H.b(j);
    m(j + 1, j) = z * J.d(j) - std::conj(H.b(j));
  }
  return m;
}

}  // namespace tripencil
