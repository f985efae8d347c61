#ifndef TRIPENCIL_DENSE_HPP
#define TRIPENCIL_DENSE_HPP

#include <cstddef>
#include <vector>

#include "tripencil/error.hpp"
#include "tripencil/tridiagonal.hpp"

namespace tripencil {

// Small row-major complex matrix. Orders here are desk scale (<= 64), so no
// attempt is made at blocking or vectorization.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static DenseMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  const std::vector<Complex>& data() const noexcept { return data_; }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  Complex operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  DenseMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  DenseMatrix adjoint() const;

  friend DenseMatrix operator*(const DenseMatrix& l, const DenseMatrix& r);
  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

double max_abs(const DenseMatrix& m);
double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b);

std::vector<Complex> operator*(const DenseMatrix& m, const std::vector<Complex>& v);
double norm2(const std::vector<Complex>& v);

/// zJ - H as a dense matrix.
DenseMatrix assemble(const Pencil& pencil, Complex z);
DenseMatrix dense_J(const SymmetricTridiagonal& J);
DenseMatrix dense_H(const HermitianTridiagonal& H);

}  // namespace tripencil

#endif
