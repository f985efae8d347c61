#ifndef TRIPENCIL_TRIDIAGONAL_HPP
#define TRIPENCIL_TRIDIAGONAL_HPP

#include <cstddef>
#include <vector>

#include "tripencil/error.hpp"

namespace tripencil {

/// Real symmetric tridiagonal matrix J of order n+1: diagonal c_0..c_n and
/// off-diagonal d_0..d_{n-1}. Every d_j must be nonzero.
class SymmetricTridiagonal {
 public:
  SymmetricTridiagonal(std::vector<double> diag, std::vector<double> off);

  const std::vector<double>& diag() const noexcept { return c_; }
  const std::vector<double>& off() const noexcept { return d_; }
  double c(std::size_t j) const { return c_[j]; }
  double d(std::size_t j) const { return d_[j]; }
  std::size_t order() const noexcept { return c_.size(); }

  /// Rows and columns first..last (inclusive).
  SymmetricTridiagonal block(std::size_t first, std::size_t last) const;

  friend bool operator==(const SymmetricTridiagonal&, const SymmetricTridiagonal&) = default;

 private:
  std::vector<double> c_;
  std::vector<double> d_;
};

/// Hermitian tridiagonal matrix H: real diagonal a_0..a_n, super-diagonal
/// b_0..b_{n-1}. The sub-diagonal is conj(b) and is never stored, so the
/// Hermitian structure holds by construction.
class HermitianTridiagonal {
 public:
  HermitianTridiagonal(std::vector<double> diag, std::vector<Complex> upper);

  const std::vector<double>& diag() const noexcept { return a_; }
  const std::vector<Complex>& upper() const noexcept { return b_; }
  double a(std::size_t j) const { return a_[j]; }
  Complex b(std::size_t j) const { return b_[j]; }
  std::size_t order() const noexcept { return a_.size(); }

  HermitianTridiagonal block(std::size_t first, std::size_t last) const;

  friend bool operator==(const HermitianTridiagonal&, const HermitianTridiagonal&) = default;

 private:
  std::vector<double> a_;
  std::vector<Complex> b_;
};

/// The linear pencil zJ - H. Both matrices have order n+1.
class Pencil {
 public:
  Pencil(SymmetricTridiagonal J, HermitianTridiagonal H);

  const SymmetricTridiagonal& J() const noexcept { return J_; }
  const HermitianTridiagonal& H() const noexcept { return H_; }

  /// The order index n; matrices are (n+1) x (n+1).
  std::size_t n() const noexcept { return J_.order() - 1; }

  /// Leading sub-pencil on indices 0..last.
  Pencil leading(std::size_t last) const;

  friend bool operator==(const Pencil&, const Pencil&) = default;

 private:
  SymmetricTridiagonal J_;
  HermitianTridiagonal H_;
};

}  // namespace tripencil

#endif
