#ifndef TRIPENCIL_RESOLVENT_HPP
#define TRIPENCIL_RESOLVENT_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "tripencil/dense.hpp"
#include "tripencil/pencil.hpp"

namespace tripencil {

namespace tol {
inline constexpr double difference = 1e-12;  // |m_i - m_j| relative guard
inline constexpr double real_diagonal = 1e-8;
}  // namespace tol

/// m(w, j) = Q_j(w) / P_j(w) for j = 0..n+1, with m(w, 0) = 0. m(w, j+1) is
/// the (0,0) entry of (wJ_[0,j] - H_[0,j])^{-1}.
///
/// At non-real w the values converge geometrically in j, so subtracting
/// neighbours loses digits. m_table therefore also records the consecutive
/// differences m(w, j+1) - m(w, j) = prod_{i<j} w_i / (P_j P_{j+1}) (the
/// Liouville-Ostrogradsky form), which are used whenever present.
struct MFunctionTable {
  Complex omega;
  std::vector<Complex> values;
  std::vector<Complex> differences{};  // j = 0..n; empty when only values are known

  Complex operator[](std::size_t j) const { return values[j]; }
  friend bool operator==(const MFunctionTable&, const MFunctionTable&) = default;
};

MFunctionTable m_table(const Pencil& pencil, Complex omega);
Complex m_function(const Pencil& pencil, std::size_t j, Complex omega);

/// Closed-form inverse of (wJ - H):
///   R_ij = p_i^R(w) [m(w, n+1) - m(w, max(i, j))] p_j^L(w)
/// with p^R, p^L the recurrence components normalized to p_0 = 1.
DenseMatrix resolvent_matrix(const Pencil& pencil, Complex omega);

/// R = upper * diag(differences) * lower, where
///   upper(i, j) = p_i^R for j >= i,  lower(i, j) = p_j^L for i >= j,
///   differences[j] = m(w, j+1) - m(w, j),  j = 0..n.
/// At real w, lower is the conjugate transpose of upper.
struct ResolventFactors {
  DenseMatrix upper;
  std::vector<Complex> differences;
  DenseMatrix lower;

  DenseMatrix product() const;
};

ResolventFactors ldu_factors(const Pencil& pencil, Complex omega);

/// Inverse of the trailing block (indices k+1..n) of the resolvent; an
/// (n-k) x (n-k) tridiagonal matrix written in m-function differences.
DenseMatrix trailing_inverse(const Pencil& pencil, std::size_t k, Complex omega);

/// Entries of H recovered from m-functions at a resolvent point.
struct MReconstruction {
  std::size_t k = 0;
  Complex omega;
  std::vector<Complex> b;  // b_{k+1}..b_{n-1}
  std::vector<double> a;   // a_{k+1}..a_n

  friend bool operator==(const MReconstruction&, const MReconstruction&) = default;
};

/// Rebuilds b_{k+1}..b_{n-1} and a_{k+1}..a_n from the m-function table at
/// w, the right/left recurrence components p_0..p_n at w, and b_k. The Schur
/// complement of the leading block contributes only to a_{k+1}.
MReconstruction reconstruct_from_m(const SymmetricTridiagonal& J, std::size_t k,
                                   const MFunctionTable& table,
                                   std::span<const Complex> right,
                                   std::span<const Complex> left, Complex b_k);

/// Convenience: forward-computes the table and components from `truth`.
MReconstruction reconstruct_from_m(const Pencil& truth, std::size_t k, Complex omega);

}  // namespace tripencil

#endif
