#ifndef TRIPENCIL_GIEP_HPP
#define TRIPENCIL_GIEP_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "tripencil/pencil.hpp"

namespace tripencil {

namespace tol {
inline constexpr double delta = 1e-12;       // |Delta_j| vs product of component magnitudes + 1
inline constexpr double hermitian = 1e-8;    // |v - conj(u)| relative
inline constexpr double vanishing = 1e-13;   // |p_i| relative to the largest tail entry
inline constexpr double wall_ratio = 1e-8;
}  // namespace tol

/// Givens of the inverse problem: J in full, the leading block of H on
/// indices 0..k, two real eigenvalues and the tails p_k..p_n (at lambda) and
/// s_k..s_n (at mu) of the corresponding right eigenvectors.
struct GiepInstance {
  SymmetricTridiagonal J;
  std::size_t k = 1;
  std::vector<double> head_a;    // a_0..a_k
  std::vector<Complex> head_b;   // b_0..b_{k-1}
  double lambda = 0.0;
  double mu = 0.0;
  std::vector<Complex> tail_p;   // p_k..p_n at lambda
  std::vector<Complex> tail_s;   // s_k..s_n at mu
  std::optional<std::vector<Complex>> poles;  // alpha_k..alpha_{n-1}, diagnostics only

  std::size_t n() const noexcept { return J.order() - 1; }

  /// Throws InvalidArgument/ShapeMismatch when an invariant fails.
  void validate() const;

  /// The known leading sub-pencil on indices 0..k.
  Pencil head_pencil() const;

  friend bool operator==(const GiepInstance&, const GiepInstance&) = default;
};

/// Determinant of the 2x2 system for (b_j, conj b_j):
///   p_{j+1}^L p_j^R |s_j^L s_j^R; s_{j+1}^L s_{j+1}^R| - s_{j+1}^L s_j^R |p_j^L p_j^R; p_{j+1}^L p_{j+1}^R|.
Complex delta_j(Complex pL_j, Complex pL_j1, Complex pR_j, Complex pR_j1,
                Complex sL_j, Complex sL_j1, Complex sR_j, Complex sR_j1);

/// One index of the off-diagonal reconstruction. `b` and `conj_unknown` come
/// from the linear solve; `closed_form` and `closed_form_conj` are the
/// explicit Cramer-type expressions, kept as a cross-check.
struct OffDiagonalSolve {
  Complex b;
  Complex conj_unknown;
  Complex closed_form;
  Complex closed_form_conj;
  Complex delta;
};

/// Solves
///   p_j^L p_{j+1}^R u - p_{j+1}^L p_j^R v = lambda d_j (p_j^L p_{j+1}^R - p_{j+1}^L p_j^R)
///   s_j^L s_{j+1}^R u - s_{j+1}^L s_j^R v = mu d_j (s_j^L s_{j+1}^R - s_{j+1}^L s_j^R)
/// for (u, v) = (b_j, conj b_j), with left values taken as conjugates of the
/// right ones (lambda and mu are real).
OffDiagonalSolve solve_offdiagonal(std::size_t j, double d_j, double lambda, double mu,
                                   Complex p_j, Complex p_j1, Complex s_j, Complex s_j1);

/// b_k..b_{n-1}.
std::vector<Complex> reconstruct_b(const GiepInstance& instance);

/// a_{k+1}..a_n from the eigen-equation rows at lambda; b_full is b_0..b_{n-1}.
std::vector<double> reconstruct_a(const GiepInstance& instance, std::span<const Complex> b_full);

/// p_0..p_{k-1} at z (lambda or mu) from b_k and p_{k+1}(z); needs z outside
/// the spectrum of the leading block on 0..k.
std::vector<Complex> head_components(const GiepInstance& instance, Complex b_k, Complex p_k1,
                                     double z);

/// b_j = x_j + i y_j written through the two component determinants, plus
/// the test of whether lambda/mu equals the ratio that forces x_j = 0.
struct ImaginaryClassification {
  std::size_t j = 0;
  double x = 0.0;
  double y = 0.0;
  double ratio = 0.0;
  bool wall_ratio_ok = false;
};

ImaginaryClassification classify_imaginary(std::size_t j, Complex p_j, Complex p_j1,
                                           Complex s_j, Complex s_j1, double d_j,
                                           double lambda, double mu);

/// Residuals |lhs - rhs| / (1 + |rhs|) of the two bilinear identities that
/// split s^L J p across the cut between k and k+1:
///   trailing: (lambda-mu) p^L J_[k+1,n] s = (b_k - lambda d_k) p_k^L s_{k+1} - (conj b_k - mu d_k) p_{k+1}^L s_k
///   leading:  (lambda-mu) s^L J_[0,k] p   = (b_k - lambda d_k) s_k^L p_{k+1} - (conj b_k - mu d_k) s_{k+1}^L p_k
/// Both eigenvectors are normalized to unit length first.
struct TraceResiduals {
  double trailing = 0.0;
  double leading = 0.0;
};

TraceResiduals trace_identity_residuals(const Pencil& pencil, std::size_t k, double lambda,
                                        double mu);

/// (s^R)^* J_[0,k] s^R written through s_k, s_{k+1} and their mu-derivatives:
///   (b_k - mu d_k) s_k^L (s_{k+1})' - (conj b_k - mu d_k) s_{k+1}^L (s_k)' - d_k s_k^L s_{k+1}
/// with s_0 = 1. Positive whenever J_[0,k] is positive definite.
struct PositivityWitness {
  double value = 0.0;
  double imaginary = 0.0;  // should vanish; it is a Hermitian form
};

PositivityWitness positivity_witness(const Pencil& pencil, std::size_t k, double mu);

struct ReconstructionResult {
  HermitianTridiagonal H;
  std::size_t k = 1;
  double lambda = 0.0;
  double mu = 0.0;
  std::vector<Complex> head_p{};        // p_0..p_{k-1} at lambda
  std::vector<Complex> head_s{};        // s_0..s_{k-1} at mu
  std::vector<Complex> eigvec_lambda{}; // head_p ++ tail_p
  std::vector<Complex> eigvec_mu{};
  std::vector<Complex> deltas{};        // Delta_k..Delta_{n-1}
  double residual_lambda = 0.0;       // |(lambda J - H) p| / |p|
  double residual_mu = 0.0;
  std::vector<ImaginaryClassification> imaginary_flags{};
};

/// Full reconstruction of H and of the eigenvector heads.
ReconstructionResult solve(const GiepInstance& instance);

/// Indices j whose supplied pole alpha_j is real; those will fail with
/// SingularDelta. Empty when no poles were supplied.
std::vector<std::size_t> real_pole_warnings(const GiepInstance& instance);

/// |(z J - H) v| / |v|.
double eigen_residual(const Pencil& pencil, double z, std::span<const Complex> v);

}  // namespace tripencil

#endif
