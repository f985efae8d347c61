#ifndef TRIPENCIL_ORACLE_HPP
#define TRIPENCIL_ORACLE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tripencil/dense.hpp"
#include "tripencil/giep.hpp"
#include "tripencil/resolvent.hpp"

// Ground truth for everything else: dense linear algebra (Eigen-backed, so
// it shares no code path with the recurrences) and the instance generator.
namespace tripencil::oracle {

/// Roots of P_{n+1}, i.e. the pencil spectrum, from the companion matrix of
/// the monic characteristic polynomial plus one Newton step. Sorted by real
/// part. Throws DegreeDrop when deg P_{n+1} < n+1.
std::vector<Complex> pencil_eigenvalues(const Pencil& pencil);

/// Eigenpairs of J^{-1}H by a general dense eigensolver; a second,
/// coefficient-free route to the spectrum. Requires J invertible.
struct DenseEigenpairs {
  std::vector<Complex> values;               // sorted by real part
  std::vector<std::vector<Complex>> vectors; // unit length, matching order
};
DenseEigenpairs dense_eigenpairs(const Pencil& pencil);

/// (wJ - H)^{-1} by partial-pivoting LU. NearSingular when the reciprocal
/// condition estimate drops below 1e-13.
DenseMatrix dense_resolvent(const Pencil& pencil, Complex omega);

/// det(wJ - H) by LU.
Complex dense_determinant(const Pencil& pencil, Complex omega);

/// det of an arbitrary square block (rows/cols first..last) of wJ - H.
Complex dense_minor(const Pencil& pencil, Complex omega, std::size_t first, std::size_t last);

bool is_positive_definite(const SymmetricTridiagonal& J);

/// v^* J_[first,last] v, evaluated densely.
Complex dense_quadratic_form(const SymmetricTridiagonal& J, std::size_t first, std::size_t last,
                             const std::vector<Complex>& v);

enum class EigenvaluePick { Extreme, RandomPair };

struct GeneratorConfig {
  std::size_t n = 4;
  std::size_t k = 1;
  std::uint64_t seed = 0;
  double min_im_ratio = 0.1;
  bool ensure_pd_J = true;
  EigenvaluePick pick = EigenvaluePick::Extreme;
  bool imaginary_tail = false;  // b_j = i y_j d_j for j >= k (Wall-type couplings)
  int max_attempts = 100;

  void validate() const;  // InvalidArgument on any violated invariant
};

struct GeneratedInstance {
  Pencil truth;
  GiepInstance instance;
  int attempts = 1;
};

/// Deterministic for a fixed config. Every emitted instance passes the
/// solver's preconditions; GenerationFailed after max_attempts redraws.
GeneratedInstance generate_instance(const GeneratorConfig& config);

/// Random pencil with the generator's distributions (no GIEP checks).
Pencil random_pencil(std::size_t n, std::uint64_t seed, double min_im_ratio = 0.1,
                     bool ensure_pd_J = true);

/// GIEP givens read off a known pencil: head of H, tails at lambda and mu
/// from right_components, and the poles b_j/d_j. No precondition checks.
GiepInstance make_instance(const Pencil& truth, std::size_t k, double lambda, double mu);

struct EntryError {
  char entry = 'b';  // 'a' or 'b'
  std::size_t index = 0;
  double error = 0.0;
};

struct VerificationReport {
  std::vector<EntryError> entry_errors;
  double residual_lambda = 0.0;
  double residual_mu = 0.0;
  std::vector<double> delta_magnitudes;
  std::string pipeline;  // "eigenpair", "m-function" or "both"
  bool passed = false;
  std::optional<EntryError> worst;

  double max_entry_error() const { return worst ? worst->error : 0.0; }
};

inline constexpr double entry_tolerance = 1e-7;
inline constexpr double residual_tolerance = 1e-6;

/// |x - t| / |t| (absolute when t == 0).
double relative_error(Complex x, Complex t);

/// Compares the reconstructed b_k..b_{n-1}, a_{k+1}..a_n against truth and
/// recomputes both eigen-residuals densely.
VerificationReport verify(const Pencil& truth, const ReconstructionResult& result);

/// m-function route: compares b_{k+1}..b_{n-1}, a_{k+1}..a_n. Residual
/// fields are 0 (the route produces no eigenvectors).
VerificationReport verify(const Pencil& truth, const MReconstruction& result);

/// Both routes together; entry errors of the m route are tagged after the
/// eigenpair ones.
VerificationReport verify(const Pencil& truth, const ReconstructionResult& eig,
                          const MReconstruction& mfun);

}  // namespace tripencil::oracle

#endif
