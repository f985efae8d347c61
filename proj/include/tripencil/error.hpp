#ifndef TRIPENCIL_ERROR_HPP
#define TRIPENCIL_ERROR_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tripencil {

using Complex = std::complex<double>;

enum class ErrorKind {
  InvalidArgument,       // a type invariant was violated on construction
  IndexOutOfRange,
  ShapeMismatch,
  PoleCollision,         // z hits a pole b_j/d_j of a component
  DegenerateLastRow,     // z c_n == a_n, last component undefined
  SpectrumCollision,     // z is (numerically) a zero of a leading minor
  SingularDelta,         // 2x2 system for b_j is singular
  HermitianInconsistent, // solved (b_j, conj b_j) pair is not conjugate
  VanishingComponent,
  NonRealDiagonal,
  DegenerateDifference,  // consecutive m-function values coincide
  DegreeDrop,
  NearSingular,
  GenerationFailed,
};

std::string_view to_string(ErrorKind kind);

/// True for failures of a mathematical hypothesis (as opposed to malformed
/// input). The CLI maps these to exit code 2.
bool is_precondition_failure(ErrorKind kind);

class PencilError : public std::runtime_error {
 public:
  PencilError(ErrorKind kind, const std::string& message,
              std::optional<std::size_t> index = std::nullopt);

  ErrorKind kind() const noexcept { return kind_; }
  std::optional<std::size_t> index() const noexcept { return index_; }

 private:
  ErrorKind kind_;
  std::optional<std::size_t> index_;
};

inline bool is_finite(Complex z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

}  // namespace tripencil

#endif
