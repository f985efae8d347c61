#include "tripencil/tridiagonal.hpp"

#include <cmath>
#include <string>

namespace tripencil {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw PencilError(ErrorKind::InvalidArgument, what);
}

}  // namespace

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::PoleCollision: return "PoleCollision";
    case ErrorKind::DegenerateLastRow: return "DegenerateLastRow";
    case ErrorKind::SpectrumCollision: return "SpectrumCollision";
    case ErrorKind::SingularDelta: return "SingularDelta";
    case ErrorKind::HermitianInconsistent: return "HermitianInconsistent";
    case ErrorKind::VanishingComponent: return "VanishingComponent";
    case ErrorKind::NonRealDiagonal: return "NonRealDiagonal";
    case ErrorKind::DegenerateDifference: return "DegenerateDifference";
    case ErrorKind::DegreeDrop: return "DegreeDrop";
    case ErrorKind::NearSingular: return "NearSingular";
    case ErrorKind::GenerationFailed: return "GenerationFailed";
  }
  return "Unknown";
}

bool is_precondition_failure(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument:
    case ErrorKind::IndexOutOfRange:
    case ErrorKind::ShapeMismatch:
      return false;
    default:
      return true;
  }
}

PencilError::PencilError(ErrorKind kind, const std::string& message,
                         std::optional<std::size_t> index)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message),
      kind_(kind),
      index_(index) {}

SymmetricTridiagonal::SymmetricTridiagonal(std::vector<double> diag, std::vector<double> off)
    : c_(std::move(diag)), d_(std::move(off)) {
  require(!c_.empty(), "J needs at least one diagonal entry");
  require(d_.size() + 1 == c_.size(), "J: off-diagonal length must be order-1");
  for (double v : c_) require(std::isfinite(v), "J: non-finite diagonal entry");
  for (std::size_t j = 0; j < d_.size(); ++j) {
    require(std::isfinite(d_[j]), "J: non-finite off-diagonal entry");
    require(d_[j] != 0.0, "J: off-diagonal d_" + std::to_string(j) + " is zero");
  }
}

SymmetricTridiagonal SymmetricTridiagonal::block(std::size_t first, std::size_t last) const {
  if (first > last || last >= order())
    throw PencilError(ErrorKind::IndexOutOfRange, "J block out of range");
  return SymmetricTridiagonal(std::vector<double>(c_.begin() + first, c_.begin() + last + 1),
                              std::vector<double>(d_.begin() + first, d_.begin() + last));
}

HermitianTridiagonal::HermitianTridiagonal(std::vector<double> diag, std::vector<Complex> upper)
    : a_(std::move(diag)), b_(std::move(upper)) {
  require(!a_.empty(), "H needs at least one diagonal entry");
  require(b_.size() + 1 == a_.size(), "H: super-diagonal length must be order-1");
  for (double v : a_) require(std::isfinite(v), "H: non-finite diagonal entry");
  for (Complex v : b_) require(is_finite(v), "H: non-finite super-diagonal entry");
}

HermitianTridiagonal HermitianTridiagonal::block(std::size_t first, std::size_t last) const {
  if (first > last || last >= order())
    throw PencilError(ErrorKind::IndexOutOfRange, "H block out of range");
  return HermitianTridiagonal(std::vector<double>(a_.begin() + first, a_.begin() + last + 1),
                              std::vector<Complex>(b_.begin() + first, b_.begin() + last));
}

Pencil::Pencil(SymmetricTridiagonal J, HermitianTridiagonal H)
    : J_(std::move(J)), H_(std::move(H)) {
  require(J_.order() == H_.order(), "J and H must have the same order");
}

Pencil Pencil::leading(std::size_t last) const {
  return Pencil(J_.block(0, last), H_.block(0, last));
}

}  // namespace tripencil
