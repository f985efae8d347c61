#ifndef TRIPENCIL_POLYNOMIAL_HPP
#define TRIPENCIL_POLYNOMIAL_HPP

#include <cstddef>
#include <vector>

#include "tripencil/error.hpp"

namespace tripencil {

// Real polynomial, coefficients in ascending degree. Exact trailing zeros are
// trimmed so the last coefficient is the leading one; the zero polynomial is
// stored as {0}.
class RealPolynomial {
 public:
  RealPolynomial() : coeffs_{0.0} {}
  explicit RealPolynomial(std::vector<double> coeffs);

  static RealPolynomial constant(double v) { return RealPolynomial({v}); }

  const std::vector<double>& coeffs() const noexcept { return coeffs_; }
  std::size_t degree() const noexcept { return coeffs_.size() - 1; }
  double leading() const noexcept { return coeffs_.back(); }
  bool is_zero() const noexcept { return coeffs_.size() == 1 && coeffs_[0] == 0.0; }

  Complex operator()(Complex z) const;  // Horner
  double abs_sum_at(double radius) const;  // sum_i |coeff_i| * radius^i
  RealPolynomial derivative() const;

  RealPolynomial& operator+=(const RealPolynomial& o);
  RealPolynomial& operator-=(const RealPolynomial& o);
  friend RealPolynomial operator+(RealPolynomial l, const RealPolynomial& r) { return l += r; }
  friend RealPolynomial operator-(RealPolynomial l, const RealPolynomial& r) { return l -= r; }
  friend RealPolynomial operator*(const RealPolynomial& l, const RealPolynomial& r);

  friend bool operator==(const RealPolynomial&, const RealPolynomial&) = default;

 private:
  void trim();
  std::vector<double> coeffs_;
};

}  // namespace tripencil

#endif
