#include "tripencil/polynomial.hpp"

#include <algorithm>
#include <cmath>

namespace tripencil {

RealPolynomial::RealPolynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) coeffs_.push_back(0.0);
  for (double v : coeffs_)
    if (!std::isfinite(v)) throw PencilError(ErrorKind::InvalidArgument, "non-finite coefficient");
  trim();
}

void RealPolynomial::trim() {
  while (coeffs_.size() > 1 && coeffs_.back() == 0.0) coeffs_.pop_back();
}

Complex RealPolynomial::operator()(Complex z) const {
  Complex acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

double RealPolynomial::abs_sum_at(double radius) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * radius + std::abs(*it);
  return acc;
}

RealPolynomial RealPolynomial::derivative() const {
  if (coeffs_.size() == 1) return RealPolynomial();
  std::vector<double> out(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) out[i - 1] = static_cast<double>(i) * coeffs_[i];
  return RealPolynomial(std::move(out));
}

RealPolynomial& RealPolynomial::operator+=(const RealPolynomial& o) {
  coeffs_.resize(std::max(coeffs_.size(), o.coeffs_.size()), 0.0);
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  trim();
  return *this;
}

RealPolynomial& RealPolynomial::operator-=(const RealPolynomial& o) {
  coeffs_.resize(std::max(coeffs_.size(), o.coeffs_.size()), 0.0);
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  trim();
  return *this;
}

RealPolynomial operator*(const RealPolynomial& l, const RealPolynomial& r) {
  std::vector<double> out(l.coeffs_.size() + r.coeffs_.size() - 1, 0.0);
  for (std::size_t i = 0; i < l.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < r.coeffs_.size(); ++j) out[i + j] += l.coeffs_[i] * r.coeffs_[j];
  return RealPolynomial(std::move(out));
}

}  // namespace tripencil
