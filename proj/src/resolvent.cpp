#include "tripencil/resolvent.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

namespace tripencil {

namespace {

// m(w, i+1) - m(w, i), guarded.
Complex difference(const MFunctionTable& table, std::size_t i) {
  const Complex hi = table[i + 1];
  const Complex lo = table[i];
  const Complex diff = i < table.differences.size() ? table.differences[i] : hi - lo;
  if (std::abs(diff) < tol::difference * (1.0 + std::abs(hi) + std::abs(lo)))
    throw PencilError(ErrorKind::DegenerateDifference,
                      "m(w," + std::to_string(i + 1) + ") == m(w," + std::to_string(i) + ")", i);
  return diff;
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

Complex nonzero(Complex v, std::size_t i, const char* what) {
  if (v == Complex(0.0) || !is_finite(v))
    throw PencilError(ErrorKind::VanishingComponent,
                      std::string(what) + " component " + std::to_string(i) + " vanishes at w", i);
  return v;
}

}  // namespace

MFunctionTable m_table(const Pencil& pencil, Complex omega) {
  const std::size_t n = pencil.n();
  const auto P = P_sequence(pencil, omega);
  const auto Q = Q_sequence(pencil, omega);
  MFunctionTable table{omega, std::vector<Complex>(n + 2), std::vector<Complex>(n + 1)};
  for (std::size_t j = 1; j <= n + 1; ++j) {
    if (hits_spectrum(pencil, j, omega))
      throw PencilError(ErrorKind::SpectrumCollision,
                        "w lies in the spectrum of the leading sub-pencil of order " +
                            std::to_string(j),
                        j);
    table.values[j] = Q[j] / P[j];
  }
  table.differences[0] = table.values[1];
  Complex coupling = 1.0;
  for (std::size_t j = 1; j <= n; ++j) {
    coupling *= coupling_term(pencil, j - 1, omega);
    table.differences[j] = coupling / (P[j] * P[j + 1]);
  }
  return table;
}

Complex m_function(const Pencil& pencil, std::size_t j, Complex omega) {
  if (j > pencil.n() + 1)
    throw PencilError(ErrorKind::IndexOutOfRange, "m_function index", j);
  if (j == 0) return 0.0;
  return m_table(pencil.leading(j - 1), omega)[j];
}

DenseMatrix resolvent_matrix(const Pencil& pencil, Complex omega) {
  const std::size_t n = pencil.n();
  const MFunctionTable table = m_table(pencil, omega);
  const auto pr = recurrence_components(pencil, omega, Side::Right, n);
  const auto pl = recurrence_components(pencil, omega, Side::Left, n);
  // m(n+1) - m(i), summed from the top so the small terms go first
  std::vector<Complex> tail(n + 2);
  for (std::size_t i = n + 1; i-- > 0;) tail[i] = tail[i + 1] + table.differences[i];
  DenseMatrix R(n + 1, n + 1);
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t j = 0; j <= n; ++j) R(i, j) = pr[i] * tail[std::max(i, j)] * pl[j];
  return R;
}

DenseMatrix ResolventFactors::product() const {
  DenseMatrix scaled = upper;
  for (std::size_t i = 0; i < scaled.rows(); ++i)
    for (std::size_t j = 0; j < scaled.cols(); ++j) scaled(i, j) *= differences[j];
  return scaled * lower;
}

ResolventFactors ldu_factors(const Pencil& pencil, Complex omega) {
  const std::size_t n = pencil.n();
  const MFunctionTable table = m_table(pencil, omega);
  const auto pr = recurrence_components(pencil, omega, Side::Right, n);
  const auto pl = recurrence_components(pencil, omega, Side::Left, n);
  ResolventFactors f{DenseMatrix(n + 1, n + 1), std::vector<Complex>(n + 1),
                     DenseMatrix(n + 1, n + 1)};
  for (std::size_t i = 0; i <= n; ++i) {
    f.differences[i] = difference(table, i);
    for (std::size_t j = i; j <= n; ++j) {
      f.upper(i, j) = pr[i];
      f.lower(j, i) = pl[i];
    }
  }
  return f;
}

DenseMatrix trailing_inverse(const Pencil& pencil, std::size_t k, Complex omega) {
  const std::size_t n = pencil.n();
  if (k + 1 > n)
    throw PencilError(ErrorKind::IndexOutOfRange, "trailing block needs k <= n-1", k);
  const MFunctionTable table = m_table(pencil, omega);
  const auto pr = recurrence_components(pencil, omega, Side::Right, n);
  const auto pl = recurrence_components(pencil, omega, Side::Left, n);

  const std::size_t size = n - k;
  std::vector<Complex> delta(n + 1);
  for (std::size_t i = k + 1; i <= n; ++i) {
    delta[i] = difference(table, i);
    nonzero(pr[i], i, "right");
    nonzero(pl[i], i, "left");
  }

  DenseMatrix out(size, size);
  for (std::size_t i = k + 1; i <= n; ++i) {
    const std::size_t r = i - k - 1;
    Complex diag = 1.0 / delta[i];
    if (i > k + 1) diag += 1.0 / delta[i - 1];
    out(r, r) = diag / (pl[i] * pr[i]);
    if (i < n) out(r, r + 1) = -1.0 / (pl[i] * delta[i] * pr[i + 1]);
    if (i > k + 1) out(r, r - 1) = -1.0 / (pl[i] * delta[i - 1] * pr[i - 1]);
  }
  return out;
}

MReconstruction reconstruct_from_m(const SymmetricTridiagonal& J, std::size_t k,
                                   const MFunctionTable& table,
                                   std::span<const Complex> right,
                                   std::span<const Complex> left, Complex b_k) {
  const std::size_t n = J.order() - 1;
  if (k + 1 > n) throw PencilError(ErrorKind::IndexOutOfRange, "reconstruct_from_m needs k <= n-1", k);
  if (table.values.size() != n + 2 || right.size() != n + 1 || left.size() != n + 1)
    throw PencilError(ErrorKind::ShapeMismatch, "m-table or component length does not match J");
  for (std::size_t j = k; j <= n + 1; ++j)
    if (!is_finite(table[j]))
      throw PencilError(ErrorKind::SpectrumCollision, "m(w," + std::to_string(j) + ") is not finite", j);
  const Complex w = table.omega;

  std::vector<Complex> delta(n + 1);
  for (std::size_t i = k; i <= n; ++i) {
    delta[i] = difference(table, i);
    nonzero(right[i], i, "right");
    nonzero(left[i], i, "left");
  }

  MReconstruction out{k, w, {}, {}};
  for (std::size_t j = k + 1; j + 1 <= n; ++j)
    out.b.push_back(w * J.d(j) + 1.0 / (left[j] * delta[j] * right[j + 1]));

  for (std::size_t j = k + 1; j <= n; ++j) {
    Complex inv_diag = 1.0 / delta[j];
    if (j > k + 1) inv_diag += 1.0 / delta[j - 1];
    Complex a = w * J.c(j) - inv_diag / (left[j] * right[j]);
    if (j == k + 1) {
      // Schur complement of the leading block: coupling times (R_[0,k])_kk.
      const Complex wd = w * J.d(k);
      a -= (wd - std::conj(b_k)) * (wd - b_k) * left[k] * delta[k] * right[k];
    }
    if (std::abs(a.imag()) > tol::real_diagonal * (1.0 + std::abs(a.real())))
      throw PencilError(ErrorKind::NonRealDiagonal,
                        "recovered a_" + std::to_string(j) + " is not real (Im = " +
                            sci(a.imag()) + ")",
                        j);
    out.a.push_back(a.real());
  }
  return out;
}

MReconstruction reconstruct_from_m(const Pencil& truth, std::size_t k, Complex omega) {
  const std::size_t n = truth.n();
  const auto table = m_table(truth, omega);
  const auto pr = recurrence_components(truth, omega, Side::Right, n);
  const auto pl = recurrence_components(truth, omega, Side::Left, n);
  return reconstruct_from_m(truth.J(), k, table, pr, pl, truth.H().b(k));
}

}  // namespace tripencil
