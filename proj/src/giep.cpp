#include "tripencil/giep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "tripencil/dense.hpp"
#include "tripencil/resolvent.hpp"

namespace tripencil {

namespace {

std::string idx(std::size_t j) { return std::to_string(j); }

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

void require(bool ok, ErrorKind kind, const std::string& what) {
  if (!ok) throw PencilError(kind, what);
}

// sum_{i,j in [first,last]} x_i J_ij y_j
Complex bilinear(const SymmetricTridiagonal& J, std::size_t first, std::size_t last,
                 std::span<const Complex> x, std::span<const Complex> y) {
  Complex acc = 0.0;
  for (std::size_t i = first; i <= last; ++i) {
    acc += x[i] * J.c(i) * y[i];
    if (i < last) acc += J.d(i) * (x[i] * y[i + 1] + x[i + 1] * y[i]);
  }
  return acc;
}

std::vector<Complex> conj_all(std::span<const Complex> v) {
  std::vector<Complex> out(v.begin(), v.end());
  for (auto& x : out) x = std::conj(x);
  return out;
}

std::vector<Complex> unit(std::vector<Complex> v) {
  const double nrm = norm2(v);
  if (nrm > 0.0)
    for (auto& x : v) x /= nrm;
  return v;
}

void check_head_spectrum(const Pencil& head, std::size_t k, double z, const char* name) {
  for (std::size_t m : {k, k + 1}) {
    if (m == 0) continue;
    if (hits_spectrum(head, m, z))
      throw PencilError(ErrorKind::SpectrumCollision,
                        std::string(name) + " lies in the spectrum of the leading block on 0.." +
                            idx(m - 1) + " (P_" + idx(m) + " vanishes there)",
                        m - 1);
  }
}

}  // namespace

void GiepInstance::validate() const {
  const std::size_t n = this->n();
  require(n >= 2, ErrorKind::InvalidArgument, "instance needs order index n >= 2");
  require(k >= 1 && k + 1 <= n, ErrorKind::InvalidArgument,
          "split index k must satisfy 1 <= k <= n-1 (k=" + idx(k) + ", n=" + idx(n) + ")");
  require(head_a.size() == k + 1, ErrorKind::ShapeMismatch, "head_a must hold a_0..a_k");
  require(head_b.size() == k, ErrorKind::ShapeMismatch, "head_b must hold b_0..b_{k-1}");
  require(tail_p.size() == n - k + 1, ErrorKind::ShapeMismatch, "tail_p must hold p_k..p_n");
  require(tail_s.size() == n - k + 1, ErrorKind::ShapeMismatch, "tail_s must hold s_k..s_n");
  require(std::isfinite(lambda) && std::isfinite(mu), ErrorKind::InvalidArgument,
          "eigenvalues must be finite");
  require(lambda != mu, ErrorKind::InvalidArgument, "lambda and mu must differ");
  for (double a : head_a) require(std::isfinite(a), ErrorKind::InvalidArgument, "non-finite head_a");
  for (Complex b : head_b) require(is_finite(b), ErrorKind::InvalidArgument, "non-finite head_b");
  for (Complex v : tail_p) require(is_finite(v), ErrorKind::InvalidArgument, "non-finite tail_p");
  for (Complex v : tail_s) require(is_finite(v), ErrorKind::InvalidArgument, "non-finite tail_s");
  if (poles) {
    require(poles->size() == n - k, ErrorKind::ShapeMismatch, "poles must hold alpha_k..alpha_{n-1}");
    for (Complex v : *poles) require(is_finite(v), ErrorKind::InvalidArgument, "non-finite pole");
  }
}

Pencil GiepInstance::head_pencil() const {
  return Pencil(J.block(0, k), HermitianTridiagonal(head_a, head_b));
}

Complex delta_j(Complex pL_j, Complex pL_j1, Complex pR_j, Complex pR_j1,
                Complex sL_j, Complex sL_j1, Complex sR_j, Complex sR_j1) {
  const Complex det_s = sL_j * sR_j1 - sR_j * sL_j1;
  const Complex det_p = pL_j * pR_j1 - pR_j * pL_j1;
  return pL_j1 * pR_j * det_s - sL_j1 * sR_j * det_p;
}

OffDiagonalSolve solve_offdiagonal(std::size_t j, double d_j, double lambda, double mu,
                                   Complex p_j, Complex p_j1, Complex s_j, Complex s_j1) {
  const Complex pL_j = std::conj(p_j), pL_j1 = std::conj(p_j1);
  const Complex sL_j = std::conj(s_j), sL_j1 = std::conj(s_j1);

  const Complex delta = delta_j(pL_j, pL_j1, p_j, p_j1, sL_j, sL_j1, s_j, s_j1);
  const double scale = std::abs(p_j) * std::abs(p_j1) * std::abs(s_j) * std::abs(s_j1);
  if (std::abs(delta) < tol::delta * (scale + 1.0))
    throw PencilError(ErrorKind::SingularDelta,
                      "Delta_" + idx(j) + " vanishes (|Delta|=" + sci(std::abs(delta)) +
                          "): the pole alpha_" + idx(j) + " = b_" + idx(j) + "/d_" + idx(j) +
                          " must be non-real and lambda, mu must avoid the leading spectra",
                      j);

  const Complex det_p = pL_j * p_j1 - p_j * pL_j1;
  const Complex det_s = sL_j * s_j1 - s_j * sL_j1;

  // [m00 m01; m10 m11] (u, v) = (r0, r1), partial pivoting on the first column.
  Complex m00 = pL_j * p_j1, m01 = -pL_j1 * p_j, r0 = lambda * d_j * det_p;
  Complex m10 = sL_j * s_j1, m11 = -sL_j1 * s_j, r1 = mu * d_j * det_s;
  if (std::abs(m10) > std::abs(m00)) {
    std::swap(m00, m10);
    std::swap(m01, m11);
    std::swap(r0, r1);
  }
  const Complex l = m10 / m00;
  const Complex v = (r1 - l * r0) / (m11 - l * m01);
  const Complex u = (r0 - m01 * v) / m00;

  const Complex sum = (lambda + mu) * d_j;
  OffDiagonalSolve out;
  out.b = u;
  out.conj_unknown = v;
  out.delta = delta;
  out.closed_form = sum + d_j / delta * (mu * sL_j1 * s_j * det_p - lambda * pL_j1 * p_j * det_s);
  out.closed_form_conj = sum + d_j / delta * (mu * sL_j * s_j1 * det_p - lambda * pL_j * p_j1 * det_s);

  if (std::abs(v - std::conj(u)) > tol::hermitian * (1.0 + std::abs(u)))
    throw PencilError(ErrorKind::HermitianInconsistent,
                      "solved pair for b_" + idx(j) + " is not conjugate; spectral data inconsistent",
                      j);
  return out;
}

std::vector<Complex> reconstruct_b(const GiepInstance& instance) {
  instance.validate();
  const std::size_t n = instance.n(), k = instance.k;
  std::vector<Complex> b;
  for (std::size_t j = k; j < n; ++j) {
    const std::size_t t = j - k;
    b.push_back(solve_offdiagonal(j, instance.J.d(j), instance.lambda, instance.mu,
                                  instance.tail_p[t], instance.tail_p[t + 1],
                                  instance.tail_s[t], instance.tail_s[t + 1])
                    .b);
  }
  return b;
}

std::vector<double> reconstruct_a(const GiepInstance& instance, std::span<const Complex> b_full) {
  const std::size_t n = instance.n(), k = instance.k;
  if (b_full.size() != n) throw PencilError(ErrorKind::ShapeMismatch, "b_full must hold b_0..b_{n-1}");
  const auto& J = instance.J;
  const double lam = instance.lambda;
  auto p = [&](std::size_t i) { return instance.tail_p[i - k]; };

  double biggest = 0.0;
  for (Complex v : instance.tail_p) biggest = std::max(biggest, std::abs(v));

  std::vector<double> a;
  for (std::size_t i = k + 1; i <= n; ++i) {
    if (std::abs(p(i)) <= tol::vanishing * biggest)
      throw PencilError(ErrorKind::VanishingComponent,
                        "p_" + idx(i) + "(lambda) vanishes; a_" + idx(i) + " undetermined", i);
    Complex num = (lam * J.d(i - 1) - std::conj(b_full[i - 1])) * p(i - 1);
    if (i < n) num += (lam * J.d(i) - b_full[i]) * p(i + 1);
    const Complex ai = lam * J.c(i) + num / p(i);
    if (std::abs(ai.imag()) > tol::real_diagonal * (1.0 + std::abs(ai.real())))
      throw PencilError(ErrorKind::NonRealDiagonal,
                        "a_" + idx(i) + " comes out non-real (Im = " + sci(ai.imag()) +
                            "); eigenvector data inconsistent",
                        i);
    a.push_back(ai.real());
  }
  return a;
}

std::vector<Complex> head_components(const GiepInstance& instance, Complex b_k, Complex p_k1,
                                     double z) {
  const std::size_t k = instance.k;
  const Pencil head = instance.head_pencil();
  if (hits_spectrum(head, k + 1, z))
    throw PencilError(ErrorKind::SpectrumCollision,
                      "z lies in the spectrum of the leading block on 0.." + idx(k) +
                          "; head components undetermined",
                      k);
  const auto P = P_sequence(head, z);
  const auto& J = instance.J;

  // p_m = (b_k - z d_k) prod_{j=m}^{k-1} (b_j - z d_j) P_m / P_{k+1} * p_{k+1}
  std::vector<Complex> out(k);
  Complex factor = (b_k - z * J.d(k)) * p_k1 / P[k + 1];
  for (std::size_t m = k; m-- > 0;) {
    factor *= instance.head_b[m] - z * J.d(m);
    out[m] = factor * P[m];
  }
  return out;
}

ImaginaryClassification classify_imaginary(std::size_t j, Complex p_j, Complex p_j1,
                                           Complex s_j, Complex s_j1, double d_j,
                                           double lambda, double mu) {
  const Complex pL_j = std::conj(p_j), pL_j1 = std::conj(p_j1);
  const Complex sL_j = std::conj(s_j), sL_j1 = std::conj(s_j1);
  const Complex delta = delta_j(pL_j, pL_j1, p_j, p_j1, sL_j, sL_j1, s_j, s_j1);
  const double scale = std::abs(p_j) * std::abs(p_j1) * std::abs(s_j) * std::abs(s_j1);
  if (std::abs(delta) < tol::delta * (scale + 1.0))
    throw PencilError(ErrorKind::SingularDelta, "Delta_" + idx(j) + " vanishes; b_" + idx(j) +
                                                    " cannot be split into real and imaginary parts",
                      j);

  const Complex det_p = pL_j * p_j1 - p_j * pL_j1;   // |p^L p^R|
  const Complex det_s = sL_j * s_j1 - s_j * sL_j1;
  const Complex perm_p = pL_j * p_j1 + p_j * pL_j1;  // |p^L -p^R|
  const Complex perm_s = sL_j * s_j1 + s_j * sL_j1;

  const Complex x = d_j / (2.0 * delta) * (mu * perm_p * det_s - lambda * perm_s * det_p);
  const Complex y = (lambda - mu) * d_j / (Complex(0.0, 2.0) * delta) * det_p * det_s;

  ImaginaryClassification out;
  out.j = j;
  out.x = x.real();
  out.y = y.real();
  const Complex denom = perm_s * det_p;
  out.ratio = denom == Complex(0.0) ? std::numeric_limits<double>::infinity()
                                    : (perm_p * det_s / denom).real();
  if (mu != 0.0 && std::isfinite(out.ratio)) {
    const double target = lambda / mu;
    out.wall_ratio_ok = std::abs(target - out.ratio) <= tol::wall_ratio * std::abs(target);
  }
  return out;
}

TraceResiduals trace_identity_residuals(const Pencil& pencil, std::size_t k, double lambda,
                                        double mu) {
  const std::size_t n = pencil.n();
  if (lambda == mu)
    throw PencilError(ErrorKind::InvalidArgument, "trace identities need lambda != mu");
  if (k + 1 > n) throw PencilError(ErrorKind::IndexOutOfRange, "trace identities need k <= n-1", k);
  for (double z : {lambda, mu})
    for (std::size_t m : {k, k + 1})
      if (m >= 1 && hits_spectrum(pencil, m, z))
        throw PencilError(ErrorKind::SpectrumCollision,
                          "eigenvalue lies in the spectrum of the leading block on 0.." + idx(m - 1),
                          m - 1);

  const auto p = unit(right_components(pencil, lambda));
  const auto s = unit(right_components(pencil, mu));
  const auto pL = conj_all(p);
  const auto sL = conj_all(s);
  const auto& J = pencil.J();
  const double dk = J.d(k);
  const Complex bk = pencil.H().b(k);

  const Complex lhs_trailing = (lambda - mu) * bilinear(J, k + 1, n, pL, s);
  const Complex rhs_trailing = (bk - lambda * dk) * pL[k] * s[k + 1] -
                               (std::conj(bk) - mu * dk) * pL[k + 1] * s[k];
  const Complex lhs_leading = (lambda - mu) * bilinear(J, 0, k, sL, p);
  const Complex rhs_leading = (bk - lambda * dk) * sL[k] * p[k + 1] -
                              (std::conj(bk) - mu * dk) * sL[k + 1] * p[k];

  return {std::abs(lhs_trailing - rhs_trailing) / (1.0 + std::abs(rhs_trailing)),
          std::abs(lhs_leading - rhs_leading) / (1.0 + std::abs(rhs_leading))};
}

PositivityWitness positivity_witness(const Pencil& pencil, std::size_t k, double mu) {
  if (k + 1 > pencil.n())
    throw PencilError(ErrorKind::IndexOutOfRange, "positivity witness needs k <= n-1", k);
  const auto jet = component_jet(pencil, mu, Side::Right, k + 1);
  const auto& s = jet.value;
  const auto& ds = jet.derivative;
  const double dk = pencil.J().d(k);
  const Complex bk = pencil.H().b(k);
  const Complex w = (bk - mu * dk) * std::conj(s[k]) * ds[k + 1] -
                    (std::conj(bk) - mu * dk) * std::conj(s[k + 1]) * ds[k] -
                    dk * std::conj(s[k]) * s[k + 1];
  return {w.real(), w.imag()};
}

double eigen_residual(const Pencil& pencil, double z, std::span<const Complex> v) {
  const std::vector<Complex> vec(v.begin(), v.end());
  const double nrm = norm2(vec);
  if (nrm == 0.0) throw PencilError(ErrorKind::VanishingComponent, "zero eigenvector");
  return norm2(assemble(pencil, z) * vec) / nrm;
}

ReconstructionResult solve(const GiepInstance& instance) {
  instance.validate();
  const std::size_t n = instance.n(), k = instance.k;
  const Pencil head = instance.head_pencil();
  check_head_spectrum(head, k, instance.lambda, "lambda");
  check_head_spectrum(head, k, instance.mu, "mu");

  std::vector<Complex> b_full = instance.head_b;
  std::vector<Complex> deltas;
  std::vector<ImaginaryClassification> flags;
  for (std::size_t j = k; j < n; ++j) {
    const std::size_t t = j - k;
    const Complex p_j = instance.tail_p[t], p_j1 = instance.tail_p[t + 1];
    const Complex s_j = instance.tail_s[t], s_j1 = instance.tail_s[t + 1];
    const auto sol = solve_offdiagonal(j, instance.J.d(j), instance.lambda, instance.mu,
                                       p_j, p_j1, s_j, s_j1);
    b_full.push_back(sol.b);
    deltas.push_back(sol.delta);
    flags.push_back(classify_imaginary(j, p_j, p_j1, s_j, s_j1, instance.J.d(j),
                                       instance.lambda, instance.mu));
  }

  std::vector<double> a_full = instance.head_a;
  const auto a_tail = reconstruct_a(instance, b_full);
  a_full.insert(a_full.end(), a_tail.begin(), a_tail.end());

  ReconstructionResult out{.H = HermitianTridiagonal(std::move(a_full), b_full)};
  out.k = k;
  out.lambda = instance.lambda;
  out.mu = instance.mu;
  out.head_p = head_components(instance, b_full[k], instance.tail_p[1], instance.lambda);
  out.head_s = head_components(instance, b_full[k], instance.tail_s[1], instance.mu);
  out.eigvec_lambda = out.head_p;
  out.eigvec_lambda.insert(out.eigvec_lambda.end(), instance.tail_p.begin(), instance.tail_p.end());
  out.eigvec_mu = out.head_s;
  out.eigvec_mu.insert(out.eigvec_mu.end(), instance.tail_s.begin(), instance.tail_s.end());
  out.deltas = std::move(deltas);
  out.imaginary_flags = std::move(flags);

  const Pencil rebuilt(instance.J, out.H);
  out.residual_lambda = eigen_residual(rebuilt, instance.lambda, out.eigvec_lambda);
  out.residual_mu = eigen_residual(rebuilt, instance.mu, out.eigvec_mu);
  return out;
}

std::vector<std::size_t> real_pole_warnings(const GiepInstance& instance) {
  std::vector<std::size_t> out;
  if (!instance.poles) return out;
  for (std::size_t t = 0; t < instance.poles->size(); ++t) {
    const Complex alpha = (*instance.poles)[t];
    if (std::abs(alpha.imag()) <= 1e-12 * (1.0 + std::abs(alpha))) out.push_back(instance.k + t);
  }
  return out;
}

}  // namespace tripencil
