#include "tripencil/pencil.hpp"

#include <cmath>
#include <string>

namespace tripencil {

namespace {

void check_index(std::size_t m, std::size_t max, const char* what) {
  if (m > max)
    throw PencilError(ErrorKind::IndexOutOfRange,
                      std::string(what) + ": index " + std::to_string(m) + " exceeds " +
                          std::to_string(max),
                      m);
}

std::vector<Complex> run_recurrence(const Pencil& pencil, Complex z, Complex prev, Complex cur) {
  const std::size_t n = pencil.n();
  std::vector<Complex> out;
  out.reserve(n + 2);
  out.push_back(cur);
  for (std::size_t m = 0; m <= n; ++m) {
    const Complex w = m == 0 ? Complex(1.0) : coupling_term(pencil, m - 1, z);
    const Complex next = diagonal_term(pencil, m, z) * cur - w * prev;
    prev = cur;
    cur = next;
    out.push_back(cur);
  }
  return out;
}

RealPolynomial poly_recurrence(const Pencil& pencil, std::size_t m, RealPolynomial prev,
                               RealPolynomial cur) {
  const auto& J = pencil.J();
  const auto& H = pencil.H();
  for (std::size_t i = 0; i < m; ++i) {
    const RealPolynomial u({-H.a(i), J.c(i)});
    RealPolynomial w = RealPolynomial::constant(1.0);
    if (i > 0) {
      const double d = J.d(i - 1);
      const Complex b = H.b(i - 1);
      w = RealPolynomial({std::norm(b), -2.0 * d * b.real(), d * d});
    }
    RealPolynomial next = u * cur - w * prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

// b_j - z d_j (right) or conj(b_j) - z d_j (left), with the pole guard.
Complex pole_factor(const Pencil& pencil, std::size_t j, Complex z, Side side) {
  const Complex b = side == Side::Right ? pencil.H().b(j) : std::conj(pencil.H().b(j));
  const Complex zd = z * pencil.J().d(j);
  const Complex f = b - zd;
  if (std::abs(f) < tol::pole * (1.0 + std::abs(b) + std::abs(zd)))
    throw PencilError(ErrorKind::PoleCollision,
                      "z coincides with the pole of component " + std::to_string(j + 1) +
                          " (b_j/d_j with j=" + std::to_string(j) + ")",
                      j);
  return f;
}

// Sub-diagonal entry of zJ - H seen by the component recurrence: the right
// eigenvector meets conj(b_{m-1}), the left one b_{m-1}.
Complex lower_entry(const Pencil& pencil, std::size_t j, Complex z, Side side) {
  const Complex b = side == Side::Right ? std::conj(pencil.H().b(j)) : pencil.H().b(j);
  return z * pencil.J().d(j) - b;
}

std::vector<Complex> eigen_components(const Pencil& pencil, Complex z, Side side) {
  const std::size_t n = pencil.n();
  if (n == 0) return {Complex(1.0)};
  auto p = recurrence_components(pencil, z, side, n - 1);
  const Complex un = diagonal_term(pencil, n, z);
  const double scale = std::abs(z * pencil.J().c(n)) + std::abs(pencil.H().a(n));
  if (std::abs(un) < tol::last_row * (1.0 + scale))
    throw PencilError(ErrorKind::DegenerateLastRow,
                      "z c_n - a_n vanishes; last component undefined", n);
  // (z c_n - a_n) p_n = -(z d_{n-1} - b~_{n-1}) p_{n-1}
  p.push_back(-lower_entry(pencil, n - 1, z, side) * p[n - 1] / un);
  return p;
}

}  // namespace

Complex diagonal_term(const Pencil& pencil, std::size_t m, Complex z) {
  return z * pencil.J().c(m) - pencil.H().a(m);
}

Complex coupling_term(const Pencil& pencil, std::size_t j, Complex z) {
  const Complex zd = z * pencil.J().d(j);
  const Complex b = pencil.H().b(j);
  return (zd - b) * (zd - std::conj(b));
}

std::vector<Complex> P_sequence(const Pencil& pencil, Complex z) {
  return run_recurrence(pencil, z, 0.0, 1.0);
}

std::vector<Complex> Q_sequence(const Pencil& pencil, Complex z) {
  return run_recurrence(pencil, z, -1.0, 0.0);
}

Complex eval_P(const Pencil& pencil, std::size_t m, Complex z) {
  check_index(m, pencil.n() + 1, "eval_P");
  return P_sequence(pencil.leading(m == 0 ? 0 : m - 1), z)[m];
}

Complex eval_Q(const Pencil& pencil, std::size_t m, Complex z) {
  check_index(m, pencil.n() + 1, "eval_Q");
  return Q_sequence(pencil.leading(m == 0 ? 0 : m - 1), z)[m];
}

RealPolynomial poly_P(const Pencil& pencil, std::size_t m) {
  check_index(m, pencil.n() + 1, "poly_P");
  return poly_recurrence(pencil, m, RealPolynomial::constant(0.0), RealPolynomial::constant(1.0));
}

RealPolynomial poly_Q(const Pencil& pencil, std::size_t m) {
  check_index(m, pencil.n() + 1, "poly_Q");
  return poly_recurrence(pencil, m, RealPolynomial::constant(-1.0), RealPolynomial::constant(0.0));
}

KappaSequence kappa_sequence(const Pencil& pencil) {
  const std::size_t n = pencil.n();
  const auto& J = pencil.J();
  KappaSequence out;
  out.kappa = {1.0, J.c(0)};
  out.degree_drop = {false, J.c(0) == 0.0};
  for (std::size_t m = 1; m <= n; ++m) {
    const double keep = J.c(m) * out.kappa[m];
    const double sub = J.d(m - 1) * J.d(m - 1) * out.kappa[m - 1];
    const double next = keep - sub;
    out.kappa.push_back(next);
    out.degree_drop.push_back(std::abs(next) <= tol::degree_drop * (std::abs(keep) + std::abs(sub)));
  }
  return out;
}

bool hits_spectrum(const Pencil& pencil, std::size_t m, Complex z) {
  if (m == 0) return false;
  check_index(m, pencil.n() + 1, "hits_spectrum");
  const RealPolynomial P = poly_P(pencil, m);
  const Complex value = P_sequence(pencil.leading(m - 1), z)[m];
  return std::abs(value) < tol::spectrum * (1.0 + P.abs_sum_at(std::abs(z)));
}

std::vector<Complex> recurrence_components(const Pencil& pencil, Complex z, Side side,
                                           std::size_t last) {
  check_index(last, pencil.n(), "recurrence_components");
  std::vector<Complex> p;
  p.reserve(last + 1);
  p.push_back(1.0);
  for (std::size_t m = 0; m < last; ++m) {
    Complex num = diagonal_term(pencil, m, z) * p[m];
    if (m > 0) num += lower_entry(pencil, m - 1, z, side) * p[m - 1];
    p.push_back(num / pole_factor(pencil, m, z, side));
  }
  return p;
}

std::vector<Complex> right_components(const Pencil& pencil, Complex z) {
  return eigen_components(pencil, z, Side::Right);
}

std::vector<Complex> left_components(const Pencil& pencil, Complex z) {
  return eigen_components(pencil, z, Side::Left);
}

ComponentJet component_jet(const Pencil& pencil, Complex z, Side side, std::size_t last) {
  check_index(last, pencil.n(), "component_jet");
  const auto& J = pencil.J();
  const auto& H = pencil.H();

  // P_m, P_m' and g_m = 1 / prod_{j<m} f_j, g_m' = g_m * sum_j d_j / f_j.
  Complex P_prev = 0.0, P_cur = 1.0, dP_prev = 0.0, dP_cur = 0.0;
  Complex g = 1.0, log_dg = 0.0;
  ComponentJet jet;
  jet.value.push_back(1.0);
  jet.derivative.push_back(0.0);
  for (std::size_t m = 0; m < last; ++m) {
    Complex w = 1.0, dw = 0.0;
    if (m > 0) {
      const double d = J.d(m - 1);
      w = coupling_term(pencil, m - 1, z);
      dw = 2.0 * d * (z * d - H.b(m - 1).real());
    }
    const Complex u = diagonal_term(pencil, m, z);
    const Complex P_next = u * P_cur - w * P_prev;
    const Complex dP_next = J.c(m) * P_cur + u * dP_cur - dw * P_prev - w * dP_prev;
    P_prev = P_cur;
    P_cur = P_next;
    dP_prev = dP_cur;
    dP_cur = dP_next;

    const Complex f = pole_factor(pencil, m, z, side);
    g /= f;
    log_dg += J.d(m) / f;
    jet.value.push_back(P_cur * g);
    jet.derivative.push_back(dP_cur * g + P_cur * g * log_dg);
  }
  return jet;
}

Complex convergent_S(const Pencil& pencil, std::size_t m, Complex z) {
  if (m == 0) throw PencilError(ErrorKind::IndexOutOfRange, "convergent_S needs m >= 1", m);
  check_index(m, pencil.n() + 1, "convergent_S");
  if (hits_spectrum(pencil, m, z))
    throw PencilError(ErrorKind::SpectrumCollision,
                      "z is a zero of P_" + std::to_string(m) + "; convergent undefined", m);
  const Pencil lead = pencil.leading(m - 1);
  return Q_sequence(lead, z)[m] / P_sequence(lead, z)[m];
}

Complex continued_fraction(const Pencil& pencil, std::size_t m, Complex z) {
  if (m == 0) throw PencilError(ErrorKind::IndexOutOfRange, "continued_fraction needs m >= 1", m);
  check_index(m, pencil.n() + 1, "continued_fraction");
  Complex tail = diagonal_term(pencil, m - 1, z);
  for (std::size_t j = m - 1; j-- > 0;) tail = diagonal_term(pencil, j, z) - coupling_term(pencil, j, z) / tail;
  return 1.0 / tail;
}

double liouville_ostrogradsky_residual(const Pencil& pencil, std::size_t m, Complex z) {
  check_index(m, pencil.n(), "liouville_ostrogradsky_residual");
  const auto P = P_sequence(pencil, z);
  const auto Q = Q_sequence(pencil, z);
  Complex prod = 1.0;
  for (std::size_t j = 0; j < m; ++j) prod *= coupling_term(pencil, j, z);
  const Complex lhs = P[m] * Q[m + 1] - P[m + 1] * Q[m];
  return std::abs(lhs - prod) / (1.0 + std::abs(prod));
}

}  // namespace tripencil
