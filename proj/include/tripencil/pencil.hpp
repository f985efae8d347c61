#ifndef TRIPENCIL_PENCIL_HPP
#define TRIPENCIL_PENCIL_HPP

#include <cstddef>
#include <vector>

#include "tripencil/error.hpp"
#include "tripencil/polynomial.hpp"
#include "tripencil/tridiagonal.hpp"

namespace tripencil {

namespace tol {
inline constexpr double pole = 1e-12;        // |b_j - z d_j| relative guard
inline constexpr double spectrum = 1e-10;    // |P_m(z)| relative to sum |coeff| |z|^i
inline constexpr double last_row = 1e-12;    // |z c_n - a_n| relative guard
inline constexpr double degree_drop = 1e-12; // kappa cancellation
}  // namespace tol

/// Which eigenvector a component sequence belongs to. Right components have
/// poles at b_j/d_j, left components at conj(b_j)/d_j.
enum class Side { Right, Left };

/// u_m(z) = z c_m - a_m.
Complex diagonal_term(const Pencil& pencil, std::size_t m, Complex z);

/// w_j(z) = (z d_j - b_j)(z d_j - conj(b_j)); real coefficients in z.
Complex coupling_term(const Pencil& pencil, std::size_t j, Complex z);

// Three-term recurrence X_{m+1} = u_m X_m - w_{m-1} X_{m-1}, with the m = 0
// coupling fixed to 1. P starts from (P_{-1}, P_0) = (0, 1), Q from (-1, 0),
// so Q_1 = 1 and Q_m / P_m are the convergents of the continued fraction.
// P_m is the leading m x m minor det(zJ_[0,m-1] - H_[0,m-1]).
std::vector<Complex> P_sequence(const Pencil& pencil, Complex z);  // P_0..P_{n+1}
std::vector<Complex> Q_sequence(const Pencil& pencil, Complex z);  // Q_0..Q_{n+1}
Complex eval_P(const Pencil& pencil, std::size_t m, Complex z);
Complex eval_Q(const Pencil& pencil, std::size_t m, Complex z);

/// Same recurrences in coefficient space.
RealPolynomial poly_P(const Pencil& pencil, std::size_t m);
RealPolynomial poly_Q(const Pencil& pencil, std::size_t m);

struct KappaSequence {
  std::vector<double> kappa;       // leading coefficients kappa_0..kappa_{n+1}
  std::vector<bool> degree_drop;   // degree_drop[m]: deg P_m < m
};

/// kappa_{m+1} = c_m kappa_m - d_{m-1}^2 kappa_{m-1}, kappa_0 = 1, kappa_1 = c_0.
KappaSequence kappa_sequence(const Pencil& pencil);

/// True when z is numerically a zero of P_m, i.e. z lies in the spectrum of
/// the leading sub-pencil on indices 0..m-1. Requires 1 <= m <= n+1.
bool hits_spectrum(const Pencil& pencil, std::size_t m, Complex z);

/// Components p_0..p_last generated from the first `last` rows of
/// (zJ - H)p = 0 with p_0 = 1, i.e. p_m = P_m / prod_{j<m}(b_j - z d_j)
/// (conj(b_j) for the left side). Requires last <= n.
std::vector<Complex> recurrence_components(const Pencil& pencil, Complex z, Side side,
                                           std::size_t last);

/// Eigenvector-shaped components p_0..p_n: p_0 = 1, entries up to n-1 from
/// the recurrence and p_n from the last row (z c_n - a_n) p_n = (conj(b_{n-1}) - z d_{n-1}) p_{n-1}.
/// At an eigenvalue this is the right eigenvector.
std::vector<Complex> right_components(const Pencil& pencil, Complex z);
std::vector<Complex> left_components(const Pencil& pencil, Complex z);

struct ComponentJet {
  std::vector<Complex> value;
  std::vector<Complex> derivative;  // d/dz with p_0 == 1 held fixed
};

/// recurrence_components together with their z-derivatives, from the
/// differentiated recurrence for P_m.
ComponentJet component_jet(const Pencil& pencil, Complex z, Side side, std::size_t last);

/// Q_m(z) / P_m(z) for 1 <= m <= n+1.
Complex convergent_S(const Pencil& pencil, std::size_t m, Complex z);

/// Depth-m continued fraction 1/(u_0 - w_0/(u_1 - ... w_{m-2}/u_{m-1})),
/// evaluated bottom-up. Independent route to convergent_S.
Complex continued_fraction(const Pencil& pencil, std::size_t m, Complex z);

/// |(P_m Q_{m+1} - P_{m+1} Q_m) - prod_{j<m} w_j| / (1 + |prod|), 0 <= m <= n.
double liouville_ostrogradsky_residual(const Pencil& pencil, std::size_t m, Complex z);

}  // namespace tripencil

#endif
