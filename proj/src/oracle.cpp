#include "tripencil/oracle.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace tripencil::oracle {

namespace {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

// Assembled straight from the entries, without going through dense.cpp.
CMatrix eigen_J(const SymmetricTridiagonal& J) {
  const auto N = static_cast<Eigen::Index>(J.order());
  CMatrix m = CMatrix::Zero(N, N);
  for (Eigen::Index i = 0; i < N; ++i) {
    m(i, i) = J.c(i);
    if (i + 1 < N) m(i, i + 1) = m(i + 1, i) = J.d(i);
  }
  return m;
}

CMatrix eigen_H(const HermitianTridiagonal& H) {
  const auto N = static_cast<Eigen::Index>(H.order());
  CMatrix m = CMatrix::Zero(N, N);
  for (Eigen::Index i = 0; i < N; ++i) {
    m(i, i) = H.a(i);
    if (i + 1 < N) {
      m(i, i + 1) = H.b(i);
      m(i + 1, i) = std::conj(H.b(i));
    }
  }
  return m;
}

CMatrix eigen_pencil(const Pencil& pencil, Complex omega) {
  return omega * eigen_J(pencil.J()) - eigen_H(pencil.H());
}

CVector to_eigen(const std::vector<Complex>& v) {
  CVector out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = v[i];
  return out;
}

double dense_residual(const Pencil& pencil, double z, const std::vector<Complex>& v) {
  const CVector x = to_eigen(v);
  return (eigen_pencil(pencil, z) * x).norm() / x.norm();
}

class Sampler {
 public:
  Sampler(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    rng_.seed(seq);
  }
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  double sign() { return uniform(0.0, 1.0) < 0.5 ? -1.0 : 1.0; }
  std::size_t index(std::size_t size) {
    return std::uniform_int_distribution<std::size_t>(0, size - 1)(rng_);
  }

 private:
  std::mt19937_64 rng_;
};

Pencil draw_pencil(Sampler& rng, std::size_t n, std::size_t k, double min_im_ratio, bool pd,
                   bool imaginary_tail) {
  std::vector<double> d(n), c(n + 1), a(n + 1);
  std::vector<Complex> b(n);
  for (auto& x : d) x = rng.sign() * rng.uniform(0.5, 2.0);
  for (std::size_t j = 0; j <= n; ++j) {
    const double neighbours = (j > 0 ? std::abs(d[j - 1]) : 0.0) + (j < n ? std::abs(d[j]) : 0.0);
    c[j] = pd ? neighbours + rng.uniform(0.5, 2.0) : rng.uniform(-2.0, 2.0) * (1.0 + neighbours);
    a[j] = rng.uniform(-2.0, 2.0);
  }
  for (std::size_t j = 0; j < n; ++j) {
    const double y = rng.sign() * rng.uniform(min_im_ratio, min_im_ratio + 1.0);
    const double x = imaginary_tail && j >= k ? 0.0 : rng.uniform(-1.0, 1.0);
    b[j] = d[j] * Complex(x, y);
  }
  return Pencil(SymmetricTridiagonal(std::move(c), std::move(d)),
                HermitianTridiagonal(std::move(a), std::move(b)));
}

using WideComplex = std::complex<long double>;

WideComplex widen(Complex z) { return {z.real(), z.imag()}; }

// Newton on P_{n+1} in extended precision, so that the generated givens are
// consistent to the last double bit.
long double polish_eigenvalue(const Pencil& pencil, double z0) {
  const auto& J = pencil.J();
  const auto& H = pencil.H();
  long double z = z0;
  for (int it = 0; it < 8; ++it) {
    WideComplex P_prev = 0.0L, P_cur = 1.0L, dP_prev = 0.0L, dP_cur = 0.0L;
    for (std::size_t m = 0; m <= pencil.n(); ++m) {
      WideComplex w = 1.0L, dw = 0.0L;
      if (m > 0) {
        const long double d = J.d(m - 1);
        const WideComplex b = widen(H.b(m - 1));
        w = (z * d - b) * (z * d - std::conj(b));
        dw = 2.0L * d * (z * d - b.real());
      }
      const WideComplex u = z * static_cast<long double>(J.c(m)) - static_cast<long double>(H.a(m));
      const WideComplex P_next = u * P_cur - w * P_prev;
      const WideComplex dP_next = static_cast<long double>(J.c(m)) * P_cur + u * dP_cur -
                                  dw * P_prev - w * dP_prev;
      P_prev = P_cur;
      P_cur = P_next;
      dP_prev = dP_cur;
      dP_cur = dP_next;
    }
    if (dP_cur == WideComplex(0.0L)) break;
    const long double step = (P_cur / dP_cur).real();
    z -= step;
    if (std::abs(step) <= 1e-19L * (1.0L + std::abs(z))) break;
  }
  return z;
}

// Eigenvector at an eigenvalue z: forward recurrence on rows 0..r-1,
// backward recurrence on rows r+1..n, joined at the index r of the largest
// entry. Either recurrence alone, run across a decaying stretch, amplifies
// the rounding in z. Scaled to p_0 = 1.
std::vector<Complex> twisted_eigenvector(const Pencil& pencil, long double z) {
  const std::size_t n = pencil.n();
  const auto& J = pencil.J();
  const auto& H = pencil.H();
  auto diag = [&](std::size_t m) {
    return WideComplex(z * static_cast<long double>(J.c(m)) - static_cast<long double>(H.a(m)));
  };
  auto upper = [&](std::size_t m) { return z * static_cast<long double>(J.d(m)) - widen(H.b(m)); };
  auto lower = [&](std::size_t m) {
    return z * static_cast<long double>(J.d(m)) - std::conj(widen(H.b(m)));
  };

  // One step of inverse iteration locates the peak.
  const auto N = static_cast<Eigen::Index>(n + 1);
  const CVector x =
      eigen_pencil(pencil, static_cast<double>(z)).partialPivLu().solve(CVector::Ones(N));
  Eigen::Index peak = 0;
  x.cwiseAbs().maxCoeff(&peak);
  const auto r = static_cast<std::size_t>(peak);

  std::vector<WideComplex> v(n + 1), q(n + 1);
  v[0] = 1.0L;
  for (std::size_t m = 0; m < r; ++m) {
    WideComplex num = diag(m) * v[m];
    if (m > 0) num += lower(m - 1) * v[m - 1];
    v[m + 1] = -num / upper(m);
  }
  q[n] = 1.0L;
  for (std::size_t m = n; m > r; --m) {
    WideComplex num = diag(m) * q[m];
    if (m < n) num += upper(m) * q[m + 1];
    q[m - 1] = -num / lower(m - 1);
  }
  const WideComplex join = v[r] / q[r];
  std::vector<Complex> out;
  for (std::size_t m = 0; m <= n; ++m) {
    const WideComplex e = m <= r ? v[m] : q[m] * join;
    out.emplace_back(static_cast<double>(e.real()), static_cast<double>(e.imag()));
  }
  return out;
}

// Givens read off truth, tails in extended precision; lambda/mu are stored rounded.
GiepInstance exact_instance(const Pencil& truth, std::size_t k, long double lambda,
                            long double mu) {
  const std::size_t n = truth.n();
  const auto p = twisted_eigenvector(truth, lambda);
  const auto s = twisted_eigenvector(truth, mu);
  std::vector<Complex> head_b(truth.H().upper().begin(), truth.H().upper().begin() + k);
  std::vector<double> head_a(truth.H().diag().begin(), truth.H().diag().begin() + k + 1);
  std::vector<Complex> poles;
  for (std::size_t j = k; j < n; ++j) poles.push_back(truth.H().b(j) / truth.J().d(j));
  return GiepInstance{truth.J(),
                      k,
                      std::move(head_a),
                      std::move(head_b),
                      static_cast<double>(lambda),
                      static_cast<double>(mu),
                      std::vector<Complex>(p.begin() + k, p.end()),
                      std::vector<Complex>(s.begin() + k, s.end()),
                      std::move(poles)};
}


bool well_separated(const GiepInstance& inst) {
  double biggest = 0.0;
  for (Complex v : inst.tail_p) biggest = std::max(biggest, std::abs(v));
  for (std::size_t i = 1; i < inst.tail_p.size(); ++i)
    if (std::abs(inst.tail_p[i]) < 1e-8 * biggest) return false;
  for (std::size_t t = 0; t + 1 < inst.tail_p.size(); ++t) {
    const Complex p0 = inst.tail_p[t], p1 = inst.tail_p[t + 1];
    const Complex s0 = inst.tail_s[t], s1 = inst.tail_s[t + 1];
    const Complex delta = delta_j(std::conj(p0), std::conj(p1), p0, p1, std::conj(s0),
                                  std::conj(s1), s0, s1);
    const double scale = std::abs(p0) * std::abs(p1) * std::abs(s0) * std::abs(s1);
    if (!(std::abs(delta) >= 1e-8 * scale)) return false;
  }
  return true;
}

void push_error(VerificationReport& report, char entry, std::size_t index, double error) {
  report.entry_errors.push_back({entry, index, error});
  if (!report.worst || error > report.worst->error) report.worst = report.entry_errors.back();
}

void finish(VerificationReport& report) {
  report.passed = report.max_entry_error() <= entry_tolerance &&
                  report.residual_lambda <= residual_tolerance &&
                  report.residual_mu <= residual_tolerance;
  for (const auto& e : report.entry_errors)
    if (!std::isfinite(e.error)) report.passed = false;
}

}  // namespace

std::vector<Complex> pencil_eigenvalues(const Pencil& pencil) {
  const std::size_t n = pencil.n();
  const auto kappa = kappa_sequence(pencil);
  if (kappa.degree_drop[n + 1])
    throw PencilError(ErrorKind::DegreeDrop,
                      "deg P_" + std::to_string(n + 1) + " < " + std::to_string(n + 1), n + 1);
  const RealPolynomial P = poly_P(pencil, n + 1);
  if (P.degree() != n + 1)
    throw PencilError(ErrorKind::DegreeDrop, "characteristic polynomial lost degree", n + 1);
  const RealPolynomial dP = P.derivative();

  const auto N = static_cast<Eigen::Index>(n + 1);
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(N, N);
  const auto& coeffs = P.coeffs();
  for (Eigen::Index i = 1; i < N; ++i) companion(i, i - 1) = 1.0;
  for (Eigen::Index i = 0; i < N; ++i)
    companion(i, N - 1) = -coeffs[static_cast<std::size_t>(i)] / P.leading();

  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  if (solver.info() != Eigen::Success)
    throw PencilError(ErrorKind::NearSingular, "companion eigensolver did not converge");

  std::vector<Complex> roots;
  for (Eigen::Index i = 0; i < N; ++i) {
    Complex z = solver.eigenvalues()(i);
    const Complex slope = dP(z);
    if (slope != Complex(0.0)) z -= P(z) / slope;
    roots.push_back(z);
  }
  std::sort(roots.begin(), roots.end(), [](Complex l, Complex r) {
    return l.real() != r.real() ? l.real() < r.real() : l.imag() < r.imag();
  });
  return roots;
}

DenseEigenpairs dense_eigenpairs(const Pencil& pencil) {
  const CMatrix J = eigen_J(pencil.J());
  Eigen::PartialPivLU<CMatrix> lu(J);
  if (lu.rcond() < 1e-13) throw PencilError(ErrorKind::NearSingular, "J is numerically singular");
  Eigen::ComplexEigenSolver<CMatrix> solver(lu.solve(eigen_H(pencil.H())));
  if (solver.info() != Eigen::Success)
    throw PencilError(ErrorKind::NearSingular, "dense eigensolver did not converge");

  std::vector<std::size_t> order(static_cast<std::size_t>(J.rows()));
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  const auto& vals = solver.eigenvalues();
  std::sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
    return vals(static_cast<Eigen::Index>(l)).real() < vals(static_cast<Eigen::Index>(r)).real();
  });
  DenseEigenpairs out;
  for (std::size_t i : order) {
    const auto col = static_cast<Eigen::Index>(i);
    out.values.push_back(vals(col));
    const CVector v = solver.eigenvectors().col(col).normalized();
    out.vectors.emplace_back(v.data(), v.data() + v.size());
  }
  return out;
}

DenseMatrix dense_resolvent(const Pencil& pencil, Complex omega) {
  const CMatrix A = eigen_pencil(pencil, omega);
  Eigen::PartialPivLU<CMatrix> lu(A);
  if (!(lu.rcond() >= 1e-13))
    throw PencilError(ErrorKind::NearSingular,
                      "wJ - H is numerically singular (rcond " + std::to_string(lu.rcond()) + ")");
  const CMatrix X = lu.inverse();
  DenseMatrix out(static_cast<std::size_t>(X.rows()), static_cast<std::size_t>(X.cols()));
  for (Eigen::Index i = 0; i < X.rows(); ++i)
    for (Eigen::Index j = 0; j < X.cols(); ++j)
      out(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = X(i, j);
  return out;
}

Complex dense_determinant(const Pencil& pencil, Complex omega) {
  return eigen_pencil(pencil, omega).partialPivLu().determinant();
}

Complex dense_minor(const Pencil& pencil, Complex omega, std::size_t first, std::size_t last) {
  if (last < first || last > pencil.n())
    throw PencilError(ErrorKind::IndexOutOfRange, "dense_minor block out of range", last);
  const auto f = static_cast<Eigen::Index>(first);
  const auto size = static_cast<Eigen::Index>(last - first + 1);
  const CMatrix block = eigen_pencil(pencil, omega).block(f, f, size, size);
  return block.partialPivLu().determinant();
}

bool is_positive_definite(const SymmetricTridiagonal& J) {
  Eigen::LLT<CMatrix> llt(eigen_J(J));
  return llt.info() == Eigen::Success;
}

Complex dense_quadratic_form(const SymmetricTridiagonal& J, std::size_t first, std::size_t last,
                             const std::vector<Complex>& v) {
  const CMatrix block = eigen_J(J.block(first, last));
  CVector x(block.rows());
  for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = v[first + static_cast<std::size_t>(i)];
  return x.dot(block * x);  // dot conjugates its first argument
}

void GeneratorConfig::validate() const {
  if (n < 2) throw PencilError(ErrorKind::InvalidArgument, "generator needs n >= 2");
  if (k < 1 || k + 1 > n)
    throw PencilError(ErrorKind::InvalidArgument, "generator needs 1 <= k <= n-1");
  if (!(min_im_ratio > 0.0) || !std::isfinite(min_im_ratio))
    throw PencilError(ErrorKind::InvalidArgument, "min_im_ratio must be positive");
  if (max_attempts < 1) throw PencilError(ErrorKind::InvalidArgument, "max_attempts must be >= 1");
}

Pencil random_pencil(std::size_t n, std::uint64_t seed, double min_im_ratio, bool ensure_pd_J) {
  Sampler rng(seed, ~std::uint64_t{0});
  return draw_pencil(rng, n, 0, min_im_ratio, ensure_pd_J, false);
}

GiepInstance make_instance(const Pencil& truth, std::size_t k, double lambda, double mu) {
  return exact_instance(truth, k, lambda, mu);
}

GeneratedInstance generate_instance(const GeneratorConfig& config) {
  config.validate();
  const std::size_t n = config.n, k = config.k;
  for (int attempt = 0; attempt < config.max_attempts; ++attempt) {
    Sampler rng(config.seed, static_cast<std::uint64_t>(attempt));
    const Pencil truth =
        draw_pencil(rng, n, k, config.min_im_ratio, config.ensure_pd_J, config.imaginary_tail);
    try {
      const auto roots = pencil_eigenvalues(truth);
      std::size_t li = 0, mi = roots.size() - 1;
      if (config.pick == EigenvaluePick::RandomPair) {
        li = rng.index(roots.size());
        mi = (li + 1 + rng.index(roots.size() - 1)) % roots.size();
      }
      const Complex lam = roots[li], mu = roots[mi];
      if (std::abs(lam.imag()) > 1e-8 * (1.0 + std::abs(lam)) ||
          std::abs(mu.imag()) > 1e-8 * (1.0 + std::abs(mu)))
        continue;
      const double lambda = lam.real(), mu_r = mu.real();
      if (std::abs(lambda - mu_r) < 1e-6 || std::abs(mu_r) < 1e-6 || std::abs(lambda) < 1e-6)
        continue;
      bool clear = true;
      for (double z : {lambda, mu_r})
        for (std::size_t m = k; m <= n; ++m) clear = clear && !hits_spectrum(truth, m, z);
      if (!clear) continue;

      GiepInstance instance = exact_instance(truth, k, polish_eigenvalue(truth, lambda),
                                             polish_eigenvalue(truth, mu_r));
      if (!well_separated(instance)) continue;
      (void)solve(instance);  // preconditions only; accuracy is the caller's business
      return {truth, std::move(instance), attempt + 1};
    } catch (const PencilError&) {
      continue;
    }
  }
  throw PencilError(ErrorKind::GenerationFailed,
                    "no admissible instance after " + std::to_string(config.max_attempts) +
                        " attempts (seed " + std::to_string(config.seed) + ")");
}

double relative_error(Complex x, Complex t) {
  const double scale = std::abs(t);
  const double diff = std::abs(x - t);
  return scale == 0.0 ? diff : diff / scale;
}

VerificationReport verify(const Pencil& truth, const ReconstructionResult& result) {
  const std::size_t n = truth.n();
  if (result.H.order() != n + 1 || result.eigvec_lambda.size() != n + 1 ||
      result.eigvec_mu.size() != n + 1 || result.k + 1 > n)
    throw PencilError(ErrorKind::ShapeMismatch, "result does not match the truth pencil's order");
  VerificationReport report;
  report.pipeline = "eigenpair";
  for (std::size_t j = result.k; j < n; ++j)
    push_error(report, 'b', j, relative_error(result.H.b(j), truth.H().b(j)));
  for (std::size_t j = result.k + 1; j <= n; ++j)
    push_error(report, 'a', j, relative_error(result.H.a(j), truth.H().a(j)));
  const Pencil rebuilt(truth.J(), result.H);
  report.residual_lambda = dense_residual(rebuilt, result.lambda, result.eigvec_lambda);
  report.residual_mu = dense_residual(rebuilt, result.mu, result.eigvec_mu);
  for (Complex d : result.deltas) report.delta_magnitudes.push_back(std::abs(d));
  finish(report);
  return report;
}

VerificationReport verify(const Pencil& truth, const MReconstruction& result) {
  const std::size_t n = truth.n(), k = result.k;
  if (k + 1 > n || result.b.size() != n - k - 1 || result.a.size() != n - k)
    throw PencilError(ErrorKind::ShapeMismatch, "m-route result does not match the truth pencil");
  VerificationReport report;
  report.pipeline = "m-function";
  for (std::size_t t = 0; t < result.b.size(); ++t)
    push_error(report, 'b', k + 1 + t, relative_error(result.b[t], truth.H().b(k + 1 + t)));
  for (std::size_t t = 0; t < result.a.size(); ++t)
    push_error(report, 'a', k + 1 + t, relative_error(result.a[t], truth.H().a(k + 1 + t)));
  finish(report);
  return report;
}

VerificationReport verify(const Pencil& truth, const ReconstructionResult& eig,
                          const MReconstruction& mfun) {
  VerificationReport report = verify(truth, eig);
  const VerificationReport second = verify(truth, mfun);
  for (const auto& e : second.entry_errors) push_error(report, e.entry, e.index, e.error);
  report.pipeline = "both";
  finish(report);
  return report;
}

}  // namespace tripencil::oracle
