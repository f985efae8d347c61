#ifndef TRIPENCIL_TESTS_SUPPORT_HPP
#define TRIPENCIL_TESTS_SUPPORT_HPP

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "tripencil/dense.hpp"
#include "tripencil/giep.hpp"
#include "tripencil/oracle.hpp"
#include "tripencil/pencil.hpp"
#include "tripencil/resolvent.hpp"

namespace tp = tripencil;
using tp::Complex;

inline double rel(Complex x, Complex t) { return std::abs(x - t) / std::max(std::abs(t), 1e-300); }

// Relative error normalized by max(1, |t|); for quantities that may pass near zero.
inline double rel1(Complex x, Complex t) { return std::abs(x - t) / std::max(1.0, std::abs(t)); }

inline tp::Pencil make_pencil(std::vector<double> c, std::vector<double> d, std::vector<double> a,
                              std::vector<Complex> b) {
  return tp::Pencil(tp::SymmetricTridiagonal(std::move(c), std::move(d)),
                    tp::HermitianTridiagonal(std::move(a), std::move(b)));
}

// c = [1, 1], d = [1], a = [0, 0], b = [i]: P_2 = -1, S_2 = -z.
inline tp::Pencil hand_pencil() { return make_pencil({1, 1}, {1}, {0, 0}, {Complex(0, 1)}); }

inline Complex random_point(std::mt19937_64& rng, double im_min = 0.5) {
  std::uniform_real_distribution<double> u(-3.0, 3.0), s(im_min, 2.0);
  return {u(rng), (u(rng) < 0 ? -1.0 : 1.0) * s(rng)};
}

// Real point at least `gap` away from every eigenvalue.
inline double real_point_off_spectrum(const tp::Pencil& pencil, std::mt19937_64& rng,
                                      double gap = 1.0) {
  const auto eig = tp::oracle::pencil_eigenvalues(pencil);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double lo = eig.front().real() - gap, hi = eig.back().real() + gap;
  return u(rng) < 0 ? lo - std::abs(u(rng)) : hi + std::abs(u(rng));
}

inline tp::oracle::GeneratedInstance generated(std::size_t n, std::size_t k, std::uint64_t seed) {
  tp::oracle::GeneratorConfig cfg;
  cfg.n = n;
  cfg.k = k;
  cfg.seed = seed;
  return tp::oracle::generate_instance(cfg);
}

inline double max_abs_identity_error(const tp::DenseMatrix& m) {
  return tp::max_abs_diff(m, tp::DenseMatrix::identity(m.rows()));
}

#endif
