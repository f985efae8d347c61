#include "support.hpp"

using tp::oracle::dense_determinant;
using tp::oracle::dense_minor;

TEST(EvalP, InitialConditionsAndOneStep) {
  const auto p = make_pencil({1}, {}, {0}, {});
  EXPECT_EQ(tp::eval_P(p, 0, 5.0), Complex(1.0));
  EXPECT_EQ(tp::eval_P(p, 1, 2.0), Complex(2.0));
  EXPECT_EQ(tp::eval_Q(p, 0, 5.0), Complex(0.0));
  EXPECT_EQ(tp::eval_Q(p, 1, 5.0), Complex(1.0));
  EXPECT_THROW((void)tp::eval_P(p, 2, 1.0), tp::PencilError);
}

TEST(EvalP, MatchesDenseDeterminant) {
  std::mt19937_64 rng(11);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto p = tp::oracle::random_pencil(2, seed);
    const Complex z = random_point(rng);
    EXPECT_LT(rel(tp::eval_P(p, 2, z), dense_minor(p, z, 0, 1)), 1e-12);
    EXPECT_LT(rel(tp::eval_P(p, 3, z), dense_determinant(p, z)), 1e-12);
  }
}

TEST(EvalQ, IsTheMinorWithoutTheFirstRow) {
  std::mt19937_64 rng(12);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto p = tp::oracle::random_pencil(3, seed);
    const Complex z = random_point(rng);
    EXPECT_LT(rel(tp::eval_Q(p, 3, z), dense_minor(p, z, 1, 2)), 1e-12);
    EXPECT_LT(rel(tp::eval_Q(p, 4, z), dense_minor(p, z, 1, 3)), 1e-12);
  }
}

TEST(PolyP, HandExpansion) {
  const auto p = hand_pencil();
  EXPECT_EQ(tp::poly_P(p, 0).coeffs(), std::vector<double>{1.0});
  EXPECT_EQ(tp::poly_Q(p, 0).coeffs(), std::vector<double>{0.0});
  EXPECT_EQ(tp::poly_P(p, 2).coeffs(), std::vector<double>{-1.0});
}

TEST(PolyP, HornerAgreesWithRecurrence) {
  std::mt19937_64 rng(13);
  const auto p = tp::oracle::random_pencil(5, 3);
  for (int t = 0; t < 10; ++t) {
    const Complex z = random_point(rng);
    for (std::size_t m = 0; m <= 6; ++m) {
      EXPECT_LT(rel1(tp::poly_P(p, m)(z), tp::eval_P(p, m, z)), 1e-10);
      EXPECT_LT(rel1(tp::poly_Q(p, m)(z), tp::eval_Q(p, m, z)), 1e-10);
    }
  }
}

TEST(PolyP, RealAtRealPoints) {
  const auto p = tp::oracle::random_pencil(4, 9);
  for (double z : {-1.3, 0.2, 2.7}) {
    const Complex v = tp::eval_P(p, 5, z);
    EXPECT_LE(std::abs(v.imag()), 1e-12 * (1.0 + std::abs(v)));
  }
}

TEST(Kappa, DirectRecursionAndDrop) {
  const auto p = make_pencil({1, 1, 1}, {0.5, 0.5}, {0, 0, 0}, {Complex(0, 1), Complex(0, 1)});
  const auto k = tp::kappa_sequence(p);
  EXPECT_DOUBLE_EQ(k.kappa[0], 1.0);
  EXPECT_DOUBLE_EQ(k.kappa[1], 1.0);
  EXPECT_DOUBLE_EQ(k.kappa[2], 0.75);
  EXPECT_FALSE(k.degree_drop[2]);

  // c_1 kappa_1 = d_0^2 kappa_0.
  const auto drop = make_pencil({1, 0.25}, {0.5}, {0, 0}, {Complex(0, 1)});
  const auto kd = tp::kappa_sequence(drop);
  EXPECT_TRUE(kd.degree_drop[2]);
  EXPECT_LT(tp::poly_P(drop, 2).degree(), 2u);
}

TEST(Kappa, IsLeadingCoefficient) {
  const auto p = tp::oracle::random_pencil(6, 4);
  EXPECT_NEAR(tp::kappa_sequence(p).kappa[7] / tp::poly_P(p, 7).leading(), 1.0, 1e-12);
}

TEST(Components, NormalizationAndLeftRightConjugacy) {
  const auto p = tp::oracle::random_pencil(4, 21);
  for (double z : {-0.7, 0.4, 1.9}) {
    const auto r = tp::right_components(p, z);
    const auto l = tp::left_components(p, z);
    EXPECT_EQ(r[0], Complex(1.0));
    EXPECT_EQ(l[0], Complex(1.0));
    for (std::size_t i = 0; i < r.size(); ++i) EXPECT_LT(std::abs(l[i] - std::conj(r[i])), 1e-12 * std::abs(r[i]) + 1e-300);
  }
}

TEST(Components, OrderOneEigenvectorResidual) {
  const auto p = make_pencil({1, 1}, {0.5}, {0, 0}, {Complex(0, 1)});
  for (Complex lam : tp::oracle::pencil_eigenvalues(p)) {
    const auto v = tp::right_components(p, lam.real());
    const auto A = tp::assemble(p, lam.real());
    EXPECT_LE(tp::norm2(A * v), 1e-9 * tp::max_abs(A) * tp::norm2(v));
  }
}

TEST(Components, CollinearWithDenseEigenvector) {
  const auto p = tp::oracle::random_pencil(4, 5);
  const auto dense = tp::oracle::dense_eigenpairs(p);
  for (std::size_t e = 0; e < dense.values.size(); ++e) {
    const auto r = tp::right_components(p, dense.values[e].real());
    Complex dot = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) dot += std::conj(dense.vectors[e][i]) * r[i];
    EXPECT_GE(std::abs(dot) / tp::norm2(r), 1.0 - 1e-9) << "eigenvalue " << e;
  }
}

TEST(Components, LeftVectorAnnihilatesFromTheLeft) {
  const auto p = tp::oracle::random_pencil(3, 6);
  for (Complex lam : tp::oracle::pencil_eigenvalues(p)) {
    const auto l = tp::left_components(p, lam.real());
    const auto A = tp::assemble(p, lam.real());
    for (std::size_t j = 0; j < A.cols(); ++j) {
      Complex acc = 0.0;
      for (std::size_t i = 0; i < A.rows(); ++i) acc += l[i] * A(i, j);
      EXPECT_LT(std::abs(acc), 1e-9 * tp::max_abs(A) * tp::norm2(l));
    }
  }
}

TEST(Components, PoleCollisionNamesIndex) {
  const auto p = make_pencil({1, 1, 1}, {1, 2}, {0, 0, 0}, {Complex(0.5, 1), Complex(3, 0)});
  try {
    (void)tp::recurrence_components(p, 1.5, tp::Side::Right, 2);  // b_1 - z d_1 = 0
    FAIL();
  } catch (const tp::PencilError& e) {
    EXPECT_EQ(e.kind(), tp::ErrorKind::PoleCollision);
    EXPECT_EQ(e.index(), 1u);
  }
}

TEST(Components, DegenerateLastRow) {
  const auto p = make_pencil({1, 2}, {1}, {0, 4}, {Complex(0, 1)});
  try {
    (void)tp::right_components(p, 2.0);  // z c_1 - a_1 = 0
    FAIL();
  } catch (const tp::PencilError& e) {
    EXPECT_EQ(e.kind(), tp::ErrorKind::DegenerateLastRow);
  }
}

TEST(Components, JetMatchesFiniteDifferences) {
  const auto p = tp::oracle::random_pencil(5, 31);
  const double z = 0.37, h = 1e-6;
  const auto jet = tp::component_jet(p, z, tp::Side::Right, 5);
  const auto plus = tp::recurrence_components(p, z + h, tp::Side::Right, 5);
  const auto minus = tp::recurrence_components(p, z - h, tp::Side::Right, 5);
  for (std::size_t i = 0; i <= 5; ++i) {
    EXPECT_LT(std::abs(jet.value[i] - tp::recurrence_components(p, z, tp::Side::Right, 5)[i]), 1e-14);
    const Complex fd = (plus[i] - minus[i]) / (2 * h);
    EXPECT_LT(rel1(jet.derivative[i], fd), 1e-6) << i;
  }
}

TEST(Convergent, ScalarAndHandCases) {
  EXPECT_EQ(tp::convergent_S(make_pencil({1}, {}, {0}, {}), 1, 2.0), Complex(0.5));
  EXPECT_LT(std::abs(tp::convergent_S(hand_pencil(), 2, 3.0) - Complex(-3.0)), 1e-14);
  EXPECT_LT(std::abs(tp::continued_fraction(hand_pencil(), 2, 3.0) - Complex(-3.0)), 1e-14);
}

TEST(Convergent, ContinuedFractionAgrees) {
  std::mt19937_64 rng(14);
  const auto p = tp::oracle::random_pencil(4, 8);
  for (int t = 0; t < 10; ++t) {
    const Complex z = random_point(rng);
    for (std::size_t m = 1; m <= 5; ++m)
      EXPECT_LT(rel(tp::convergent_S(p, m, z), tp::continued_fraction(p, m, z)), 1e-12);
  }
}

TEST(Convergent, RejectsSpectrum) {
  const auto p = make_pencil({1}, {}, {2}, {});
  try {
    (void)tp::convergent_S(p, 1, 2.0);
    FAIL();
  } catch (const tp::PencilError& e) {
    EXPECT_EQ(e.kind(), tp::ErrorKind::SpectrumCollision);
  }
}

TEST(LiouvilleOstrogradsky, EmptyProductAtZero) {
  EXPECT_EQ(tp::liouville_ostrogradsky_residual(hand_pencil(), 0, 1.7), 0.0);
}

TEST(LiouvilleOstrogradsky, HandPencilStepOne) {
  EXPECT_LT(tp::liouville_ostrogradsky_residual(hand_pencil(), 1, Complex(0.4, 0.9)), 1e-14);
}

// Independent route to the right-hand side: the Wronskian of the two
// solutions, assembled from the dense minors P_m = det[0,m-1], Q_m = det[1,m-1].
TEST(LiouvilleOstrogradsky, ProductFromDenseMinors) {
  std::mt19937_64 rng(15);
  const auto p = tp::oracle::random_pencil(5, 17);
  for (int t = 0; t < 20; ++t) {
    const Complex z = random_point(rng);
    for (std::size_t m = 1; m <= 5; ++m) {
      const Complex Pm = dense_minor(p, z, 0, m - 1), Pm1 = dense_minor(p, z, 0, m);
      const Complex Qm = m == 1 ? Complex(1.0) : dense_minor(p, z, 1, m - 1);
      const Complex Qm1 = dense_minor(p, z, 1, m);
      Complex prod = 1.0;
      for (std::size_t j = 0; j < m; ++j) {
        const Complex zd = z * p.J().d(j);
        prod *= (zd - p.H().b(j)) * (zd - std::conj(p.H().b(j)));
      }
      EXPECT_LT(std::abs(Pm * Qm1 - Pm1 * Qm - prod) / (1.0 + std::abs(prod)), 1e-10);
      EXPECT_LT(tp::liouville_ostrogradsky_residual(p, m, z), 1e-9);
    }
  }
}
