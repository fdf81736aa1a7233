#include <gtest/gtest.h>

#include <numbers>

#include "dcq/linalg.hpp"
#include "dcq/random.hpp"
#include "support.hpp"

using namespace dcq;
using dcq::test::max_abs;

namespace {

const Complex I{0.0, 1.0};

CMatrix pauli_x() {
  CMatrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

}  // namespace

TEST(Vector, InnerAndNorm) {
  EXPECT_EQ(inner(DCVector::basis(3, 1), DCVector::basis(3, 1)), DualComplex(1.0));

  // ⟨ψ|ψ⟩ = 1 and ⟨ψ|φ⟩ = i: the norm stays 1 + 0ε.
  CVector psi(2), phi(2);
  psi << 1.0, 0.0;
  phi << I, 0.5;
  const DualReal n = vnorm(DCVector(psi, phi));
  EXPECT_DOUBLE_EQ(n.sig(), 1.0);
  EXPECT_DOUBLE_EQ(n.inf(), 0.0);

  CVector a(2), b(2);
  a << 3.0, 4.0;
  b << 1.0, 0.0;
  const DualReal m = vnorm(DCVector(a, b));
  EXPECT_DOUBLE_EQ(m.sig(), 5.0);
  EXPECT_DOUBLE_EQ(m.inf(), 0.6);
  // Cross-check by squaring: (5 + 0.6ε)² = 25 + 6ε = ⟨v|v⟩.
  EXPECT_EQ(norm_squared(DCVector(a, b)), DualReal(25.0, 6.0));
}

TEST(Vector, InnerIsConjugateLinearInFirstSlot) {
  Rng rng(21);
  const DCVector u = random_unit_vector(rng, 3);
  const DCVector v = random_unit_vector(rng, 3);
  const DualComplex c(Complex{0.3, -1.2}, Complex{2.0, 0.1});
  const DualComplex lhs = inner(c * u, v);
  const DualComplex rhs = conj(c) * inner(u, v);
  EXPECT_LT(std::abs(lhs.sig() - rhs.sig()) + std::abs(lhs.inf() - rhs.inf()), 1e-13);
}

TEST(Vector, InfinitesimalNormIsFlagged) {
  CVector z = CVector::Zero(2), t(2);
  t << 1.0, 2.0;
  EXPECT_THROW((void)vnorm(DCVector(z, t)), InfinitesimalModulus);
  EXPECT_THROW((void)inner(DCVector(2), DCVector(3)), Error);
}

TEST(Matrix, AdjointIsInvolution) {
  Rng rng(22);
  const DCMatrix m(random_complex_matrix(rng, 3, 4), random_complex_matrix(rng, 3, 4));
  EXPECT_EQ(adjoint(adjoint(m)), m);
}

TEST(Matrix, ProductDropsEpsilonSquared) {
  Rng rng(23);
  const CMatrix a = random_complex_matrix(rng, 3, 3), b = random_complex_matrix(rng, 3, 3);
  const CMatrix c = random_complex_matrix(rng, 3, 3), d = random_complex_matrix(rng, 3, 3);
  const DCMatrix p = DCMatrix(a, b) * DCMatrix(c, d);
  EXPECT_LT(max_abs(p.sig() - a * c), 1e-13);
  EXPECT_LT(max_abs(p.inf() - (a * d + b * c)), 1e-13);
}

TEST(Classify, Examples) {
  const OpClass id = classify_op(DCMatrix::identity(3));
  EXPECT_TRUE(id.hermitian);
  EXPECT_TRUE(id.unitary);
  EXPECT_FALSE(id.anti_hermitian);

  DCMatrix gate(pauli_x(), Complex{0.0, -0.7} * CMatrix::Identity(2, 2));
  EXPECT_TRUE(classify_op(gate).unitary);
  EXPECT_FALSE(classify_op(gate).hermitian);

  EXPECT_FALSE(classify_op(DualComplex(2.0) * DCMatrix::identity(2)).unitary);
  EXPECT_THROW((void)classify_op(DCMatrix(2, 3)), Error);
  EXPECT_TRUE(classify_op(DCMatrix(CMatrix::Zero(2, 2), I * pauli_x())).anti_hermitian);
}

TEST(Decompose, Examples) {
  const double m = 0.7;
  const UnitaryParts p = decompose_unitary(DCMatrix(pauli_x(), -I * m * CMatrix::Identity(2, 2)));
  CMatrix expected_h(2, 2);
  expected_h << 0.0, -m, -m, 0.0;
  EXPECT_LT(max_abs(p.unitary - pauli_x()), 1e-15);
  EXPECT_LT(max_abs(p.hermitian - expected_h), 1e-15);

  const UnitaryParts id = decompose_unitary(DCMatrix::identity(3));
  EXPECT_LT(max_abs(id.hermitian), 1e-15);

  // e^{iθ}I(1 + iμε) → U = e^{iθ}I, H = μI.
  const Complex z = std::polar(1.0, 0.4);
  const DCMatrix phase(z * CMatrix::Identity(2, 2), I * 1.5 * z * CMatrix::Identity(2, 2));
  const UnitaryParts q = decompose_unitary(phase);
  EXPECT_LT(max_abs(q.hermitian - 1.5 * CMatrix::Identity(2, 2)), 1e-15);
  EXPECT_LT(max_abs_diff(compose_unitary(q.unitary, q.hermitian), phase), 1e-15);

  EXPECT_THROW((void)decompose_unitary(DualComplex(2.0) * DCMatrix::identity(2)), Error);
}

TEST(Decompose, RandomRoundTrip) {
  Rng rng(24);
  for (int t = 0; t < 50; ++t) {
    const Index n = 2 + t % 5;
    const DCMatrix u = random_dual_unitary(rng, n);
    const UnitaryParts p = decompose_unitary(u);
    EXPECT_LT(max_abs(p.hermitian - p.hermitian.adjoint()), 1e-9);
    EXPECT_LT(max_abs_diff(compose_unitary(p.unitary, p.hermitian), u), 1e-10);
  }
}

TEST(Unitary, PreservesDualNorm) {
  Rng rng(25);
  for (int t = 0; t < 100; ++t) {
    const Index n = 2 + t % 6;
    const DCMatrix u = random_dual_unitary(rng, n);
    const DCVector v(random_complex_vector(rng, n), random_complex_vector(rng, n));
    const DualReal a = vnorm(u * v), b = vnorm(v);
    EXPECT_NEAR(a.sig(), b.sig(), 1e-9);
    EXPECT_NEAR(a.inf(), b.inf(), 1e-9);
  }
}

TEST(MatExp, Examples) {
  EXPECT_LT(max_abs_diff(mat_exp(DCMatrix(3, 3)), DCMatrix::identity(3)), 1e-15);

  // diag(a + bε, c + dε) → diag(e^a(1 + bε), e^c(1 + dε))
  DCMatrix d(2, 2);
  d.set(0, 0, DualComplex(0.3, 2.0));
  d.set(1, 1, DualComplex(Complex{-1.0, 0.5}, Complex{0.0, 1.0}));
  const DCMatrix e = mat_exp(d);
  const Complex ea = std::exp(0.3), ec = std::exp(Complex{-1.0, 0.5});
  EXPECT_LT(std::abs(e(0, 0).sig() - ea) + std::abs(e(0, 0).inf() - 2.0 * ea), 1e-14);
  EXPECT_LT(std::abs(e(1, 1).sig() - ec) + std::abs(e(1, 1).inf() - I * ec), 1e-14);
  EXPECT_LT(std::abs(e(0, 1).sig()) + std::abs(e(0, 1).inf()), 1e-15);

  const DCMatrix flip = mat_exp(DCMatrix::from_sig(I * std::numbers::pi * pauli_x()));
  EXPECT_LT(max_abs_diff(flip, DualComplex(-1.0) * DCMatrix::identity(2)), 1e-14);
}

TEST(MatExp, MatchesDoubleSeries) {
  Rng rng(26);
  for (int t = 0; t < 60; ++t) {
    const Index n = 2 + t % 3;
    CMatrix a = random_complex_matrix(rng, n, n);
    a *= dcq::test::uniform(rng, 0.1, 2.0) / a.operatorNorm();
    const CMatrix b = random_complex_matrix(rng, n, n);
    const DCMatrix m(a, b);
    EXPECT_LT(max_abs_diff(mat_exp(m), dcq::test::series_mat_exp(m)), 1e-10);
  }
}

TEST(MatExp, InfinitesimalPartScalesWithoutDamage) {
  // The Fréchet derivative is linear in B; huge or tiny B must not leak into e^A.
  Rng rng(27);
  const CMatrix a = random_complex_matrix(rng, 3, 3);
  const CMatrix b = random_complex_matrix(rng, 3, 3);
  const DCMatrix base = mat_exp(DCMatrix(a, b));
  for (double s : {1e-8, 1e6}) {
    const DCMatrix scaled = mat_exp(DCMatrix(a, s * b));
    EXPECT_LT(max_abs(scaled.sig() - base.sig()), 1e-12 * max_abs(base.sig()));
    EXPECT_LT(max_abs(scaled.inf() / s - base.inf()), 1e-10 * max_abs(base.inf()));
  }
}

TEST(MatExp, HermitianGeneratorGivesUnitary) {
  Rng rng(28);
  for (int t = 0; t < 30; ++t) {
    const DCMatrix h = random_dual_hermitian(rng, 2 + t % 4);
    EXPECT_LT(unitarity_residual(mat_exp(DualComplex(I) * h)), 1e-12);
  }
}

TEST(Expm, MatchesTaylor) {
  Rng rng(29);
  const CMatrix a = 0.5 * random_complex_matrix(rng, 4, 4);
  EXPECT_LT(max_abs(expm(a) - dcq::test::series_expm(a)), 1e-13);
}
