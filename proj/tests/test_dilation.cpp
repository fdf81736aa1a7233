#include <gtest/gtest.h>

#include <numbers>

#include "dcq/linalg.hpp"
#include "dcq/random.hpp"
#include "support.hpp"

using namespace dcq;
using dcq::test::max_abs;

namespace {

const Complex I{0.0, 1.0};
const double pi = std::numbers::pi;

DCMatrix ketbra(Index r, Index c, const DualComplex& w) {
  DCMatrix m(2, 2);
  m.set(r, c, w);
  return m;
}

std::vector<DCMatrix> qubit_family() {
  DCMatrix m0 = ketbra(0, 0, DualComplex(1.0, I * pi));
  DCMatrix m1 = ketbra(0, 1, DualComplex(1.0, I * pi));
  m1.set(1, 0, DualComplex(0.0, I * pi / std::sqrt(3.0)));
  m1.set(1, 1, DualComplex(0.0, -I * pi * 2.0 / std::sqrt(6.0)));
  return {m0, m1};
}

}  // namespace

TEST(Semipositive, ProductsWithAdjointPass) {
  Rng rng(41);
  for (int t = 0; t < 20; ++t) {
    const Index n = 2 + t % 4;
    const DCMatrix m(random_complex_matrix(rng, n, n), random_complex_matrix(rng, n, n));
    const SemipositivityReport r = check_appreciably_semipositive(adjoint(m) * m, 32, 7);
    EXPECT_TRUE(r.pass) << r.worst_violation;
  }
}

TEST(Semipositive, PurelyInfinitesimalExpectationFails) {
  CMatrix x(2, 2);
  x << 0.0, 1.0, 1.0, 0.0;
  const SemipositivityReport r =
      check_appreciably_semipositive(DCMatrix(CMatrix::Zero(2, 2), x), 0, 1);
  EXPECT_FALSE(r.pass);
  // (1,1)/√2 gives 0 + 1ε.
  EXPECT_NEAR(r.worst_violation, 1.0, 1e-15);
  EXPECT_NEAR(r.worst_value.inf(), 1.0, 1e-15);
}

TEST(Semipositive, ZeroPasses) {
  EXPECT_TRUE(check_appreciably_semipositive(DCMatrix(3, 3), 16, 3).pass);
}

TEST(Semipositive, NegativeSignificantFails) {
  EXPECT_FALSE(
      check_appreciably_semipositive(DualComplex(-1.0) * DCMatrix::identity(2), 0, 1).pass);
}

TEST(Stinespring, SwapForConventionalFamily) {
  const std::vector<DCMatrix> fam{ketbra(0, 0, 1.0), ketbra(0, 1, 1.0)};
  const DCMatrix u = stinespring(fam);
  CMatrix swap = CMatrix::Zero(4, 4);
  swap(0, 0) = swap(1, 2) = swap(2, 1) = swap(3, 3) = 1.0;
  EXPECT_LT(max_abs(u.sig() - swap), 1e-15);
  EXPECT_LT(max_abs(u.inf()), 1e-15);
}

TEST(Stinespring, SingleUnitaryIsItself) {
  Rng rng(42);
  const DCMatrix v = random_dual_unitary(rng, 3);
  const std::vector<DCMatrix> fam{v};
  EXPECT_LT(max_abs_diff(stinespring(fam), v), 1e-15);
}

TEST(Stinespring, QubitFamilyBlocks) {
  const auto fam = qubit_family();
  for (const auto& gauge : {std::optional<CMatrix>{}, std::optional<CMatrix>{
                                                          pi * CMatrix::Identity(2, 2)}}) {
    const DCMatrix u = stinespring(fam, gauge);
    EXPECT_LT(unitarity_residual(u), 1e-12);
    for (Index m = 0; m < 2; ++m) EXPECT_LT(max_abs_diff(dilation_block(u, m, 2), fam[m]), 1e-15);
  }
}

TEST(Stinespring, GaugedQubitDilationMatchesClosedForm) {
  // With K = πI on the completed columns, the generator is
  // H = π[[1,0,0,1/√3],[0,1,0,0],[0,0,1,−2/√6],[1/√3,0,−2/√6,1]].
  const DCMatrix u = stinespring(qubit_family(), CMatrix(pi * CMatrix::Identity(2, 2)));
  const UnitaryParts p = decompose_unitary(u);
  CMatrix h = CMatrix::Identity(4, 4);
  h(0, 3) = h(3, 0) = 1.0 / std::sqrt(3.0);
  h(2, 3) = h(3, 2) = -2.0 / std::sqrt(6.0);
  EXPECT_LT(max_abs(p.hermitian - pi * h), 1e-14);
}

TEST(Stinespring, RandomFamiliesGiveUnitaryDilations) {
  Rng rng(43);
  for (int t = 0; t < 40; ++t) {
    const Index k = 1 + t % 3, d = 1 + t % 4;
    const auto fam = random_measurement_family(rng, k, d);
    const DCMatrix u = stinespring(fam);
    EXPECT_LT(unitarity_residual(u), 1e-10);
    for (Index m = 0; m < k; ++m)
      EXPECT_LT(max_abs_diff(dilation_block(u, m, d), fam[m]), 1e-15);
  }
}

TEST(Stinespring, BrokenCompletenessIsRejected) {
  Rng rng(44);
  for (int t = 0; t < 20; ++t) {
    auto fam = random_measurement_family(rng, 2, 2);
    // Perturb either part; completeness breaks at first order or at zeroth.
    CMatrix bump = CMatrix::Zero(2, 2);
    bump(0, 0) = 1e-3;
    fam[0] = t % 2 ? fam[0] + DCMatrix::from_sig(bump) : fam[0] + DCMatrix(CMatrix::Zero(2, 2), bump);
    EXPECT_GT(max_abs_diff(completeness_sum(fam), DCMatrix::identity(2)), 1e-9);
    try {
      (void)stinespring(fam);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::IncompleteFamily);
    }
  }
}

TEST(Stinespring, GaugeMustBeHermitian) {
  CMatrix k = CMatrix::Zero(2, 2);
  k(0, 1) = 1.0;
  EXPECT_THROW((void)stinespring(qubit_family(), k), Error);
}
