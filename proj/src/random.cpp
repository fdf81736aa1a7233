#include "dcq/random.hpp"

#include <cmath>
#include <numbers>

namespace dcq {

double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double gaussian(Rng& rng) {
  // Box–Muller on engine bits; avoids library-dependent distributions.
  double u1 = uniform01(rng);
  while (u1 <= 0.0) u1 = uniform01(rng);
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Complex complex_gaussian(Rng& rng) {
  const double re = gaussian(rng);
  const double im = gaussian(rng);
  return {re / std::sqrt(2.0), im / std::sqrt(2.0)};
}

CMatrix random_complex_matrix(Rng& rng, Index rows, Index cols) {
  CMatrix m(rows, cols);
  for (Index c = 0; c < cols; ++c)
    for (Index r = 0; r < rows; ++r) m(r, c) = complex_gaussian(rng);
  return m;
}

CVector random_complex_vector(Rng& rng, Index dim) {
  return random_complex_matrix(rng, dim, 1).col(0);
}

CMatrix random_unitary(Rng& rng, Index n) {
  const CMatrix z = random_complex_matrix(rng, n, n);
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ() * CMatrix::Identity(n, n);
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < n; ++j) {
    const double a = std::abs(r(j, j));
    if (a > 0.0) q.col(j) *= r(j, j) / a;
  }
  return q;
}

CMatrix random_hermitian(Rng& rng, Index n, double scale) {
  const CMatrix g = random_complex_matrix(rng, n, n);
  return scale * 0.5 * (g + g.adjoint());
}

CMatrix unitary_with_phases(Rng& rng, const std::vector<double>& phases) {
  const Index n = static_cast<Index>(phases.size());
  const CMatrix q = random_unitary(rng, n);
  CVector d(n);
  for (Index j = 0; j < n; ++j) d(j) = std::polar(1.0, phases[static_cast<std::size_t>(j)]);
  return q * d.asDiagonal() * q.adjoint();
}

DCMatrix random_dual_unitary(Rng& rng, Index n, double inf_scale) {
  const CMatrix u = random_unitary(rng, n);
  const CMatrix j = random_hermitian(rng, n, inf_scale);
  return compose_unitary(u, j);
}

DCMatrix random_dual_hermitian(Rng& rng, Index n, double scale) {
  CMatrix sig = random_hermitian(rng, n, scale);
  CMatrix inf = random_hermitian(rng, n, scale);
  return {std::move(sig), std::move(inf)};
}

DCVector random_unit_vector(Rng& rng, Index dim) {
  DCVector v(random_complex_vector(rng, dim), random_complex_vector(rng, dim));
  const DualReal n = vnorm(v);
  return DCVector(v.sig() / n.sig(),
                  (v.inf() * n.sig() - v.sig() * n.inf()) / (n.sig() * n.sig()));
}

std::vector<DCMatrix> random_measurement_family(Rng& rng, Index k, Index d) {
  const DCMatrix u = random_dual_unitary(rng, k * d);
  std::vector<DCMatrix> family;
  family.reserve(static_cast<std::size_t>(k));
  for (Index m = 0; m < k; ++m) family.push_back(u.block(m * d, 0, d, d));
  return family;
}

}  // namespace dcq
